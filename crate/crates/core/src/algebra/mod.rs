//! Reduced power algebras `A_F = Q^Λ / I_F` and their cosets.
//!
//! `I_F = { x : Z(x) ∈ F }`, so two representatives are congruent exactly
//! when the set where they agree belongs to the generating filter.

mod diagram;
mod hom;
mod ideal;
mod order;

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use thiserror::Error;

use crate::element::{Element, ElementError};
use crate::epset::EpSet;
use crate::filter::{Filter, FilterError};

pub use diagram::{Grid, Square, SquareOutcome};
pub use hom::{check_commutes, Hom, HomKind};
pub use ideal::{
    correspondence_idempotent, filter_of_ideal, DegenerateReport, FgIdeal, IdealImage,
};
pub use order::{Certificate, CertificateEntry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("cosets belong to different algebras: {left} vs {right}")]
    AlgebraMismatch { left: String, right: String },
    #[error("element lives on {element}, algebra on {algebra}")]
    CarrierMismatch { element: EpSet, algebra: EpSet },
    #[error("{source_filter} is not a subfilter of {target_filter}")]
    NotSubfilter {
        source_filter: String,
        target_filter: String,
    },
    #[error("cannot compose: {first_target} is not {second_source}")]
    CompositionMismatch {
        first_target: String,
        second_source: String,
    },
    #[error("kernel test is only defined for a single coarsening")]
    UnsupportedHomKind,
    #[error("paths do not share source and target")]
    PathMismatch,
    #[error("element is not nonnegative in {0}")]
    NotNonnegative(String),
    #[error("ideal has no generators")]
    EmptyIdeal,
    #[error("ideal contains a unit: its common zero set {0} is finite and it contains the Fréchet ideal")]
    ImproperIdeal(EpSet),
    #[error("grid is empty or not rectangular")]
    MalformedGrid,
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error(transparent)]
    Filter(#[from] FilterError),
}

/// `A_F` for an admissible filter `F`. Two handles are equal when they
/// share the carrier and their filters are equivalent, since `I_F` depends
/// only on the members of `F`.
#[derive(Clone, Debug)]
pub struct Algebra {
    filter: Arc<Filter>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.filter, &other.filter) || self.filter.equivalent(&other.filter)
    }
}

impl Eq for Algebra {}

impl Algebra {
    pub fn new(filter: Filter) -> Self {
        Algebra {
            filter: Arc::new(filter),
        }
    }

    pub fn frechet(carrier: &EpSet) -> Result<Self, AlgebraError> {
        Ok(Self::new(Filter::frechet(carrier)?))
    }

    pub fn filter(&self) -> &Filter {
        &self.filter
    }

    pub fn carrier(&self) -> &EpSet {
        self.filter.carrier()
    }

    /// `x + I_F`.
    pub fn coset(&self, rep: Element) -> Result<Coset, AlgebraError> {
        if rep.carrier() != self.carrier() {
            return Err(AlgebraError::CarrierMismatch {
                element: rep.carrier().clone(),
                algebra: self.carrier().clone(),
            });
        }
        Ok(Coset {
            algebra: self.clone(),
            rep,
        })
    }

    /// The scalar embedding `ξ ↦ ξ + I_F`.
    pub fn embed(&self, xi: BigRational) -> Coset {
        let rep = Element::constant(xi, self.carrier()).expect("admissible carriers are infinite");
        Coset {
            algebra: self.clone(),
            rep,
        }
    }

    pub fn zero(&self) -> Coset {
        self.embed(BigRational::from_integer(0.into()))
    }

    pub fn one(&self) -> Coset {
        self.embed(BigRational::from_integer(1.into()))
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A[{}]", self.filter)
    }
}

/// `x ∈ I_F ⟺ Z(x) ∈ F`.
pub fn ideal_member(x: &Element, filter: &Filter) -> Result<bool, AlgebraError> {
    if x.carrier() != filter.carrier() {
        return Err(AlgebraError::CarrierMismatch {
            element: x.carrier().clone(),
            algebra: filter.carrier().clone(),
        });
    }
    Ok(filter.contains(&x.zero_set())?)
}

/// An element `x + I_F` of a reduced power algebra.
#[derive(Clone, Debug)]
pub struct Coset {
    algebra: Algebra,
    rep: Element,
}

impl Coset {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// The representative this coset was built from.
    pub fn rep(&self) -> &Element {
        &self.rep
    }

    fn same_algebra(&self, other: &Coset) -> Result<(), AlgebraError> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch {
                left: self.algebra.to_string(),
                right: other.algebra.to_string(),
            })
        }
    }

    fn lift(
        &self,
        other: &Coset,
        op: impl Fn(&Element, &Element) -> Result<Element, ElementError>,
    ) -> Result<Coset, AlgebraError> {
        self.same_algebra(other)?;
        Ok(Coset {
            algebra: self.algebra.clone(),
            rep: op(&self.rep, &other.rep)?,
        })
    }

    pub fn add(&self, other: &Coset) -> Result<Coset, AlgebraError> {
        self.lift(other, Element::add)
    }

    pub fn sub(&self, other: &Coset) -> Result<Coset, AlgebraError> {
        self.lift(other, Element::sub)
    }

    pub fn mul(&self, other: &Coset) -> Result<Coset, AlgebraError> {
        self.lift(other, Element::mul)
    }

    pub fn neg(&self) -> Coset {
        Coset {
            algebra: self.algebra.clone(),
            rep: self.rep.neg(),
        }
    }

    pub fn scalar_mul(&self, c: &BigRational) -> Coset {
        Coset {
            algebra: self.algebra.clone(),
            rep: self.rep.scalar_mul(c),
        }
    }

    /// `x ≡ y (mod I_F)`: the zero set of `x − y` is in `F`.
    pub fn coset_eq(&self, other: &Coset) -> Result<bool, AlgebraError> {
        self.same_algebra(other)?;
        let diff = self.rep.sub(&other.rep)?;
        ideal_member(&diff, self.algebra.filter())
    }

    pub fn is_zero(&self) -> bool {
        ideal_member(&self.rep, self.algebra.filter()).expect("representative shares the carrier")
    }

    /// `x ≤ y ⟺ { λ : x(λ) ≤ y(λ) } ∈ F`.
    pub fn leq(&self, other: &Coset) -> Result<bool, AlgebraError> {
        self.same_algebra(other)?;
        let set = self.rep.le_set(&other.rep)?;
        Ok(self.algebra.filter().contains(&set)?)
    }
}

impl fmt::Display for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + I", self.rep)
    }
}
