//! Zero divisors and the failure of the Archimedean property.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::element::Element;
use crate::epset::EpSet;
use crate::poly::{fmt_rational, Poly};

use super::{Algebra, AlgebraError, Coset};

/// One tail piece of a non-Archimedean witness `x = u + l^k`: on `region`
/// (an infinite part of the filter core) `x` is a polynomial of higher
/// degree than `u` with positive leading coefficient, so `x − n·u → +∞`
/// there for every `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateEntry {
    pub region: EpSet,
    pub x_degree: usize,
    pub u_degree: Option<usize>,
    pub x_leading: BigRational,
}

/// Proof that `{ λ : x(λ) ≤ n·u(λ) }` meets the core of the filter in a
/// finite set for every `n ∈ ℕ`, hence is never a member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub core: EpSet,
    pub witness_degree: usize,
    pub entries: Vec<CertificateEntry>,
}

fn tail_entries(x: &Element, u: &Element, core: &EpSet) -> Vec<CertificateEntry> {
    let mut entries = Vec::new();
    for px in x.pieces() {
        for pu in u.pieces() {
            let region = px.region.intersect(&pu.region).intersect(core);
            if region.is_finite() {
                continue;
            }
            let Some(x_degree) = px.poly.degree() else {
                continue;
            };
            entries.push(CertificateEntry {
                region,
                x_degree,
                u_degree: pu.poly.degree(),
                x_leading: px.poly.leading().cloned().unwrap_or_default(),
            });
        }
    }
    entries
}

impl Certificate {
    /// Re-derives the degree comparison from `x` and `u` and checks every
    /// claim: the tail pieces cover the core up to a finite set, each one
    /// has `deg x > deg u` and a positive leading coefficient, `x − u` is
    /// the monomial `l^k`, and `x ≥ 0`.
    pub fn validate(&self, algebra: &Algebra, u: &Coset, x: &Coset) -> bool {
        if self.core != *algebra.filter().core() {
            return false;
        }
        let Ok(v) = x.rep().sub(u.rep()) else {
            return false;
        };
        let monomial = Poly::monomial(BigRational::one(), self.witness_degree);
        if Element::polynomial(monomial, algebra.carrier())
            .ok()
            .as_ref()
            != Some(&v)
        {
            return false;
        }
        let entries = tail_entries(x.rep(), u.rep(), &self.core);
        if entries != self.entries {
            return false;
        }
        let covered = entries
            .iter()
            .fold(EpSet::empty(), |acc, e| acc.union(&e.region));
        if !self.core.difference(&covered).is_finite() {
            return false;
        }
        let dominated = entries
            .iter()
            .all(|e| e.x_leading.is_positive() && e.u_degree.is_none_or(|d| d < e.x_degree));
        dominated && matches!(algebra.zero().leq(x), Ok(true))
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v = l^{}; ", self.witness_degree)?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let u_degree = e
                .u_degree
                .map_or_else(|| "-inf".to_string(), |d| d.to_string());
            write!(
                f,
                "on {}: deg x = {} > deg u = {}, lead {} > 0",
                e.region,
                e.x_degree,
                u_degree,
                fmt_rational(&e.x_leading)
            )?;
        }
        write!(
            f,
            "; so {{x <= n*u}} meets {} finitely for every n",
            self.core
        )
    }
}

impl Algebra {
    /// Indicators of the two halves of the core, split by the parity of
    /// each member's position: nonzero cosets whose product vanishes.
    pub fn zero_divisor_pair(&self) -> (Coset, Coset) {
        let (left, right) = self.filter().core().split_alternate();
        let ind = |s: &EpSet| {
            let rep =
                Element::indicator(s, self.carrier()).expect("admissible carriers are infinite");
            Coset {
                algebra: self.clone(),
                rep,
            }
        };
        (ind(&left), ind(&right))
    }

    /// For `u ≥ 0`, an element `x ≥ 0` that no multiple `n·u` bounds:
    /// `x = u + l^(d+1)` where `d` is the largest degree of `u` on the
    /// tail of the core (`x = u + l` when `u` vanishes there).
    pub fn archimedean_counterexample(
        &self,
        u: &Coset,
    ) -> Result<(Coset, Certificate), AlgebraError> {
        if !self.zero().leq(u)? {
            return Err(AlgebraError::NotNonnegative(self.to_string()));
        }
        let core = self.filter().core().clone();
        let witness_degree = u.rep().max_tail_degree(&core).map_or(1, |d| d + 1);
        let v = Element::polynomial(
            Poly::monomial(BigRational::one(), witness_degree),
            self.carrier(),
        )?;
        let x = self.coset(u.rep().add(&v)?)?;
        let entries = tail_entries(x.rep(), u.rep(), &core);
        Ok((
            x,
            Certificate {
                core,
                witness_degree,
                entries,
            },
        ))
    }
}
