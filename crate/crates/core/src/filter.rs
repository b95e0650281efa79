//! Admissible filters: the Fréchet filter on an index set joined with
//! finitely many eventually-periodic generators.
//!
//! Membership depends only on the intersection of the generators (the
//! *core*): `J ∈ F ⟺ J ⊆ Λ ∧ core ∖ J is finite`. The core is required to be
//! infinite, so every filter here contains the Fréchet filter and none is
//! principal.

use std::fmt;

use thiserror::Error;

use crate::epset::EpSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FilterError {
    #[error("carrier {0} is finite")]
    DegenerateCarrier(EpSet),
    #[error("generators meet in the finite set {core}; the filter would be principal")]
    DegenerateFilter { core: EpSet },
    #[error("generator {generator} is not a subset of the carrier {carrier}")]
    GeneratorNotInCarrier { generator: EpSet, carrier: EpSet },
    #[error("{set} is not a subset of the carrier {carrier}")]
    NotInCarrier { set: EpSet, carrier: EpSet },
    #[error("filters live on different carriers: {left} vs {right}")]
    CarrierMismatch { left: EpSet, right: EpSet },
    #[error("cannot restrict to {target}: it must be an infinite member of the filter")]
    RestrictionInvalid { target: EpSet },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Filter {
    carrier: EpSet,
    generators: Vec<EpSet>,
    core: EpSet,
}

impl Filter {
    /// The filter of cofinite subsets of `carrier`.
    pub fn frechet(carrier: &EpSet) -> Result<Filter, FilterError> {
        if carrier.is_finite() {
            return Err(FilterError::DegenerateCarrier(carrier.clone()));
        }
        Ok(Filter {
            carrier: carrier.clone(),
            generators: Vec::new(),
            core: carrier.clone(),
        })
    }

    /// The Fréchet filter on `carrier` joined with `generators`.
    pub fn generated(carrier: &EpSet, generators: Vec<EpSet>) -> Result<Filter, FilterError> {
        let mut filter = Filter::frechet(carrier)?;
        for g in &generators {
            if !g.is_subset(carrier) {
                return Err(FilterError::GeneratorNotInCarrier {
                    generator: g.clone(),
                    carrier: carrier.clone(),
                });
            }
            filter.core = filter.core.intersect(g);
        }
        if filter.core.is_finite() {
            return Err(FilterError::DegenerateFilter { core: filter.core });
        }
        filter.generators = generators;
        Ok(filter)
    }

    pub fn carrier(&self) -> &EpSet {
        &self.carrier
    }

    pub fn generators(&self) -> &[EpSet] {
        &self.generators
    }

    pub fn core(&self) -> &EpSet {
        &self.core
    }

    /// The core modulo finite sets: the periodic closure of the core cut
    /// down to the carrier. Equivalent filters share it.
    pub fn canonical_core(&self) -> EpSet {
        self.core.periodic_closure().intersect(&self.carrier)
    }

    pub fn contains(&self, set: &EpSet) -> Result<bool, FilterError> {
        if !set.is_subset(&self.carrier) {
            return Err(FilterError::NotInCarrier {
                set: set.clone(),
                carrier: self.carrier.clone(),
            });
        }
        Ok(self.core.difference(set).is_finite())
    }

    fn same_carrier(&self, other: &Filter) -> Result<(), FilterError> {
        if self.carrier == other.carrier {
            Ok(())
        } else {
            Err(FilterError::CarrierMismatch {
                left: self.carrier.clone(),
                right: other.carrier.clone(),
            })
        }
    }

    /// `self ⊆ other` as families of sets.
    pub fn is_subfilter(&self, other: &Filter) -> Result<bool, FilterError> {
        self.same_carrier(other)?;
        other.contains(&self.core)
    }

    /// Mutual inclusion: the two filters have the same members.
    pub fn equivalent(&self, other: &Filter) -> bool {
        self.carrier == other.carrier && self.core.finitely_differs(&other.core)
    }

    /// Whether `F|Λ` is an admissible filter on `Λ`, i.e. `Λ ∈ F`.
    pub fn admits_restriction(&self, target: &EpSet) -> Result<bool, FilterError> {
        if target.is_finite() || !target.is_subset(&self.carrier) {
            return Err(FilterError::RestrictionInvalid {
                target: target.clone(),
            });
        }
        self.contains(target)
    }

    /// `F|Λ = { I ∩ Λ : I ∈ F }`.
    pub fn restrict(&self, target: &EpSet) -> Result<Filter, FilterError> {
        if !self.admits_restriction(target)? {
            return Err(FilterError::RestrictionInvalid {
                target: target.clone(),
            });
        }
        let generators = self
            .generators
            .iter()
            .map(|g| g.intersect(target))
            .collect();
        Filter::generated(target, generators)
    }
}

/// Canonical description, identical for equivalent filters:
/// `frechet(C)` or `frechet(C) + [core]`.
impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let core = self.canonical_core();
        if core == self.carrier {
            write!(f, "frechet({})", self.carrier)
        } else {
            write!(f, "frechet({}) + [{}]", self.carrier, core)
        }
    }
}
