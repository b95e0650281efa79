use std::fmt;

use crate::epset::EpSet;

use super::{ideal_member, Algebra, AlgebraError, Coset};

#[derive(Clone, Debug)]
pub enum HomKind {
    /// `x + I_F ↦ x + I_G` for `F ⊆ G` on one carrier.
    Coarsen,
    /// `x + I_F ↦ x|Λ + I_{F|Λ}` for `Λ ∈ F`.
    Restrict,
    /// Left-to-right composition.
    Composite(Vec<Hom>),
}

/// A surjective algebra homomorphism between reduced power algebras.
/// Side conditions are checked when the value is built, so every `Hom`
/// in existence is well defined.
#[derive(Clone, Debug)]
pub struct Hom {
    source: Algebra,
    target: Algebra,
    kind: HomKind,
}

impl Hom {
    pub fn coarsen(source: &Algebra, target: &Algebra) -> Result<Hom, AlgebraError> {
        if !source.filter().is_subfilter(target.filter())? {
            return Err(AlgebraError::NotSubfilter {
                source_filter: source.filter().to_string(),
                target_filter: target.filter().to_string(),
            });
        }
        Ok(Hom {
            source: source.clone(),
            target: target.clone(),
            kind: HomKind::Coarsen,
        })
    }

    pub fn restrict(source: &Algebra, onto: &EpSet) -> Result<Hom, AlgebraError> {
        let filter = source.filter().restrict(onto)?;
        Ok(Hom {
            source: source.clone(),
            target: Algebra::new(filter),
            kind: HomKind::Restrict,
        })
    }

    pub fn identity(algebra: &Algebra) -> Hom {
        Hom {
            source: algebra.clone(),
            target: algebra.clone(),
            kind: HomKind::Coarsen,
        }
    }

    /// The canonical map `A_F → A_H`: a coarsening on a shared carrier,
    /// otherwise restriction to the target's carrier followed by a
    /// coarsening. Requires `Λ ∈ F` and `F|Λ ⊆ H`.
    pub fn between(source: &Algebra, target: &Algebra) -> Result<Hom, AlgebraError> {
        if source.carrier() == target.carrier() {
            return Hom::coarsen(source, target);
        }
        let restrict = Hom::restrict(source, target.carrier())?;
        if restrict.target == *target {
            return Ok(restrict);
        }
        let coarsen = Hom::coarsen(&restrict.target, target)?;
        restrict.compose(&coarsen)
    }

    /// `self` followed by `next`.
    pub fn compose(&self, next: &Hom) -> Result<Hom, AlgebraError> {
        if self.target != next.source {
            return Err(AlgebraError::CompositionMismatch {
                first_target: self.target.to_string(),
                second_source: next.source.to_string(),
            });
        }
        let mut steps = Vec::new();
        for h in [self, next] {
            match &h.kind {
                HomKind::Composite(inner) => steps.extend(inner.iter().cloned()),
                _ => steps.push(h.clone()),
            }
        }
        Ok(Hom {
            source: self.source.clone(),
            target: next.target.clone(),
            kind: HomKind::Composite(steps),
        })
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn kind(&self) -> &HomKind {
        &self.kind
    }

    pub fn apply(&self, x: &Coset) -> Result<Coset, AlgebraError> {
        if x.algebra != self.source {
            return Err(AlgebraError::AlgebraMismatch {
                left: x.algebra.to_string(),
                right: self.source.to_string(),
            });
        }
        match &self.kind {
            HomKind::Coarsen => self.target.coset(x.rep.clone()),
            HomKind::Restrict => self.target.coset(x.rep.restrict(self.target.carrier())?),
            HomKind::Composite(steps) => steps.iter().try_fold(x.clone(), |acc, h| h.apply(&acc)),
        }
    }

    /// A preimage of `y`: the same representative for a coarsening, the
    /// extension by zero for a restriction.
    pub fn preimage(&self, y: &Coset) -> Result<Coset, AlgebraError> {
        if y.algebra != self.target {
            return Err(AlgebraError::AlgebraMismatch {
                left: y.algebra.to_string(),
                right: self.target.to_string(),
            });
        }
        match &self.kind {
            HomKind::Coarsen => self.source.coset(y.rep.clone()),
            HomKind::Restrict => self
                .source
                .coset(y.rep.extend_by_zero(self.source.carrier())?),
            HomKind::Composite(steps) => steps
                .iter()
                .rev()
                .try_fold(y.clone(), |acc, h| h.preimage(&acc)),
        }
    }

    /// For a coarsening `A_F → A_G`: whether `x` maps to zero, decided as
    /// `x ∈ I_G`.
    pub fn kernel_member(&self, x: &Coset) -> Result<bool, AlgebraError> {
        if !matches!(self.kind, HomKind::Coarsen) {
            return Err(AlgebraError::UnsupportedHomKind);
        }
        if x.algebra != self.source {
            return Err(AlgebraError::AlgebraMismatch {
                left: x.algebra.to_string(),
                right: self.source.to_string(),
            });
        }
        ideal_member(&x.rep, self.target.filter())
    }
}

impl fmt::Display for Hom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            HomKind::Coarsen => write!(f, "{} -> {}", self.source, self.target),
            HomKind::Restrict => write!(
                f,
                "{} -> {} (restrict to {})",
                self.source,
                self.target,
                self.target.carrier()
            ),
            HomKind::Composite(steps) => {
                write!(f, "{}", self.source)?;
                for h in steps {
                    write!(f, " -> {}", h.target)?;
                }
                Ok(())
            }
        }
    }
}

/// Whether two parallel paths agree on every sample.
pub fn check_commutes(path1: &Hom, path2: &Hom, samples: &[Coset]) -> Result<bool, AlgebraError> {
    if path1.source != path2.source || path1.target != path2.target {
        return Err(AlgebraError::PathMismatch);
    }
    for s in samples {
        if !path1.apply(s)?.coset_eq(&path2.apply(s)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use std::slice;

    use super::*;
    use crate::element::Element;
    use crate::filter::Filter;
    use num_rational::BigRational;

    fn nat() -> EpSet {
        EpSet::naturals()
    }

    fn ap(r: u64, p: u64) -> EpSet {
        EpSet::ap(r, p).unwrap()
    }

    fn gen(carrier: &EpSet, sets: &[EpSet]) -> Algebra {
        Algebra::new(Filter::generated(carrier, sets.to_vec()).unwrap())
    }

    #[test]
    fn construction() {
        let fre = Algebra::frechet(&nat()).unwrap();
        let even = gen(&nat(), &[ap(0, 2)]);
        assert!(Hom::coarsen(&fre, &even).is_ok());
        assert!(matches!(
            Hom::coarsen(&even, &fre),
            Err(AlgebraError::NotSubfilter { .. })
        ));
        let r = Hom::restrict(&even, &ap(0, 2)).unwrap();
        assert_eq!(r.target(), &Algebra::frechet(&ap(0, 2)).unwrap());
        assert!(Hom::restrict(&fre, &ap(0, 2)).is_err());
        let c = Hom::coarsen(&fre, &even).unwrap();
        assert!(matches!(
            r.compose(&c),
            Err(AlgebraError::CompositionMismatch { .. })
        ));
        assert!(c.compose(&r).is_ok());
    }

    #[test]
    fn application() {
        let fre = Algebra::frechet(&nat()).unwrap();
        let even = gen(&nat(), &[ap(0, 2)]);
        let h = Hom::coarsen(&fre, &even).unwrap();
        let odd = fre
            .coset(Element::indicator(&ap(1, 2), &nat()).unwrap())
            .unwrap();
        assert!(h.apply(&odd).unwrap().coset_eq(&even.zero()).unwrap());
        assert!(h.kernel_member(&odd).unwrap());
        assert!(!h.kernel_member(&fre.one()).unwrap());
        assert!(h.kernel_member(&fre.zero()).unwrap());

        let xi = BigRational::new(7.into(), 2.into());
        let r = Hom::restrict(&even, &ap(0, 2)).unwrap();
        for hom in [&h, &r] {
            let img = hom.apply(&hom.source().embed(xi.clone())).unwrap();
            assert!(img.coset_eq(&hom.target().embed(xi.clone())).unwrap());
        }
        let id = even.coset(Element::identity(&nat()).unwrap()).unwrap();
        let img = r.apply(&id).unwrap();
        assert_eq!(img.rep(), &Element::identity(&ap(0, 2)).unwrap());
        assert!(matches!(
            r.kernel_member(&id),
            Err(AlgebraError::UnsupportedHomKind)
        ));
        assert!(matches!(
            r.apply(&fre.one()),
            Err(AlgebraError::AlgebraMismatch { .. })
        ));
    }

    #[test]
    fn preimages() {
        let even = gen(&nat(), &[ap(0, 2)]);
        let r = Hom::restrict(&even, &ap(0, 2)).unwrap();
        let y = r
            .target()
            .coset(Element::identity(&ap(0, 2)).unwrap())
            .unwrap();
        let x = r.preimage(&y).unwrap();
        assert!(r.apply(&x).unwrap().coset_eq(&y).unwrap());
    }

    #[test]
    fn squares_commute() {
        let even = ap(0, 2);
        let f = gen(&nat(), slice::from_ref(&even));
        let g = gen(&nat(), &[ap(0, 4)]);
        let h = Algebra::frechet(&even).unwrap();
        let k = gen(&even, &[ap(0, 4)]);
        let right_down = Hom::coarsen(&f, &g)
            .unwrap()
            .compose(&Hom::between(&g, &k).unwrap())
            .unwrap();
        let down_right = Hom::between(&f, &h)
            .unwrap()
            .compose(&Hom::coarsen(&h, &k).unwrap())
            .unwrap();
        let samples = vec![
            f.coset(Element::identity(&nat()).unwrap()).unwrap(),
            f.coset(Element::indicator(&ap(1, 4), &nat()).unwrap())
                .unwrap(),
        ];
        assert!(check_commutes(&right_down, &down_right, &samples).unwrap());
        assert!(check_commutes(&Hom::identity(&f), &Hom::identity(&f), &samples).unwrap());
        assert!(matches!(
            check_commutes(&right_down, &Hom::identity(&f), &samples),
            Err(AlgebraError::PathMismatch)
        ));
        // K' on Even with core AP(2,4) does not contain G|Even
        let bad = gen(&even, &[ap(2, 4)]);
        assert!(matches!(
            Hom::between(&g, &bad),
            Err(AlgebraError::NotSubfilter { .. })
        ));
    }
}
