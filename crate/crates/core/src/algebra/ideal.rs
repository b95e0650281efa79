use std::fmt;

use crate::element::Element;
use crate::epset::EpSet;
use crate::filter::Filter;

use super::AlgebraError;

/// A finitely generated ideal of `Q^Λ`, optionally joined with the ideal
/// `I_Fre(Λ)` of elements vanishing on a cofinite set.
#[derive(Clone, Debug)]
pub struct FgIdeal {
    carrier: EpSet,
    generators: Vec<Element>,
    includes_frechet: bool,
}

impl FgIdeal {
    pub fn new(
        carrier: &EpSet,
        generators: Vec<Element>,
        includes_frechet: bool,
    ) -> Result<Self, AlgebraError> {
        if let Some(g) = generators.iter().find(|g| g.carrier() != carrier) {
            return Err(AlgebraError::CarrierMismatch {
                element: g.carrier().clone(),
                algebra: carrier.clone(),
            });
        }
        Ok(FgIdeal {
            carrier: carrier.clone(),
            generators,
            includes_frechet,
        })
    }

    pub fn carrier(&self) -> &EpSet {
        &self.carrier
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn includes_frechet(&self) -> bool {
        self.includes_frechet
    }

    /// `∩ᵢ Z(gᵢ)`, the carrier when there are no generators.
    pub fn common_zero_set(&self) -> EpSet {
        self.generators
            .iter()
            .fold(self.carrier.clone(), |acc, g| acc.intersect(&g.zero_set()))
    }
}

/// An ideal without the Fréchet part whose common zero set is a finite set
/// `I` of `n` points: the quotient is the power `Q^I`, not a reduced power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerateReport {
    pub n: usize,
    pub support: EpSet,
}

impl fmt::Display for DegenerateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degenerate: common zero set {} has {} point(s); the quotient is the finite power Q^{}",
            self.support, self.n, self.n
        )
    }
}

#[derive(Clone, Debug)]
pub enum IdealImage {
    Admissible(Filter),
    Degenerate(DegenerateReport),
}

/// The filter `F_I = { Z(x) : x ∈ I }` of an ideal, joined with the Fréchet
/// filter. Every member of a finitely generated ideal vanishes on the
/// common zero set of its generators, so the result is generated by that
/// set.
pub fn filter_of_ideal(ideal: &FgIdeal) -> Result<IdealImage, AlgebraError> {
    if ideal.generators.is_empty() && !ideal.includes_frechet {
        return Err(AlgebraError::EmptyIdeal);
    }
    let zeros = ideal.common_zero_set();
    if let Some(n) = zeros.cardinality() {
        if ideal.includes_frechet {
            return Err(AlgebraError::ImproperIdeal(zeros));
        }
        return Ok(IdealImage::Degenerate(DegenerateReport {
            n,
            support: zeros,
        }));
    }
    Ok(IdealImage::Admissible(Filter::generated(
        &ideal.carrier,
        vec![zeros],
    )?))
}

/// `F ↦ I_F ↦ F_{I_F}` returns `F`. `I_F` is described by the generator
/// `χ(Λ ∖ core)` together with the Fréchet ideal.
pub fn correspondence_idempotent(filter: &Filter) -> bool {
    let outside = filter.carrier().difference(filter.core());
    let Ok(generator) = Element::indicator(&outside, filter.carrier()) else {
        return false;
    };
    let Ok(ideal) = FgIdeal::new(filter.carrier(), vec![generator], true) else {
        return false;
    };
    match filter_of_ideal(&ideal) {
        Ok(IdealImage::Admissible(back)) => back.equivalent(filter),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use num_rational::BigRational;

    fn nat() -> EpSet {
        EpSet::naturals()
    }

    fn ap(r: u64, p: u64) -> EpSet {
        EpSet::ap(r, p).unwrap()
    }

    fn ind(s: EpSet) -> Element {
        Element::indicator(&s, &nat()).unwrap()
    }

    #[test]
    fn filters_of_ideals() {
        let i = FgIdeal::new(&nat(), vec![ind(ap(1, 2))], true).unwrap();
        match filter_of_ideal(&i).unwrap() {
            IdealImage::Admissible(f) => assert_eq!(f.core(), &ap(0, 2)),
            other => panic!("unexpected {other:?}"),
        }

        let shifted = Poly::new(vec![
            BigRational::from_integer((-3).into()),
            BigRational::from_integer(1.into()),
        ]);
        let i = FgIdeal::new(
            &nat(),
            vec![Element::polynomial(shifted, &nat()).unwrap()],
            false,
        )
        .unwrap();
        match filter_of_ideal(&i).unwrap() {
            IdealImage::Degenerate(r) => {
                assert_eq!(r.n, 1);
                assert_eq!(r.support, EpSet::finite([3]));
            }
            other => panic!("unexpected {other:?}"),
        }

        let i = FgIdeal::new(&nat(), vec![ind(ap(1, 2)), ind(ap(2, 4))], true).unwrap();
        match filter_of_ideal(&i).unwrap() {
            IdealImage::Admissible(f) => assert_eq!(f.core(), &ap(0, 4)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ideal_errors() {
        let empty = FgIdeal::new(&nat(), vec![], false).unwrap();
        assert!(matches!(
            filter_of_ideal(&empty),
            Err(AlgebraError::EmptyIdeal)
        ));
        let fre_only = FgIdeal::new(&nat(), vec![], true).unwrap();
        match filter_of_ideal(&fre_only).unwrap() {
            IdealImage::Admissible(f) => assert!(f.equivalent(&Filter::frechet(&nat()).unwrap())),
            other => panic!("unexpected {other:?}"),
        }
        let unit = FgIdeal::new(&nat(), vec![Element::one(&nat()).unwrap()], true).unwrap();
        assert!(matches!(
            filter_of_ideal(&unit),
            Err(AlgebraError::ImproperIdeal(_))
        ));
        let unit = FgIdeal::new(&nat(), vec![Element::one(&nat()).unwrap()], false).unwrap();
        match filter_of_ideal(&unit).unwrap() {
            IdealImage::Degenerate(r) => assert_eq!(r.n, 0),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            FgIdeal::new(&nat(), vec![Element::one(&ap(0, 2)).unwrap()], true),
            Err(AlgebraError::CarrierMismatch { .. })
        ));
    }

    #[test]
    fn idempotence() {
        assert!(correspondence_idempotent(&Filter::frechet(&nat()).unwrap()));
        assert!(correspondence_idempotent(
            &Filter::generated(&nat(), vec![ap(0, 2)]).unwrap()
        ));
        assert!(correspondence_idempotent(
            &Filter::generated(&nat(), vec![ap(0, 6)]).unwrap()
        ));
    }
}
