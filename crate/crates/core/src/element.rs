//! Elements of the power algebra Q^Λ over an eventually-periodic index set.
//!
//! An [`Element`] is a piecewise polynomial: the carrier is partitioned into
//! eventually-periodic regions, each carrying a polynomial in the index,
//! and a finite map of exceptions overrides individual values. This class
//! contains constants, the identity `λ ↦ λ` and indicators, is closed under
//! the ring operations, and has decidable zero and order sets.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::epset::EpSet;
use crate::poly::{fmt_rational, Poly};

/// Largest root bound for which sign sets are computed by enumeration.
pub const SEARCH_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElementError {
    #[error("carriers differ: {left} vs {right}")]
    CarrierMismatch { left: EpSet, right: EpSet },
    #[error("carrier {0} is finite")]
    DegenerateCarrier(EpSet),
    #[error("index {0} is not in the carrier")]
    OutOfCarrier(u64),
    #[error("cannot restrict to {target}: it must be an infinite subset of {carrier}")]
    RestrictionInvalid { target: EpSet, carrier: EpSet },
    #[error("cannot extend from {carrier} to {target}: it must be a superset")]
    ExtensionInvalid { target: EpSet, carrier: EpSet },
    #[error("piece regions overlap on {0}")]
    PiecesOverlap(EpSet),
    #[error("piece regions leave {0} uncovered")]
    PiecesDoNotCover(EpSet),
    #[error("piece region {0} is not inside the carrier")]
    PieceOutsideCarrier(EpSet),
    #[error("sign analysis needs to scan up to {0}, above the search limit")]
    SearchLimit(BigInt),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Piece {
    pub region: EpSet,
    pub poly: Poly,
}

/// A map `Λ → Q` given by polynomials on eventually-periodic regions plus
/// finitely many overridden values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    carrier: EpSet,
    pieces: Vec<Piece>,
    exceptions: BTreeMap<u64, BigRational>,
}

fn check_carrier(carrier: &EpSet) -> Result<(), ElementError> {
    if carrier.is_finite() {
        Err(ElementError::DegenerateCarrier(carrier.clone()))
    } else {
        Ok(())
    }
}

impl Element {
    pub fn constant(c: BigRational, carrier: &EpSet) -> Result<Self, ElementError> {
        Self::polynomial(Poly::constant(c), carrier)
    }

    pub fn zero(carrier: &EpSet) -> Result<Self, ElementError> {
        Self::polynomial(Poly::zero(), carrier)
    }

    pub fn one(carrier: &EpSet) -> Result<Self, ElementError> {
        Self::constant(BigRational::one(), carrier)
    }

    /// The map `λ ↦ λ`.
    pub fn identity(carrier: &EpSet) -> Result<Self, ElementError> {
        Self::polynomial(Poly::identity(), carrier)
    }

    pub fn polynomial(poly: Poly, carrier: &EpSet) -> Result<Self, ElementError> {
        check_carrier(carrier)?;
        Ok(Element {
            carrier: carrier.clone(),
            pieces: vec![Piece {
                region: carrier.clone(),
                poly,
            }],
            exceptions: BTreeMap::new(),
        })
    }

    /// The indicator of `set ∩ carrier`.
    pub fn indicator(set: &EpSet, carrier: &EpSet) -> Result<Self, ElementError> {
        check_carrier(carrier)?;
        let inside = set.intersect(carrier);
        let outside = carrier.difference(set);
        Ok(Self::normalized(
            carrier.clone(),
            vec![
                Piece {
                    region: inside,
                    poly: Poly::constant(BigRational::one()),
                },
                Piece {
                    region: outside,
                    poly: Poly::zero(),
                },
            ],
            BTreeMap::new(),
        ))
    }

    /// Builds an element from explicit pieces, which must partition the
    /// carrier, and exceptions, which must lie in the carrier.
    pub fn piecewise(
        carrier: &EpSet,
        pieces: Vec<(EpSet, Poly)>,
        exceptions: BTreeMap<u64, BigRational>,
    ) -> Result<Self, ElementError> {
        check_carrier(carrier)?;
        let mut covered = EpSet::empty();
        for (region, _) in &pieces {
            if !region.is_subset(carrier) {
                return Err(ElementError::PieceOutsideCarrier(region.clone()));
            }
            let overlap = covered.intersect(region);
            if !overlap.is_empty() {
                return Err(ElementError::PiecesOverlap(overlap));
            }
            covered = covered.union(region);
        }
        if covered != *carrier {
            return Err(ElementError::PiecesDoNotCover(carrier.difference(&covered)));
        }
        if let Some(&k) = exceptions.keys().find(|&&k| !carrier.contains(k)) {
            return Err(ElementError::OutOfCarrier(k));
        }
        let pieces = pieces
            .into_iter()
            .map(|(region, poly)| Piece { region, poly })
            .collect();
        Ok(Self::normalized(carrier.clone(), pieces, exceptions))
    }

    /// Overrides the value at one index.
    pub fn with_exception(&self, index: u64, value: BigRational) -> Result<Self, ElementError> {
        if !self.carrier.contains(index) {
            return Err(ElementError::OutOfCarrier(index));
        }
        let mut exceptions = self.exceptions.clone();
        exceptions.insert(index, value);
        Ok(Self::normalized(
            self.carrier.clone(),
            self.pieces.clone(),
            exceptions,
        ))
    }

    pub fn carrier(&self) -> &EpSet {
        &self.carrier
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn exceptions(&self) -> &BTreeMap<u64, BigRational> {
        &self.exceptions
    }

    fn piece_at(&self, n: u64) -> Option<&Piece> {
        self.pieces.iter().find(|p| p.region.contains(n))
    }

    fn piece_value(pieces: &[Piece], n: u64) -> Option<BigRational> {
        pieces
            .iter()
            .find(|p| p.region.contains(n))
            .map(|p| p.poly.eval_at(n))
    }

    /// Canonical form. Pieces with equal polynomials are merged; every
    /// infinite region is replaced by its periodic closure within the
    /// carrier; points of the carrier left over (and all finite regions)
    /// go to the first infinite piece; values displaced by the move become
    /// exceptions; exceptions agreeing with their piece are dropped.
    ///
    /// A residue class of the tail is infinite, and distinct polynomials
    /// agree at finitely many points, so the result depends only on the
    /// function: structural equality is pointwise equality.
    fn normalized(
        carrier: EpSet,
        pieces: Vec<Piece>,
        mut exceptions: BTreeMap<u64, BigRational>,
    ) -> Self {
        let mut merged: Vec<Piece> = Vec::new();
        for piece in pieces.into_iter().filter(|p| !p.region.is_empty()) {
            match merged.iter_mut().find(|m| m.poly == piece.poly) {
                Some(m) => m.region = m.region.union(&piece.region),
                None => merged.push(piece),
            }
        }
        let mut canonical: Vec<Piece> = merged
            .iter()
            .filter(|p| !p.region.is_finite())
            .map(|p| Piece {
                region: p.region.periodic_closure().intersect(&carrier),
                poly: p.poly.clone(),
            })
            .collect();
        canonical.sort_by(|a, b| a.region.cmp(&b.region));
        let covered = canonical
            .iter()
            .fold(EpSet::empty(), |acc, p| acc.union(&p.region));
        if let Some(first) = canonical.first_mut() {
            first.region = first.region.union(&carrier.difference(&covered));
        }
        for old in &merged {
            for new in canonical.iter().filter(|p| p.poly != old.poly) {
                for n in old.region.intersect(&new.region).iter() {
                    exceptions.entry(n).or_insert_with(|| old.poly.eval_at(n));
                }
            }
        }
        exceptions.retain(|&n, v| Self::piece_value(&canonical, n).as_ref() != Some(v));
        Element {
            carrier,
            pieces: canonical,
            exceptions,
        }
    }

    pub fn eval(&self, n: u64) -> Result<BigRational, ElementError> {
        if !self.carrier.contains(n) {
            return Err(ElementError::OutOfCarrier(n));
        }
        if let Some(v) = self.exceptions.get(&n) {
            return Ok(v.clone());
        }
        let piece = self.piece_at(n).ok_or(ElementError::OutOfCarrier(n))?;
        Ok(piece.poly.eval_at(n))
    }

    fn same_carrier(&self, other: &Element) -> Result<(), ElementError> {
        if self.carrier == other.carrier {
            Ok(())
        } else {
            Err(ElementError::CarrierMismatch {
                left: self.carrier.clone(),
                right: other.carrier.clone(),
            })
        }
    }

    fn combine(
        &self,
        other: &Element,
        op: impl Fn(&Poly, &Poly) -> Poly,
        value_op: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Result<Element, ElementError> {
        self.same_carrier(other)?;
        let mut pieces = Vec::new();
        for a in &self.pieces {
            for b in &other.pieces {
                let region = a.region.intersect(&b.region);
                if !region.is_empty() {
                    pieces.push(Piece {
                        region,
                        poly: op(&a.poly, &b.poly),
                    });
                }
            }
        }
        let mut exceptions = BTreeMap::new();
        for &k in self.exceptions.keys().chain(other.exceptions.keys()) {
            if let Entry::Vacant(slot) = exceptions.entry(k) {
                slot.insert(value_op(&self.eval(k)?, &other.eval(k)?));
            }
        }
        Ok(Self::normalized(self.carrier.clone(), pieces, exceptions))
    }

    pub fn add(&self, other: &Element) -> Result<Element, ElementError> {
        self.combine(other, |a, b| a + b, |a, b| a + b)
    }

    pub fn sub(&self, other: &Element) -> Result<Element, ElementError> {
        self.combine(other, |a, b| a - b, |a, b| a - b)
    }

    pub fn mul(&self, other: &Element) -> Result<Element, ElementError> {
        self.combine(other, |a, b| a * b, |a, b| a * b)
    }

    pub fn neg(&self) -> Element {
        self.map(|p| -p, |v| -v)
    }

    pub fn scalar_mul(&self, c: &BigRational) -> Element {
        self.map(|p| p.scale(c), |v| v * c)
    }

    pub fn pow(&self, k: u32) -> Element {
        self.map(|p| p.pow(k), |v| num_traits::pow(v.clone(), k as usize))
    }

    fn map(
        &self,
        op: impl Fn(&Poly) -> Poly,
        value_op: impl Fn(&BigRational) -> BigRational,
    ) -> Element {
        let pieces = self
            .pieces
            .iter()
            .map(|p| Piece {
                region: p.region.clone(),
                poly: op(&p.poly),
            })
            .collect();
        let exceptions = self
            .exceptions
            .iter()
            .map(|(&k, v)| (k, value_op(v)))
            .collect();
        Self::normalized(self.carrier.clone(), pieces, exceptions)
    }

    /// `Z(x) = { λ ∈ Λ : x(λ) = 0 }`.
    pub fn zero_set(&self) -> EpSet {
        let mut zeros = EpSet::empty();
        for piece in &self.pieces {
            let part = if piece.poly.is_zero() {
                piece.region.clone()
            } else {
                let roots = piece.poly.natural_roots();
                EpSet::finite(roots.into_iter().filter(|&r| piece.region.contains(r)))
            };
            zeros = zeros.union(&part);
        }
        self.apply_exceptions(zeros, |v| v.is_zero())
    }

    fn apply_exceptions(&self, set: EpSet, keep: impl Fn(&BigRational) -> bool) -> EpSet {
        let (hits, misses): (Vec<u64>, Vec<u64>) = self
            .exceptions
            .keys()
            .partition(|k| keep(&self.exceptions[*k]));
        set.difference(&EpSet::finite(misses))
            .union(&EpSet::finite(hits))
    }

    /// `{ λ ∈ Λ : x(λ) ≥ 0 }`.
    pub fn nonneg_set(&self) -> Result<EpSet, ElementError> {
        let mut set = EpSet::empty();
        for piece in &self.pieces {
            set = set.union(&nonneg_on_region(&piece.poly, &piece.region)?);
        }
        Ok(self.apply_exceptions(set, |v| !v.is_negative()))
    }

    /// `{ λ ∈ Λ : x(λ) ≤ y(λ) }`.
    pub fn le_set(&self, other: &Element) -> Result<EpSet, ElementError> {
        other.sub(self)?.nonneg_set()
    }

    /// The restriction `x|Λ` to an infinite subset of the carrier.
    pub fn restrict(&self, target: &EpSet) -> Result<Element, ElementError> {
        if target.is_finite() || !target.is_subset(&self.carrier) {
            return Err(ElementError::RestrictionInvalid {
                target: target.clone(),
                carrier: self.carrier.clone(),
            });
        }
        let pieces = self
            .pieces
            .iter()
            .map(|p| Piece {
                region: p.region.intersect(target),
                poly: p.poly.clone(),
            })
            .collect();
        let exceptions = self
            .exceptions
            .iter()
            .filter(|(&k, _)| target.contains(k))
            .map(|(&k, v)| (k, v.clone()))
            .collect();
        Ok(Self::normalized(target.clone(), pieces, exceptions))
    }

    /// Extends to a larger carrier by zero outside the current one.
    pub fn extend_by_zero(&self, target: &EpSet) -> Result<Element, ElementError> {
        if !self.carrier.is_subset(target) {
            return Err(ElementError::ExtensionInvalid {
                target: target.clone(),
                carrier: self.carrier.clone(),
            });
        }
        let mut pieces = self.pieces.clone();
        pieces.push(Piece {
            region: target.difference(&self.carrier),
            poly: Poly::zero(),
        });
        Ok(Self::normalized(
            target.clone(),
            pieces,
            self.exceptions.clone(),
        ))
    }

    /// The largest polynomial degree among pieces meeting `within` in an
    /// infinite set. `None` stands for −∞: every such piece is zero.
    pub fn max_tail_degree(&self, within: &EpSet) -> Option<usize> {
        self.pieces
            .iter()
            .filter(|p| !p.region.intersect(within).is_finite())
            .filter_map(|p| p.poly.degree())
            .max()
    }

    /// Pointwise equality on the whole carrier.
    pub fn same_function(&self, other: &Element) -> Result<bool, ElementError> {
        Ok(self.sub(other)?.zero_set() == self.carrier)
    }
}

/// `{ n ∈ region : poly(n) ≥ 0 }`: explicit below the last real root,
/// leading-coefficient sign decides the rest.
fn nonneg_on_region(poly: &Poly, region: &EpSet) -> Result<EpSet, ElementError> {
    let Some(lead) = poly.leading() else {
        return Ok(region.clone());
    };
    if poly.degree() == Some(0) {
        return Ok(if lead.is_positive() {
            region.clone()
        } else {
            EpSet::empty()
        });
    }
    let start_big = poly.sign_stable_from();
    let start = start_big
        .to_u64()
        .filter(|&t| t <= SEARCH_LIMIT)
        .ok_or(ElementError::SearchLimit(start_big))?;
    let below = EpSet::finite(
        poly.nonneg_points_below(start)
            .into_iter()
            .filter(|&n| region.contains(n)),
    );
    let tail = if lead.is_positive() {
        region.intersect(&EpSet::from(start))
    } else {
        EpSet::empty()
    };
    Ok(below.union(&tail))
}

/// Renders in the program syntax: a bare polynomial when there is a single
/// piece, otherwise `piecewise[S1: p1; S2: p2]`, followed by
/// `except {i: q, …}` when exceptions are present.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.len() == 1 {
            write!(f, "{}", self.pieces[0].poly)?;
        } else {
            write!(f, "piecewise[")?;
            for (i, p) in self.pieces.iter().enumerate() {
                if i > 0 {
                    write!(f, "; ")?;
                }
                write!(f, "{}: {}", p.region, p.poly)?;
            }
            write!(f, "]")?;
        }
        if !self.exceptions.is_empty() {
            write!(f, " except {{")?;
            for (i, (k, v)) in self.exceptions.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{k}: {}", fmt_rational(v))?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn nat() -> EpSet {
        EpSet::naturals()
    }

    fn even() -> EpSet {
        EpSet::ap(0, 2).unwrap()
    }

    fn odd() -> EpSet {
        EpSet::ap(1, 2).unwrap()
    }

    fn c(n: i64) -> Element {
        Element::constant(q(n), &nat()).unwrap()
    }

    #[test]
    fn ring_operations() {
        assert_eq!(c(2).add(&c(3)).unwrap(), c(5));
        let id = Element::identity(&nat()).unwrap();
        let sq = id.mul(&id).unwrap();
        for n in 0..3 {
            assert_eq!(sq.eval(n).unwrap(), q((n * n) as i64));
        }
        let prod = Element::indicator(&even(), &nat())
            .unwrap()
            .mul(&Element::indicator(&odd(), &nat()).unwrap())
            .unwrap();
        assert_eq!(prod, c(0));
        assert_eq!(c(4).neg(), c(-4));
        assert_eq!(c(4).scalar_mul(&BigRational::new(1.into(), 2.into())), c(2));
    }

    #[test]
    fn constants() {
        assert_eq!(c(0), Element::zero(&nat()).unwrap());
        assert_eq!(c(1), Element::one(&nat()).unwrap());
        let v = Element::constant(BigRational::new((-7).into(), 3.into()), &even()).unwrap();
        assert_eq!(v.eval(4).unwrap(), BigRational::new((-7).into(), 3.into()));
        assert!(matches!(
            Element::constant(q(1), &EpSet::finite([1, 2])),
            Err(ElementError::DegenerateCarrier(_))
        ));
    }

    #[test]
    fn evaluation() {
        let x = Element::polynomial(Poly::new(vec![q(-3), q(1)]), &nat()).unwrap();
        assert_eq!(x.eval(3).unwrap(), q(0));
        let y = x.with_exception(5, q(9)).unwrap();
        assert_eq!(y.eval(5).unwrap(), q(9));
        assert_eq!(y.eval(6).unwrap(), q(3));
        assert_eq!(
            Element::indicator(&even(), &nat())
                .unwrap()
                .eval(7)
                .unwrap(),
            q(0)
        );
        let on_even = c(1).restrict(&even()).unwrap();
        assert_eq!(on_even.eval(3), Err(ElementError::OutOfCarrier(3)));
    }

    #[test]
    fn zero_sets() {
        assert_eq!(c(0).zero_set(), nat());
        let x = Element::polynomial(Poly::new(vec![q(-3), q(1)]), &nat()).unwrap();
        assert_eq!(x.zero_set(), EpSet::finite([3]));
        let y = Element::piecewise(
            &nat(),
            vec![
                (even(), Poly::zero()),
                (odd(), Poly::new(vec![q(1), q(0), q(1)])),
            ],
            BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(y.zero_set(), even());
        let z = y
            .with_exception(4, q(2))
            .unwrap()
            .with_exception(3, q(0))
            .unwrap();
        assert_eq!(
            z.zero_set(),
            even()
                .difference(&EpSet::finite([4]))
                .union(&EpSet::finite([3]))
        );
    }

    #[test]
    fn order_sets() {
        assert_eq!(c(1).le_set(&c(2)).unwrap(), nat());
        let id = Element::identity(&nat()).unwrap();
        assert_eq!(c(5).le_set(&id).unwrap(), EpSet::from(5));
        let e = Element::indicator(&even(), &nat()).unwrap();
        let o = Element::indicator(&odd(), &nat()).unwrap();
        assert_eq!(e.le_set(&o).unwrap(), odd());
        // l^2 - 10 l + 21 = (l - 3)(l - 7) is negative strictly between 3 and 7
        let f = Element::polynomial(Poly::new(vec![q(21), q(-10), q(1)]), &nat()).unwrap();
        assert_eq!(
            f.nonneg_set().unwrap(),
            nat().difference(&EpSet::finite([4, 5, 6]))
        );
    }

    #[test]
    fn restriction() {
        assert_eq!(
            c(1).restrict(&even()).unwrap(),
            Element::one(&even()).unwrap()
        );
        let id = Element::identity(&nat()).unwrap();
        assert_eq!(id.restrict(&odd()).unwrap().eval(7).unwrap(), q(7));
        assert_eq!(id.restrict(&nat()).unwrap(), id);
        assert!(matches!(
            id.restrict(&EpSet::finite([1])),
            Err(ElementError::RestrictionInvalid { .. })
        ));
        let on_even = c(1).restrict(&even()).unwrap();
        assert!(matches!(
            on_even.restrict(&nat()),
            Err(ElementError::RestrictionInvalid { .. })
        ));
        let back = on_even.extend_by_zero(&nat()).unwrap();
        assert_eq!(back, Element::indicator(&even(), &nat()).unwrap());
    }

    #[test]
    fn tail_degrees() {
        assert_eq!(c(1).max_tail_degree(&nat()), Some(0));
        let id = Element::identity(&nat()).unwrap();
        assert_eq!(id.max_tail_degree(&even()), Some(1));
        let x = Element::piecewise(
            &nat(),
            vec![(even(), Poly::monomial(q(1), 3)), (odd(), Poly::zero())],
            BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(x.max_tail_degree(&odd()), None);
        assert_eq!(x.max_tail_degree(&nat()), Some(3));
    }

    #[test]
    fn piecewise_validation() {
        let overlap = Element::piecewise(
            &nat(),
            vec![(even(), Poly::zero()), (nat(), Poly::zero())],
            BTreeMap::new(),
        );
        assert!(matches!(overlap, Err(ElementError::PiecesOverlap(_))));
        let gap = Element::piecewise(&nat(), vec![(even(), Poly::zero())], BTreeMap::new());
        assert_eq!(gap, Err(ElementError::PiecesDoNotCover(odd())));
        let outside = Element::piecewise(&even(), vec![(nat(), Poly::zero())], BTreeMap::new());
        assert!(matches!(outside, Err(ElementError::PieceOutsideCarrier(_))));
        let bad_exc = Element::piecewise(
            &even(),
            vec![(even(), Poly::zero())],
            BTreeMap::from([(3, q(1))]),
        );
        assert_eq!(bad_exc, Err(ElementError::OutOfCarrier(3)));
        assert!(matches!(
            c(1).add(&Element::one(&even()).unwrap()),
            Err(ElementError::CarrierMismatch { .. })
        ));
    }

    #[test]
    fn canonical_merging() {
        // two pieces with the same polynomial collapse; finite pieces become exceptions
        let x = Element::piecewise(
            &nat(),
            vec![
                (EpSet::ap(0, 4).unwrap(), Poly::constant(q(2))),
                (EpSet::ap(2, 4).unwrap(), Poly::constant(q(2))),
                (odd().difference(&EpSet::finite([1])), Poly::zero()),
                (EpSet::finite([1]), Poly::constant(q(7))),
            ],
            BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(x.pieces().len(), 2);
        assert_eq!(x.exceptions().len(), 1);
        assert_eq!(x.eval(1).unwrap(), q(7));
        assert_eq!(
            x.to_string(),
            "piecewise[AP(0,2): 2; AP(1,2): 0] except {1: 7}"
        );
    }
}
