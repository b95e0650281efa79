//! Random generators for sets, elements, filters and cosets.
//!
//! Used by the program evaluator to draw commutativity samples and by the
//! test suites. Sizes are kept small (periods up to 6, thresholds up to 6,
//! degrees up to 3) so that random combinations stay cheap.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::algebra::{Algebra, Coset};
use crate::element::Element;
use crate::epset::EpSet;
use crate::filter::Filter;
use crate::poly::Poly;

pub const MAX_PERIOD: u64 = 6;
pub const MAX_THRESHOLD: u64 = 6;

pub fn epset<R: Rng + ?Sized>(rng: &mut R) -> EpSet {
    let period = rng.random_range(1..=MAX_PERIOD);
    let threshold = rng.random_range(0..=MAX_THRESHOLD);
    let residues: Vec<u64> = (0..period).filter(|_| rng.random_bool(0.5)).collect();
    let head: Vec<u64> = (0..threshold).filter(|_| rng.random_bool(0.5)).collect();
    EpSet::from_parts(threshold, period, residues, head).expect("parts are in range")
}

pub fn infinite_epset<R: Rng + ?Sized>(rng: &mut R) -> EpSet {
    loop {
        let s = epset(rng);
        if !s.is_finite() {
            return s;
        }
    }
}

/// A random index set: ℕ a third of the time, otherwise a random infinite set.
pub fn carrier<R: Rng + ?Sized>(rng: &mut R) -> EpSet {
    if rng.random_bool(1.0 / 3.0) {
        EpSet::naturals()
    } else {
        infinite_epset(rng)
    }
}

/// A random infinite subset of an infinite set (occasionally the set itself).
pub fn infinite_subset<R: Rng + ?Sized>(rng: &mut R, of: &EpSet) -> EpSet {
    for _ in 0..16 {
        let s = epset(rng).intersect(of);
        if !s.is_finite() {
            return s;
        }
    }
    of.clone()
}

pub fn rational<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    let numer: i64 = rng.random_range(-4..=4);
    let denom: i64 = rng.random_range(1..=3);
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn poly<R: Rng + ?Sized>(rng: &mut R, max_degree: usize) -> Poly {
    match rng.random_range(0..10) {
        0 | 1 => Poly::zero(),
        2 | 3 => {
            // a product of (l − r) factors with natural roots
            let factors = rng.random_range(1..=max_degree.max(1));
            let mut p = Poly::constant(rational(rng));
            if p.is_zero() {
                p = Poly::constant(BigRational::from_integer(1.into()));
            }
            for _ in 0..factors {
                let r: i64 = rng.random_range(0..12);
                p = &p
                    * &Poly::new(vec![
                        BigRational::from_integer((-r).into()),
                        BigRational::from_integer(1.into()),
                    ]);
            }
            p
        }
        _ => {
            let degree = rng.random_range(0..=max_degree);
            Poly::new((0..=degree).map(|_| rational(rng)).collect())
        }
    }
}

/// Random disjoint nonempty regions covering `carrier`.
pub fn partition<R: Rng + ?Sized>(rng: &mut R, carrier: &EpSet, parts: usize) -> Vec<EpSet> {
    let mut regions = vec![carrier.clone()];
    for _ in 1..parts {
        let i = rng.random_range(0..regions.len());
        let cut = epset(rng);
        let inside = regions[i].intersect(&cut);
        let outside = regions[i].difference(&cut);
        if !inside.is_empty() && !outside.is_empty() {
            regions[i] = inside;
            regions.push(outside);
        }
    }
    regions
}

fn exceptions<R: Rng + ?Sized>(rng: &mut R, carrier: &EpSet) -> BTreeMap<u64, BigRational> {
    let count = rng.random_range(0..=3);
    let members: Vec<u64> = carrier.iter().take(20).collect();
    (0..count)
        .map(|_| (members[rng.random_range(0..members.len())], rational(rng)))
        .collect()
}

pub fn element<R: Rng + ?Sized>(rng: &mut R, carrier: &EpSet) -> Element {
    let parts = rng.random_range(1..=3);
    let pieces = partition(rng, carrier, parts)
        .into_iter()
        .map(|region| (region, poly(rng, 3)))
        .collect();
    let exceptions = exceptions(rng, carrier);
    Element::piecewise(carrier, pieces, exceptions).expect("regions partition the carrier")
}

/// An admissible filter with up to `max_generators` generators.
pub fn filter<R: Rng + ?Sized>(rng: &mut R, carrier: &EpSet, max_generators: usize) -> Filter {
    let count = rng.random_range(0..=max_generators);
    let mut core = carrier.clone();
    let mut generators = Vec::new();
    for _ in 0..count {
        for _ in 0..8 {
            let g = infinite_subset(rng, carrier);
            if !g.intersect(&core).is_finite() {
                core = core.intersect(&g);
                generators.push(g);
                break;
            }
        }
    }
    Filter::generated(carrier, generators).expect("core kept infinite")
}

/// A random member of `I_F`: vanishes on the core of `F` up to finitely many
/// points.
pub fn ideal_element<R: Rng + ?Sized>(rng: &mut R, filter: &Filter) -> Element {
    let carrier = filter.carrier();
    let support = carrier.difference(filter.core());
    let factor = Element::indicator(&support, carrier).expect("carrier is infinite");
    let base = element(rng, carrier).mul(&factor).expect("same carrier");
    let members: Vec<u64> = carrier.iter().take(20).collect();
    (0..rng.random_range(0..=2)).fold(base, |x, _| {
        let k = members[rng.random_range(0..members.len())];
        x.with_exception(k, rational(rng))
            .expect("member of the carrier")
    })
}

/// A random element that is nonnegative on the core of `filter`, so its
/// coset is `≥ 0`.
pub fn nonneg_element<R: Rng + ?Sized>(rng: &mut R, filter: &Filter) -> Element {
    let carrier = filter.carrier();
    let y = element(rng, carrier);
    let mut u = y.mul(&y).expect("same carrier");
    if rng.random_bool(0.5) {
        let c = rational(rng);
        let shift = Element::constant(c.clone() * c, carrier).expect("carrier is infinite");
        u = u.add(&shift).expect("same carrier");
    }
    if rng.random_bool(0.3) {
        // negative somewhere outside the core, still nonnegative in A_F
        let outside = carrier.difference(filter.core());
        let dip = Element::indicator(&outside, carrier)
            .expect("carrier is infinite")
            .scalar_mul(&BigRational::from_integer((-5).into()));
        u = u.add(&dip).expect("same carrier");
    }
    u
}

pub fn coset<R: Rng + ?Sized>(rng: &mut R, algebra: &Algebra) -> Coset {
    algebra
        .coset(element(rng, algebra.carrier()))
        .expect("element built on the algebra's carrier")
}
