//! Brute-force deciders that evaluate elements index by index.
//!
//! Values are computed with a separate evaluator (fixed-denominator `i128`
//! arithmetic, falling back to big rationals on overflow), and filter
//! membership of `{ λ : pred(λ) }` is decided by scanning one full period
//! window past every threshold instead of through set algebra.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::element::Element;
use crate::epset::EpSet;
use crate::filter::Filter;
use crate::poly::Poly;

use super::OracleError;

#[derive(Clone, Debug)]
enum Value {
    Small(i128, i128),
    Big(BigRational),
}

impl Value {
    fn big(&self) -> BigRational {
        match self {
            Value::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            Value::Big(q) => q.clone(),
        }
    }

    fn compare(&self, other: &Value) -> Ordering {
        if let (Value::Small(a, b), Value::Small(c, d)) = (self, other) {
            // denominators are positive
            if let (Some(l), Some(r)) = (a.checked_mul(*d), c.checked_mul(*b)) {
                return l.cmp(&r);
            }
        }
        self.big().cmp(&other.big())
    }
}

struct ScaledPoly {
    exact: Poly,
    numer: Option<Vec<i128>>,
    denom: i128,
}

impl ScaledPoly {
    fn new(poly: &Poly) -> Self {
        let denom = poly
            .coeffs()
            .iter()
            .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let numer = poly
            .coeffs()
            .iter()
            .map(|c| {
                (c * BigRational::from_integer(denom.clone()))
                    .to_integer()
                    .to_i128()
            })
            .collect::<Option<Vec<_>>>();
        match denom.to_i128() {
            Some(d) => ScaledPoly {
                exact: poly.clone(),
                numer,
                denom: d,
            },
            None => ScaledPoly {
                exact: poly.clone(),
                numer: None,
                denom: 1,
            },
        }
    }

    fn eval(&self, n: u64) -> Value {
        if let Some(coeffs) = &self.numer {
            let x = n as i128;
            let horner = coeffs
                .iter()
                .rev()
                .try_fold(0i128, |acc, &c| acc.checked_mul(x)?.checked_add(c));
            if let Some(v) = horner {
                return Value::Small(v, self.denom);
            }
        }
        Value::Big(self.exact.eval_at(n))
    }
}

/// Pointwise evaluator for one element.
pub struct Evaluator<'a> {
    element: &'a Element,
    pieces: Vec<(&'a EpSet, ScaledPoly)>,
}

impl<'a> Evaluator<'a> {
    pub fn new(element: &'a Element) -> Self {
        let pieces = element
            .pieces()
            .iter()
            .map(|p| (&p.region, ScaledPoly::new(&p.poly)))
            .collect();
        Evaluator { element, pieces }
    }

    fn value(&self, n: u64) -> Option<Value> {
        if let Some(v) = self.element.exceptions().get(&n) {
            return Some(Value::Big(v.clone()));
        }
        self.pieces
            .iter()
            .find(|(region, _)| region.contains(n))
            .map(|(_, p)| p.eval(n))
    }

    /// `x(n)`, or `None` outside the carrier.
    pub fn eval(&self, n: u64) -> Option<BigRational> {
        self.value(n).map(|v| v.big())
    }

    /// Sign of `x(n) − y(n)`.
    pub fn compare(&self, other: &Evaluator<'_>, n: u64) -> Option<Ordering> {
        Some(self.value(n)?.compare(&other.value(n)?))
    }

    pub fn is_zero(&self, n: u64) -> Option<bool> {
        Some(self.value(n)?.compare(&Value::Small(0, 1)) == Ordering::Equal)
    }
}

/// Smallest horizon at which the window argument is sound for comparing
/// `x` with `y` under `filter`: past every threshold, exception and
/// polynomial root, plus two common periods.
pub fn required_horizon(x: &Element, y: &Element, filter: &Filter) -> u64 {
    let mut sets: Vec<&EpSet> = vec![x.carrier(), y.carrier(), filter.carrier(), filter.core()];
    sets.extend(x.pieces().iter().map(|p| &p.region));
    sets.extend(y.pieces().iter().map(|p| &p.region));
    let period = sets.iter().fold(1u64, |acc, s| acc.lcm(&s.period()));
    let mut threshold = sets.iter().map(|s| s.threshold()).max().unwrap_or(0);
    for k in x.exceptions().keys().chain(y.exceptions().keys()) {
        threshold = threshold.max(k + 1);
    }
    for px in x.pieces() {
        for py in y.pieces() {
            let bound = (&px.poly - &py.poly).root_bound();
            threshold = threshold.max(bound.to_u64().unwrap_or(u64::MAX / 4));
        }
    }
    threshold + 2 * period
}

fn common_period(x: &Element, y: &Element, filter: &Filter) -> u64 {
    let mut sets: Vec<&EpSet> = vec![x.carrier(), y.carrier(), filter.carrier(), filter.core()];
    sets.extend(x.pieces().iter().map(|p| &p.region));
    sets.extend(y.pieces().iter().map(|p| &p.region));
    sets.iter().fold(1u64, |acc, s| acc.lcm(&s.period()))
}

/// Decides `{ λ ∈ Λ : pred(λ) } ∈ F` by evaluation on `[0, horizon)`: the
/// set is a member iff no core index in the last full period window fails
/// the predicate.
fn decide(
    x: &Element,
    y: &Element,
    filter: &Filter,
    horizon: u64,
    pred: impl Fn(Ordering) -> bool,
) -> Result<bool, OracleError> {
    if x.carrier() != filter.carrier() || y.carrier() != filter.carrier() {
        return Err(OracleError::CarrierMismatch);
    }
    let required = required_horizon(x, y, filter);
    if horizon < required {
        return Err(OracleError::HorizonTooSmall { required, horizon });
    }
    let period = common_period(x, y, filter);
    let ex = Evaluator::new(x);
    let ey = Evaluator::new(y);
    let core = filter.core();
    for n in horizon - period..horizon {
        if !core.contains(n) {
            continue;
        }
        let ord = ex.compare(&ey, n).ok_or(OracleError::CarrierMismatch)?;
        if !pred(ord) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `x + I_F = y + I_F`, decided pointwise.
pub fn brute_force_coset_eq(
    x: &Element,
    y: &Element,
    filter: &Filter,
    horizon: u64,
) -> Result<bool, OracleError> {
    decide(x, y, filter, horizon, |o| o == Ordering::Equal)
}

/// `x + I_F ≤ y + I_F`, decided pointwise.
pub fn brute_force_leq(
    x: &Element,
    y: &Element,
    filter: &Filter,
    horizon: u64,
) -> Result<bool, OracleError> {
    decide(x, y, filter, horizon, |o| o != Ordering::Greater)
}

/// Indices in `[0, horizon)` of the carrier where `x` vanishes.
pub fn brute_force_zero_set(x: &Element, horizon: u64) -> Vec<u64> {
    let ex = Evaluator::new(x);
    (0..horizon)
        .filter(|&n| ex.is_zero(n) == Some(true))
        .collect()
}

/// Indices in `[0, horizon)` of the carrier where `x ≤ y`.
pub fn brute_force_le_set(x: &Element, y: &Element, horizon: u64) -> Vec<u64> {
    let ex = Evaluator::new(x);
    let ey = Evaluator::new(y);
    (0..horizon)
        .filter(|&n| matches!(ex.compare(&ey, n), Some(Ordering::Less | Ordering::Equal)))
        .collect()
}

/// Members of `set` in `[0, horizon)`.
pub fn members_below(set: &EpSet, horizon: u64) -> Vec<u64> {
    set.iter().take_while(|&n| n < horizon).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat() -> EpSet {
        EpSet::naturals()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn trivial_equalities() {
        let f = Filter::frechet(&nat()).unwrap();
        let x = Element::identity(&nat())
            .unwrap()
            .with_exception(3, q(1))
            .unwrap();
        assert!(brute_force_coset_eq(&x, &x, &f, 1000).unwrap());
        let one = Element::one(&nat()).unwrap();
        let zero = Element::zero(&nat()).unwrap();
        assert!(!brute_force_coset_eq(&one, &zero, &f, 100).unwrap());
        assert!(brute_force_leq(&zero, &one, &f, 100).unwrap());
    }

    #[test]
    fn horizon_checks() {
        let f = Filter::generated(&nat(), vec![EpSet::ap(0, 4).unwrap()]).unwrap();
        let x = Element::polynomial(Poly::new(vec![q(-40), q(1)]), &nat()).unwrap();
        let zero = Element::zero(&nat()).unwrap();
        let required = required_horizon(&x, &zero, &f);
        assert!(required > 40);
        assert!(matches!(
            brute_force_coset_eq(&x, &zero, &f, required - 1),
            Err(OracleError::HorizonTooSmall { .. })
        ));
        assert!(!brute_force_coset_eq(&x, &zero, &f, required).unwrap());
    }

    #[test]
    fn evaluator_matches_exact() {
        let big = Poly::new(vec![q(1), q(0), q(0), q(i64::MAX)]);
        let x = Element::polynomial(big.clone(), &nat()).unwrap();
        let e = Evaluator::new(&x);
        for n in [0, 5, 1 << 20, 1 << 40] {
            assert_eq!(e.eval(n).unwrap(), big.eval_at(n));
        }
    }

    #[test]
    fn pointwise_sets() {
        let x = Element::polynomial(Poly::new(vec![q(-3), q(1)]), &nat()).unwrap();
        assert_eq!(brute_force_zero_set(&x, 100), vec![3]);
        let five = Element::constant(q(5), &nat()).unwrap();
        let id = Element::identity(&nat()).unwrap();
        assert_eq!(brute_force_le_set(&five, &id, 8), vec![5, 6, 7]);
    }
}
