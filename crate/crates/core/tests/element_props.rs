use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use redpow::oracle::{brute_force_le_set, brute_force_zero_set, members_below};
use redpow::{dsl, sample, Element, EpSet, Poly};

const H: u64 = 150;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn carrier_and_pair(seed: u64) -> (EpSet, Element, Element) {
    let mut r = rng(seed);
    let c = sample::carrier(&mut r);
    let x = sample::element(&mut r, &c);
    let y = sample::element(&mut r, &c);
    (c, x, y)
}

fn int_poly(coeffs: &[i64]) -> Poly {
    Poly::new(
        coeffs
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ring_operations_are_pointwise(seed in any::<u64>(), k in 0u32..4) {
        let (c, x, y) = carrier_and_pair(seed);
        let sum = x.add(&y).unwrap();
        let diff = x.sub(&y).unwrap();
        let prod = x.mul(&y).unwrap();
        let power = x.pow(k);
        for n in members_below(&c, H) {
            let (a, b) = (x.eval(n).unwrap(), y.eval(n).unwrap());
            prop_assert_eq!(sum.eval(n).unwrap(), &a + &b);
            prop_assert_eq!(diff.eval(n).unwrap(), &a - &b);
            prop_assert_eq!(prod.eval(n).unwrap(), &a * &b);
            prop_assert_eq!(x.neg().eval(n).unwrap(), -a.clone());
            let mut p = BigRational::from_integer(1.into());
            for _ in 0..k {
                p *= &a;
            }
            prop_assert_eq!(power.eval(n).unwrap(), p);
        }
        let outside = c.complement().iter().next();
        if let Some(n) = outside {
            prop_assert!(x.eval(n).is_err());
        }
    }

    #[test]
    fn normal_form_identifies_equal_functions(seed in any::<u64>()) {
        let (c, x, y) = carrier_and_pair(seed);
        prop_assert_eq!(x.add(&y).unwrap().sub(&y).unwrap(), x.clone());
        prop_assert_eq!(x.sub(&x).unwrap(), Element::zero(&c).unwrap());
        prop_assert_eq!(x.mul(&Element::one(&c).unwrap()).unwrap(), x.clone());
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert!(x.same_function(&x.neg().neg()).unwrap());
        let same = members_below(&c, H).into_iter().all(|n| x.eval(n) == y.eval(n));
        if !same {
            prop_assert_ne!(&x, &y);
        }
    }

    #[test]
    fn zero_and_le_sets_match_evaluation(seed in any::<u64>()) {
        let (_, x, y) = carrier_and_pair(seed);
        prop_assert_eq!(members_below(&x.zero_set(), H), brute_force_zero_set(&x, H));
        prop_assert_eq!(members_below(&x.le_set(&y).unwrap(), H), brute_force_le_set(&x, &y, H));
    }

    #[test]
    fn restriction_and_extension(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = sample::carrier(&mut r);
        let sub = sample::infinite_subset(&mut r, &c);
        let x = sample::element(&mut r, &c);
        let small = x.restrict(&sub).unwrap();
        prop_assert_eq!(small.carrier(), &sub);
        let back = small.extend_by_zero(&c).unwrap();
        for n in members_below(&c, H) {
            let expected = if sub.contains(n) { x.eval(n).unwrap() } else { BigRational::zero() };
            prop_assert_eq!(back.eval(n).unwrap(), expected);
        }
    }

    #[test]
    fn display_parses_back(seed in any::<u64>()) {
        let (c, x, _) = carrier_and_pair(seed);
        let source = format!(
            "index C = {c}\nfilter F = frechet(C)\nalgebra A = F\nelem x on C = {x}\nquery eval x\n"
        );
        let program = dsl::parse(&source).unwrap();
        let report = dsl::evaluate(&program, 0);
        prop_assert!(!report.failed());
        let verdict = report.queries[0].results[0].verdict.as_str().unwrap().to_string();
        prop_assert_eq!(verdict, x.to_string());
    }

    #[test]
    fn sturm_roots_match_evaluation(coeffs in prop::collection::vec(-30i64..=30, 1..6), shift in 0i64..40) {
        // plant a root at `shift` half the time
        let base = int_poly(&coeffs);
        let p = if shift % 2 == 0 { &base * &int_poly(&[-shift, 1]) } else { base };
        prop_assume!(!p.is_zero());
        let bound = u64::try_from(&p.root_bound()).unwrap() + 2;
        let direct: Vec<u64> = (0..bound).filter(|&n| p.eval_at(n).is_zero()).collect();
        prop_assert_eq!(p.natural_roots(), direct);

        let t = p.sign_stable_from();
        prop_assert!(t >= BigInt::zero());
        let t = u64::try_from(&t).unwrap();
        let lead_positive = p.leading().unwrap().is_positive();
        for n in t..t + 30 {
            let v = p.eval_at(n);
            prop_assert!(!v.is_zero());
            prop_assert_eq!(v.is_positive(), lead_positive);
        }
        let nonneg: Vec<u64> = (0..t).filter(|&n| !p.eval_at(n).is_negative()).collect();
        prop_assert_eq!(p.nonneg_points_below(t), nonneg);
    }
}

#[test]
fn canonical_display() {
    let nat = EpSet::naturals();
    let x = Element::polynomial(int_poly(&[3, -4, 1]), &nat).unwrap();
    assert_eq!(x.to_string(), "l^2 - 4*l + 3");
    let odd = EpSet::ap(1, 2).unwrap();
    let bump = Element::indicator(&odd, &nat)
        .unwrap()
        .mul(&Element::polynomial(int_poly(&[1, 1]), &nat).unwrap())
        .unwrap()
        .with_exception(0, BigRational::from_integer(7.into()))
        .unwrap();
    assert_eq!(bump.eval(0).unwrap(), BigRational::from_integer(7.into()));
    assert_eq!(bump.eval(5).unwrap(), BigRational::from_integer(6.into()));
    assert_eq!(bump.eval(4).unwrap(), BigRational::zero());
    assert_eq!(
        bump.zero_set(),
        EpSet::ap(0, 2).unwrap().difference(&EpSet::finite([0]))
    );
}
