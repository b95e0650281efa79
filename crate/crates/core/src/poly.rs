//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients are stored lowest degree first; the zero polynomial has no
/// coefficients and no degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    /// `c · l^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    /// The polynomial `l`.
    pub fn identity() -> Self {
        Poly::monomial(BigRational::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// The constant value, if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * at + c)
    }

    pub fn eval_at(&self, n: u64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(n)))
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::constant(BigRational::one()), |acc, _| &acc * self)
    }

    /// An integer `B ≥ 1` such that every real root lies strictly below `B`
    /// in absolute value, so the sign is constant on `[B, ∞)`. Based on the
    /// Cauchy bound `1 + max |aᵢ / aₙ|`. Zero and constant polynomials
    /// return 1.
    pub fn root_bound(&self) -> BigInt {
        let Some(lead) = self.leading() else {
            return BigInt::one();
        };
        let max_ratio = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (c / lead).abs())
            .max()
            .unwrap_or_else(BigRational::zero);
        max_ratio.floor().to_integer() + BigInt::from(2)
    }

    /// The natural numbers at which a nonzero polynomial vanishes, in
    /// increasing order. Returns an empty list for the zero polynomial.
    pub fn natural_roots(&self) -> Vec<u64> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let sturm = Sturm::new(self);
        let end = self.root_bound() + 1;
        let mut roots = Vec::new();
        sturm.scan(&BigInt::zero(), &end, &mut |a, b| {
            // root-free runs have no zeros; only explicit points can vanish
            if b - a == BigInt::one() && self.eval(&BigRational::from_integer(a.clone())).is_zero()
            {
                roots.extend(a.to_u64());
            }
        });
        roots
    }

    /// The least `t ≥ 0` such that the polynomial has no real root in
    /// `[t, ∞)`, so every `n ≥ t` has the sign of the leading coefficient.
    pub fn sign_stable_from(&self) -> BigInt {
        if self.degree().unwrap_or(0) == 0 {
            return BigInt::zero();
        }
        let sturm = Sturm::new(self);
        let no_root_from = |t: &BigInt| {
            let x = sturm.off_root(t, false);
            sturm.variations(&x) == sturm.variations_at_infinity()
        };
        let (mut lo, mut hi) = (BigInt::zero(), self.root_bound() + 1);
        while lo < hi {
            let mid: BigInt = (&lo + &hi) / 2;
            if no_root_from(&mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo
    }

    /// `{ n < end : p(n) ≥ 0 }` in increasing order.
    pub fn nonneg_points_below(&self, end: u64) -> Vec<u64> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            if !self.leading().is_some_and(Signed::is_negative) {
                out.extend(0..end);
            }
            return out;
        }
        let sturm = Sturm::new(self);
        sturm.scan(&BigInt::zero(), &BigInt::from(end), &mut |a, b| {
            let at = BigRational::from_integer(a.clone());
            if !self.eval(&at).is_negative() {
                let (a, b) = (
                    a.to_u64().expect("below end"),
                    b.to_u64().expect("below end"),
                );
                out.extend(a..b);
            }
        });
        out
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Remainder of division by a nonzero polynomial.
    pub fn rem(&self, divisor: &Poly) -> Poly {
        let d = divisor.degree().expect("nonzero divisor");
        let lead = divisor.leading().expect("nonzero divisor");
        let mut r = self.coeffs.clone();
        while r.len() > d {
            let c = r.last().expect("nonempty") / lead;
            let shift = r.len() - 1 - d;
            for (i, b) in divisor.coeffs.iter().enumerate() {
                r[shift + i] -= &c * b;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    /// The same polynomial scaled by the least common denominator, as
    /// integer coefficients.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        let denom = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        self.coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(denom.clone())).to_integer())
            .collect()
    }
}

/// Sturm sequence of a polynomial of degree ≥ 1: counts distinct real
/// roots between two points that are not roots.
struct Sturm {
    chain: Vec<Poly>,
}

/// Intervals shorter than this are split into single points.
const SCAN_LEAF: u64 = 8;

impl Sturm {
    fn new(p: &Poly) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            let r = -&chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        Sturm { chain }
    }

    fn count_changes(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0;
        let mut changes = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    fn sign(q: &BigRational) -> i8 {
        if q.is_positive() {
            1
        } else if q.is_negative() {
            -1
        } else {
            0
        }
    }

    fn variations(&self, x: &BigRational) -> usize {
        Self::count_changes(self.chain.iter().map(|p| Self::sign(&p.eval(x))))
    }

    fn variations_at_infinity(&self) -> usize {
        Self::count_changes(
            self.chain
                .iter()
                .map(|p| Self::sign(p.leading().expect("nonzero"))),
        )
    }

    /// A point within half a unit of `t`, below it or above it, where the
    /// polynomial does not vanish.
    fn off_root(&self, t: &BigInt, above: bool) -> BigRational {
        let t = BigRational::from_integer(t.clone());
        (2..)
            .map(|k| {
                let delta = BigRational::new(BigInt::one(), BigInt::from(k));
                if above {
                    &t + delta
                } else {
                    &t - delta
                }
            })
            .find(|x| !self.chain[0].eval(x).is_zero())
            .expect("finitely many roots")
    }

    /// Covers `[a, b)` with runs `[a', b')` on which the polynomial has no
    /// root (sign constant) and single points.
    fn scan(&self, a: &BigInt, b: &BigInt, visit: &mut impl FnMut(&BigInt, &BigInt)) {
        if a >= b {
            return;
        }
        let last = b - 1;
        let lo = self.off_root(a, false);
        let hi = self.off_root(&last, true);
        if self.variations(&lo) == self.variations(&hi) {
            visit(a, b);
        } else if b - a <= BigInt::from(SCAN_LEAF) {
            let mut n = a.clone();
            while &n < b {
                let next = &n + 1;
                visit(&n, &next);
                n = next;
            }
        } else {
            let mid: BigInt = (a + b) / 2;
            self.scan(a, &mid, visit);
            self.scan(&mid, b, visit);
        }
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        Poly::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

/// Writes a rational in the program syntax: `3`, `-7/3`.
pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders in the program syntax with variable `l`, highest degree first,
/// e.g. `l^2 - 3/2*l + 1`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "l".to_string(),
                _ => format!("l^{k}"),
            };
            if k == 0 {
                write!(f, "{}", fmt_rational(&magnitude))?;
            } else if magnitude.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{}*{var}", fmt_rational(&magnitude))?;
            }
        }
        Ok(())
    }
}
