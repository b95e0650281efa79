//! Exhaustive check of the ideal/filter correspondence on `Λₙ = {0,…,n−1}`.
//!
//! Model assumptions: on a finite index set every filter is principal,
//! `{ J : J ⊇ I }` for a nonempty `I`; and since `Qⁿ` is a product of
//! fields every ideal is principal, generated by a vector vanishing exactly
//! on some `S ⊆ Λₙ` (proper when `S ≠ ∅`). Ideal membership is decided by
//! solving `x = g·a` coordinatewise, independently of zero sets.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::OracleError;

pub const MAX_MODEL_SIZE: usize = 12;
const RANDOM_VECTORS: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiniteModel {
    n: usize,
}

/// The principal filter of all supersets of `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFilter {
    pub base: u32,
    pub members: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub n: usize,
    pub filters: usize,
    pub ideals: usize,
    pub bijection: bool,
    pub filter_round_trips: usize,
    pub ideal_round_trips: usize,
    pub filter_pairs: usize,
    pub ideal_pairs: usize,
    pub strict_filter_inclusions: usize,
    pub strict_ideal_inclusions: usize,
    pub monotonicity_violations: usize,
}

impl CorrespondenceReport {
    pub fn passed(&self) -> bool {
        self.bijection
            && self.filter_round_trips == self.filters
            && self.ideal_round_trips == self.ideals
            && self.monotonicity_violations == 0
    }
}

impl fmt::Display for CorrespondenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "finite model n={}: {} filters, {} ideals",
            self.n, self.filters, self.ideals
        )?;
        writeln!(
            f,
            "bijection F -> I_F: {}",
            if self.bijection { "ok" } else { "FAILED" }
        )?;
        writeln!(
            f,
            "round trips F -> I_F -> F: {}/{}",
            self.filter_round_trips, self.filters
        )?;
        writeln!(
            f,
            "round trips I -> F_I -> I: {}/{}",
            self.ideal_round_trips, self.ideals
        )?;
        writeln!(
            f,
            "monotonicity: {} filter pairs ({} strict inclusions), {} ideal pairs ({} strict inclusions), {} violations",
            self.filter_pairs,
            self.strict_filter_inclusions,
            self.ideal_pairs,
            self.strict_ideal_inclusions,
            self.monotonicity_violations
        )?;
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

impl FiniteModel {
    pub fn new(n: usize) -> Result<Self, OracleError> {
        if n == 0 || n > MAX_MODEL_SIZE {
            return Err(OracleError::ModelSize(n));
        }
        Ok(FiniteModel { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn full(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    /// One principal filter per nonempty base set: `2ⁿ − 1` in total.
    pub fn enumerate_filters(&self) -> Vec<FiniteFilter> {
        (1..=self.full())
            .map(|base| FiniteFilter {
                base,
                members: (0..=self.full()).filter(|j| j & base == base).collect(),
            })
            .collect()
    }

    /// Generators of the proper ideals: for each nonempty `S`, the vector
    /// with `gᵢ = 0` on `S` and `gᵢ = i + 2` elsewhere.
    fn ideal_generators(&self) -> Vec<Vec<i64>> {
        (1..=self.full())
            .map(|s| {
                (0..self.n)
                    .map(|i| if s >> i & 1 == 1 { 0 } else { i as i64 + 2 })
                    .collect()
            })
            .collect()
    }

    /// `w_J` (zero exactly on `J`, distinct nonzero values elsewhere) for
    /// every `J`, followed by seeded random vectors with small entries.
    fn test_vectors(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = (0..=self.full())
            .map(|j| {
                (0..self.n)
                    .map(|i| if j >> i & 1 == 1 { 0 } else { i as i64 + 1 })
                    .collect()
            })
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(self.n as u64);
        out.extend(
            (0..RANDOM_VECTORS).map(|_| (0..self.n).map(|_| rng.random_range(-2..=2)).collect()),
        );
        out
    }

    fn zero_mask(v: &[i64]) -> u32 {
        v.iter()
            .enumerate()
            .filter(|(_, &x)| x == 0)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    /// `x ∈ ⟨g⟩` iff `x = g·a` has a solution: wherever `gᵢ ≠ 0` take
    /// `aᵢ = xᵢ / gᵢ`, wherever `gᵢ = 0` the equation forces `xᵢ = 0`.
    fn divides(g: &[i64], x: &[i64]) -> bool {
        g.iter().zip(x).all(|(&gi, &xi)| gi != 0 || xi == 0)
    }

    pub fn verify_correspondence(&self) -> CorrespondenceReport {
        let masks = 1usize << self.n;
        let filters = self.enumerate_filters();
        let generators = self.ideal_generators();
        let vectors = self.test_vectors();
        let zero_masks: Vec<u32> = vectors.iter().map(|v| Self::zero_mask(v)).collect();

        let filter_bits: Vec<Bits> = filters
            .iter()
            .map(|f| {
                let mut b = Bits::new(masks);
                f.members.iter().for_each(|&j| b.set(j as usize));
                b
            })
            .collect();
        // I_F as a membership signature over the test vectors: Z(x) ∈ F
        let ideal_of_filter = |fb: &Bits| {
            let mut b = Bits::new(vectors.len());
            for (k, &z) in zero_masks.iter().enumerate() {
                if fb.get(z as usize) {
                    b.set(k);
                }
            }
            b
        };
        // ideals by divisibility, independent of zero sets
        let ideal_bits: Vec<Bits> = generators
            .iter()
            .map(|g| {
                let mut b = Bits::new(vectors.len());
                for (k, v) in vectors.iter().enumerate() {
                    if Self::divides(g, v) {
                        b.set(k);
                    }
                }
                b
            })
            .collect();
        // F_I = { Z(x) : x ∈ I }, read off the w_J vectors
        let filter_of_ideal = |ib: &Bits| {
            let mut b = Bits::new(masks);
            for j in 0..masks {
                if ib.get(j) {
                    b.set(j);
                }
            }
            b
        };

        let ideal_index: HashMap<&Bits, usize> =
            ideal_bits.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let filter_index: HashMap<&Bits, usize> = filter_bits
            .iter()
            .enumerate()
            .map(|(i, b)| (b, i))
            .collect();

        let images: Vec<Bits> = filter_bits.iter().map(ideal_of_filter).collect();
        let mut hit = vec![false; ideal_bits.len()];
        let mut bijection = ideal_bits.len() == filter_bits.len();
        for image in &images {
            match ideal_index.get(image) {
                Some(&i) if !hit[i] => hit[i] = true,
                _ => bijection = false,
            }
        }

        let ideal_images: Vec<Bits> = ideal_bits.iter().map(filter_of_ideal).collect();
        let filter_round_trips = images
            .iter()
            .zip(&filter_bits)
            .filter(|(image, fb)| filter_of_ideal(image) == **fb)
            .count();
        let ideal_round_trips = ideal_bits
            .iter()
            .zip(&ideal_images)
            .filter(|(ib, f)| filter_index.contains_key(f) && ideal_of_filter(f) == **ib)
            .count();

        let mut violations = 0;
        let mut strict_filter_inclusions = 0;
        let mut strict_ideal_inclusions = 0;
        let count = filters.len();
        for a in 0..count {
            for b in a + 1..count {
                for (x, y) in [(a, b), (b, a)] {
                    if filter_bits[x].is_subset(&filter_bits[y]) {
                        strict_filter_inclusions += 1;
                        if !images[x].is_subset(&images[y]) {
                            violations += 1;
                        }
                    }
                    if ideal_bits[x].is_subset(&ideal_bits[y]) {
                        strict_ideal_inclusions += 1;
                        if !ideal_images[x].is_subset(&ideal_images[y]) {
                            violations += 1;
                        }
                    }
                }
            }
        }
        let pairs = count * count.saturating_sub(1) / 2;
        CorrespondenceReport {
            n: self.n,
            filters: filters.len(),
            ideals: generators.len(),
            bijection,
            filter_round_trips,
            ideal_round_trips,
            filter_pairs: pairs,
            ideal_pairs: pairs,
            strict_filter_inclusions,
            strict_ideal_inclusions,
            monotonicity_violations: violations,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_counts() {
        for (n, expected) in [(1, 1), (3, 7), (4, 15)] {
            let filters = FiniteModel::new(n).unwrap().enumerate_filters();
            assert_eq!(filters.len(), expected);
            // members of a principal filter on n points with base of size k: 2^(n-k)
            for f in &filters {
                assert_eq!(f.members.len(), 1 << (n - f.base.count_ones() as usize));
            }
        }
    }

    #[test]
    fn small_models_pass() {
        let r = FiniteModel::new(1).unwrap().verify_correspondence();
        assert!(r.passed());
        assert_eq!((r.filters, r.ideals, r.filter_pairs), (1, 1, 0));

        let r = FiniteModel::new(3).unwrap().verify_correspondence();
        assert!(r.passed(), "{r}");
        assert_eq!((r.filters, r.ideals, r.filter_pairs), (7, 7, 21));
        // nonempty A ⊊ B ⊆ {0,1,2}: 0 + 3·2 + 1·6
        assert_eq!(r.strict_filter_inclusions, 12);
        assert_eq!(r.strict_ideal_inclusions, 12);

        let r = FiniteModel::new(5).unwrap().verify_correspondence();
        assert!(r.passed());
        assert_eq!((r.filters, r.ideals), (31, 31));
    }

    #[test]
    fn model_bounds() {
        assert_eq!(FiniteModel::new(0), Err(OracleError::ModelSize(0)));
        assert_eq!(FiniteModel::new(13), Err(OracleError::ModelSize(13)));
    }
}
