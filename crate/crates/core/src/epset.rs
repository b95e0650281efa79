//! Eventually-periodic subsets of the naturals.
//!
//! An [`EpSet`] denotes `head ∪ { n ≥ threshold : n mod period ∈ residues }`
//! and is always kept in canonical form: the period is the minimal period of
//! the tail and the threshold is the smallest one that still describes the
//! set. Structural equality is therefore semantic equality.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EpSetError {
    #[error("period must be positive")]
    ZeroPeriod,
    #[error("residue {residue} is not below the period {period}")]
    ResidueOutOfRange { residue: u64, period: u64 },
    #[error("head member {member} is not below the threshold {threshold}")]
    HeadOutOfRange { member: u64, threshold: u64 },
    #[error("requested {requested} elements but the set only has {available}")]
    InsufficientElements { requested: usize, available: usize },
}

/// An eventually-periodic subset of ℕ in canonical form.
///
/// The head is not stored member by member: `flips` holds the indices below
/// the threshold whose membership differs from the tail pattern, so sets
/// such as `ℕ ∖ {10¹²}` stay small.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpSet {
    threshold: u64,
    period: u64,
    residues: BTreeSet<u64>,
    flips: Vec<u64>,
}

impl EpSet {
    /// Builds a set from raw parts, validating ranges and canonicalizing.
    pub fn from_parts(
        threshold: u64,
        period: u64,
        residues: impl IntoIterator<Item = u64>,
        head: impl IntoIterator<Item = u64>,
    ) -> Result<Self, EpSetError> {
        if period == 0 {
            return Err(EpSetError::ZeroPeriod);
        }
        let residues: BTreeSet<u64> = residues.into_iter().collect();
        let head: BTreeSet<u64> = head.into_iter().collect();
        if let Some(&residue) = residues.iter().find(|&&r| r >= period) {
            return Err(EpSetError::ResidueOutOfRange { residue, period });
        }
        if let Some(&member) = head.iter().find(|&&h| h >= threshold) {
            return Err(EpSetError::HeadOutOfRange { member, threshold });
        }
        let flips = (0..threshold)
            .filter(|n| head.contains(n) != residues.contains(&(n % period)))
            .collect();
        Ok(Self::raw(period, residues, flips))
    }

    /// `flips` must be sorted and free of duplicates.
    fn raw(period: u64, residues: BTreeSet<u64>, flips: Vec<u64>) -> Self {
        EpSet {
            threshold: 0,
            period,
            residues,
            flips,
        }
        .canonicalize()
    }

    pub fn empty() -> Self {
        EpSet {
            threshold: 0,
            period: 1,
            residues: BTreeSet::new(),
            flips: Vec::new(),
        }
    }

    pub fn naturals() -> Self {
        EpSet {
            threshold: 0,
            period: 1,
            residues: BTreeSet::from([0]),
            flips: Vec::new(),
        }
    }

    /// The arithmetic progression `{ n : n ≡ residue (mod period) }`.
    pub fn ap(residue: u64, period: u64) -> Result<Self, EpSetError> {
        if period == 0 {
            return Err(EpSetError::ZeroPeriod);
        }
        Ok(Self::raw(
            period,
            BTreeSet::from([residue % period]),
            Vec::new(),
        ))
    }

    pub fn finite(members: impl IntoIterator<Item = u64>) -> Self {
        let mut members: Vec<u64> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Self::raw(1, BTreeSet::new(), members)
    }

    /// `{ start, …, end − 1 }`.
    pub fn range(start: u64, end: u64) -> Self {
        Self::finite(start..end)
    }

    /// `{ n : n ≥ start }`.
    pub fn from(start: u64) -> Self {
        Self::raw(1, BTreeSet::from([0]), (0..start).collect())
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn residues(&self) -> &BTreeSet<u64> {
        &self.residues
    }

    /// Members below the threshold. Built on demand.
    pub fn head(&self) -> BTreeSet<u64> {
        (0..self.threshold).filter(|&n| self.contains(n)).collect()
    }

    fn in_tail_pattern(&self, n: u64) -> bool {
        self.residues.contains(&(n % self.period))
    }

    pub fn contains(&self, n: u64) -> bool {
        self.in_tail_pattern(n) != self.flips.binary_search(&n).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.flips.is_empty() && self.residues.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.residues.is_empty()
    }

    /// Number of members, or `None` when the set is infinite.
    pub fn cardinality(&self) -> Option<usize> {
        self.is_finite().then_some(self.flips.len())
    }

    pub fn intersect(&self, other: &EpSet) -> EpSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn union(&self, other: &EpSet) -> EpSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn difference(&self, other: &EpSet) -> EpSet {
        self.combine(other, |a, b| a && !b)
    }

    /// Complement with respect to ℕ.
    pub fn complement(&self) -> EpSet {
        let residues = (0..self.period).filter(|r| !self.residues.contains(r));
        Self::raw(self.period, residues.collect(), self.flips.clone())
    }

    pub fn is_subset(&self, other: &EpSet) -> bool {
        self.difference(other).is_empty()
    }

    /// True when the two sets differ in finitely many points.
    pub fn finitely_differs(&self, other: &EpSet) -> bool {
        self.period == other.period && self.residues == other.residues
    }

    /// The purely periodic set `{ n : n mod period ∈ residues }`, i.e. the
    /// tail extended down to zero. Sets that differ finitely share it.
    pub fn periodic_closure(&self) -> EpSet {
        Self::raw(self.period, self.residues.clone(), Vec::new())
    }

    fn combine(&self, other: &EpSet, op: impl Fn(bool, bool) -> bool) -> EpSet {
        let period = self.period.lcm(&other.period);
        let residues: BTreeSet<u64> = (0..period)
            .filter(|&r| op(self.in_tail_pattern(r), other.in_tail_pattern(r)))
            .collect();
        // away from both flip sets the result follows the combined pattern
        let flips = merge(&self.flips, &other.flips)
            .filter(|&(n, flip_a, flip_b)| {
                let a = self.in_tail_pattern(n) != flip_a;
                let b = other.in_tail_pattern(n) != flip_b;
                op(a, b) != residues.contains(&(n % period))
            })
            .map(|(n, _, _)| n)
            .collect();
        Self::raw(period, residues, flips)
    }

    fn canonicalize(mut self) -> Self {
        let p = self.period;
        let mask: Vec<bool> = (0..p).map(|r| self.residues.contains(&r)).collect();
        let period = divisors(p)
            .into_iter()
            .find(|&d| (0..p).all(|r| mask[r as usize] == mask[(r % d) as usize]))
            .unwrap_or(p);
        if period != p {
            self.residues = (0..period).filter(|&r| mask[r as usize]).collect();
            self.period = period;
        }
        self.threshold = self.flips.last().map_or(0, |m| m + 1);
        self
    }

    /// Members in increasing order. Infinite for infinite sets.
    pub fn iter(&self) -> Iter<'_> {
        Iter { set: self, next: 0 }
    }

    /// The `count` smallest members in increasing order.
    pub fn enumerate(&self, count: usize) -> Result<Vec<u64>, EpSetError> {
        if let Some(available) = self.cardinality() {
            if count > available {
                return Err(EpSetError::InsufficientElements {
                    requested: count,
                    available,
                });
            }
        }
        Ok(self.iter().take(count).collect())
    }

    /// Splits the set by the parity of each member's position in increasing
    /// order: the first, third, fifth, … members go left, the rest right.
    /// Both halves of an infinite set are infinite.
    pub fn split_alternate(&self) -> (EpSet, EpSet) {
        let threshold = self.threshold;
        let period = 2 * self.period;
        let mut even = (BTreeSet::new(), BTreeSet::new());
        let mut odd = (BTreeSet::new(), BTreeSet::new());
        let members = self.iter().take_while(|&n| n < threshold + period);
        for (position, n) in members.enumerate() {
            let side = if position % 2 == 0 {
                &mut even
            } else {
                &mut odd
            };
            if n < threshold {
                side.0.insert(n);
            } else {
                side.1.insert(n % period);
            }
        }
        let half = |(head, residues)| {
            Self::from_parts(threshold, period, residues, head).expect("parts are in range")
        };
        (half(even), half(odd))
    }
}

/// Sorted union of two sorted lists, with the side(s) each value came from.
fn merge<'a>(a: &'a [u64], b: &'a [u64]) -> impl Iterator<Item = (u64, bool, bool)> + 'a {
    let (mut i, mut j) = (0, 0);
    std::iter::from_fn(move || {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => return None,
        };
        let in_a = a.get(i) == Some(&next);
        let in_b = b.get(j) == Some(&next);
        i += usize::from(in_a);
        j += usize::from(in_b);
        Some((next, in_a, in_b))
    })
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub struct Iter<'a> {
    set: &'a EpSet,
    next: u64,
}

impl Iterator for Iter<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.set.is_finite() {
            let flips = &self.set.flips;
            let n = *flips.get(flips.partition_point(|&m| m < self.next))?;
            self.next = n + 1;
            return Some(n);
        }
        loop {
            let n = self.next;
            self.next += 1;
            if self.set.contains(n) {
                return Some(n);
            }
        }
    }
}

fn list(items: &[u64], limit: usize) -> String {
    let shown: Vec<String> = if items.len() > limit {
        let mut head: Vec<String> = items[..limit - 1].iter().map(u64::to_string).collect();
        head.push("...".to_string());
        head.extend(items.last().map(u64::to_string));
        head
    } else {
        items.iter().map(u64::to_string).collect()
    };
    format!("{{{}}}", shown.join(","))
}

impl EpSet {
    /// The display form with every explicit list cut to its first
    /// `max_items − 1` members, `...` and the last member. Not parseable
    /// once something was cut.
    pub fn abbreviated(&self, max_items: usize) -> String {
        self.render(max_items.max(2))
    }

    fn render(&self, limit: usize) -> String {
        if self.is_finite() {
            return list(&self.flips, limit);
        }
        let tail_members: Vec<String> = if self.residues.len() as u64 == self.period {
            vec!["nat".to_string()]
        } else {
            self.residues
                .iter()
                .map(|r| format!("AP({r},{})", self.period))
                .collect()
        };
        let (excluded, extra): (Vec<u64>, Vec<u64>) =
            self.flips.iter().partition(|&&n| self.in_tail_pattern(n));
        let mut tail = tail_members.join(" | ");
        if !excluded.is_empty() {
            if tail_members.len() > 1 {
                tail = format!("({tail})");
            }
            tail = format!("{tail} \\ {}", list(&excluded, limit));
        }
        if extra.is_empty() {
            tail
        } else if tail_members.len() > 1 || !excluded.is_empty() {
            format!("{} | ({tail})", list(&extra, limit))
        } else {
            format!("{} | {tail}", list(&extra, limit))
        }
    }
}

/// Renders in the set-expression syntax of the program language, e.g.
/// `AP(0,2)`, `{1,3,7}`, `nat \ {0,1,2}` or `{1} | (AP(0,3) \ {0})`.
impl fmt::Display for EpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(usize::MAX))
    }
}
