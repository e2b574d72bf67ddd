//! Signed permutations, reversals, scenarios and common intervals.
//!
//! Positions are 1-based throughout, matching the usual one-line notation
//! `[1 -3 -2 5 4 6]`. Negative entries model markers on the reverse strand.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{1..n}` where every element carries a sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedPermutation {
    values: Vec<i32>,
}

/// A contiguous range of positions, 1-based and inclusive on both ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Self {
        assert!(lo >= 1 && lo <= hi);
        Interval { lo, hi }
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Nested or disjoint as position ranges.
    pub fn commutes_with(&self, other: &Interval) -> bool {
        let contains = |a: &Interval, b: &Interval| a.lo <= b.lo && b.hi <= a.hi;
        contains(self, other) || contains(other, self) || self.hi < other.lo || other.hi < self.lo
    }
}

/// A reversal of the positions `lo..=hi` at the time it is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Reversal {
    pub lo: usize,
    pub hi: usize,
}

impl Reversal {
    pub fn new(lo: usize, hi: usize) -> Self {
        assert!(lo >= 1 && lo <= hi);
        Reversal { lo, hi }
    }

    /// Number of elements reversed.
    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// An ordered sequence of reversals.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub steps: Vec<Reversal>,
}

impl Scenario {
    pub fn new(steps: Vec<Reversal>) -> Self {
        Scenario { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Is the permutation sorted, anti-sorted, or neither?
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SortClass {
    Identity,
    ReversedIdentity,
    Neither,
}

/// A common interval reported with its position range and value range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CommonInterval {
    /// Positions occupied in the permutation.
    pub span: Interval,
    /// Smallest absolute value in the interval.
    pub min: u32,
    /// Largest absolute value in the interval.
    pub max: u32,
}

impl CommonInterval {
    pub fn values(&self) -> std::ops::RangeInclusive<u32> {
        self.min..=self.max
    }

    pub fn len(&self) -> usize {
        (self.max - self.min + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Value-set commutation: nested or disjoint as sets of values.
    pub fn commutes_with(&self, other: &CommonInterval) -> bool {
        sets_commute((self.min, self.max), (other.min, other.max))
    }
}

/// Nested-or-disjoint test for two integer ranges viewed as sets.
pub fn sets_commute(a: (u32, u32), b: (u32, u32)) -> bool {
    let contains = |x: (u32, u32), y: (u32, u32)| x.0 <= y.0 && y.1 <= x.1;
    contains(a, b) || contains(b, a) || a.1 < b.0 || b.1 < a.0
}

/// Nested-or-disjoint test for two arbitrary value sets.
pub fn intervals_commute(a: &[u32], b: &[u32]) -> bool {
    use std::collections::BTreeSet;
    let sa: BTreeSet<u32> = a.iter().copied().collect();
    let sb: BTreeSet<u32> = b.iter().copied().collect();
    sa.is_subset(&sb) || sb.is_subset(&sa) || sa.intersection(&sb).next().is_none()
}

impl SignedPermutation {
    /// Builds a signed permutation, checking that the absolute values are
    /// exactly `{1..n}` with no repeats and no zero.
    pub fn new(values: Vec<i32>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySize);
        }
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 {
                return Err(Error::Parse("element 0 is not allowed".into()));
            }
            let a = v.unsigned_abs() as usize;
            if a > n {
                return Err(Error::Parse(format!(
                    "element {v} out of range for size {n}"
                )));
            }
            if seen[a] {
                return Err(Error::Parse(format!("duplicate element {a}")));
            }
            seen[a] = true;
        }
        Ok(SignedPermutation { values })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            values: (1..=n as i32).collect(),
        }
    }

    pub fn reversed_identity(n: usize) -> Self {
        SignedPermutation {
            values: (1..=n as i32).rev().map(|v| -v).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    /// Element at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> i32 {
        self.values[pos - 1]
    }

    /// The full reversal of the permutation.
    pub fn mirrored(&self) -> Self {
        SignedPermutation {
            values: self.values.iter().rev().map(|v| -v).collect(),
        }
    }

    /// Applies one reversal: the range is order-reversed and all signs flip.
    pub fn apply_reversal(&self, r: Reversal) -> Result<Self> {
        let n = self.size();
        if r.lo < 1 || r.hi > n || r.lo > r.hi {
            return Err(Error::RangeOutOfBounds {
                lo: r.lo,
                hi: r.hi,
                n,
            });
        }
        let mut values = self.values.clone();
        values[r.lo - 1..r.hi].reverse();
        for v in &mut values[r.lo - 1..r.hi] {
            *v = -*v;
        }
        Ok(SignedPermutation { values })
    }

    /// Left fold of `apply_reversal` over the scenario steps.
    pub fn apply_scenario(&self, s: &Scenario) -> Result<Self> {
        let mut cur = self.clone();
        for &r in &s.steps {
            cur = cur.apply_reversal(r)?;
        }
        Ok(cur)
    }

    pub fn classify_sorted(&self) -> SortClass {
        let n = self.size() as i32;
        if self.values.iter().enumerate().all(|(i, &v)| v == i as i32 + 1) {
            SortClass::Identity
        } else if self
            .values
            .iter()
            .enumerate()
            .all(|(i, &v)| v == -(n - i as i32))
        {
            SortClass::ReversedIdentity
        } else {
            SortClass::Neither
        }
    }

    /// The unsigned permutation of absolute values.
    pub fn unsigned(&self) -> Vec<u32> {
        self.values.iter().map(|v| v.unsigned_abs()).collect()
    }

    /// All common intervals, singletons and the full interval included.
    ///
    /// A window `lo..=hi` is common exactly when `max - min == hi - lo` over
    /// the absolute values it contains, so a quadratic scan with running
    /// min/max suffices.
    pub fn common_intervals(&self) -> Vec<CommonInterval> {
        common_intervals_unsigned(&self.unsigned())
    }

    /// Uniform over all `2^n n!` signed permutations, deterministic per seed.
    pub fn random(n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySize);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(Self::random_with(n, &mut rng))
    }

    pub fn random_with<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut values: Vec<i32> = (1..=n as i32).collect();
        values.shuffle(rng);
        for v in &mut values {
            if rng.gen::<bool>() {
                *v = -*v;
            }
        }
        SignedPermutation { values }
    }
}

/// Common intervals of an unsigned permutation.
pub fn common_intervals_unsigned(perm: &[u32]) -> Vec<CommonInterval> {
    let n = perm.len();
    let mut out = Vec::new();
    for lo in 1..=n {
        let mut min = perm[lo - 1];
        let mut max = perm[lo - 1];
        for hi in lo..=n {
            let v = perm[hi - 1];
            min = min.min(v);
            max = max.max(v);
            if (max - min) as usize == hi - lo {
                out.push(CommonInterval {
                    span: Interval::new(lo, hi),
                    min,
                    max,
                });
            }
        }
    }
    out
}

/// True when the only common intervals are the `n` singletons and `{1..n}`.
pub fn is_simple(perm: &[u32]) -> bool {
    let n = perm.len();
    common_intervals_unsigned(perm).len() == n + 1
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values: Vec<i32> = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i32>()
                    .map_err(|e| Error::Parse(format!("bad token {tok:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        SignedPermutation::new(values)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.values {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}
