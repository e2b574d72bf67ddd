//! Commuting (separable) signed permutations.
//!
//! A permutation is commuting exactly when its strong interval tree has no
//! prime vertex. Such a permutation has a unique perfect reversal set: one
//! reversal per vertex whose sign differs from its parent's. This module
//! detects the class, produces that scenario, profiles it, and samples the
//! class uniformly through the tree bijection.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::analytics::schroder_numbers;
use crate::error::{Error, Result};
use crate::perm::{Reversal, Scenario, SignedPermutation, SortClass};
use crate::sit::{
    build_sit, count_internal_vertices, count_prime_vertices, pathlength, Sign, SitTree,
    SitVertex, VertexKind,
};

/// True iff the strong interval tree of `sigma` has no prime vertex.
pub fn is_commuting(sigma: &SignedPermutation) -> bool {
    count_prime_vertices(&build_sit(sigma)) == 0
}

/// Vertices whose sign differs from their parent's, as value ranges.
/// The root is compared to nothing and never listed.
fn mismatch_ranges(t: &SitTree) -> Vec<(u32, u32)> {
    fn sign_of(v: &SitVertex) -> Sign {
        match v.kind {
            VertexKind::Leaf => v.leaf_sign.unwrap(),
            VertexKind::LinearIncreasing => Sign::Plus,
            VertexKind::LinearDecreasing => Sign::Minus,
            VertexKind::Prime => unreachable!("commuting tree has no prime vertex"),
        }
    }
    fn rec(v: &SitVertex, out: &mut Vec<(u32, u32)>) {
        let s = sign_of(v);
        for c in &v.children {
            if sign_of(c) != s {
                out.push((c.vmin, c.vmax));
            }
            rec(c, out);
        }
    }
    let mut out = Vec::new();
    rec(&t.root, &mut out);
    out
}

/// The unique perfect reversal set of a commuting permutation, applied in
/// decreasing size order (ties by smallest value). All the intervals pairwise
/// commute, so any order is perfect; this one is the reproducibility
/// convention.
pub fn commuting_scenario(sigma: &SignedPermutation) -> Result<Scenario> {
    let tree = build_sit(sigma);
    let primes = count_prime_vertices(&tree);
    if primes > 0 {
        return Err(Error::NotCommuting { primes });
    }
    let mut ranges = mismatch_ranges(&tree);
    ranges.sort_by_key(|&(lo, hi)| (std::cmp::Reverse(hi - lo), lo));
    let mut working = sigma.clone();
    let mut steps = Vec::with_capacity(ranges.len());
    for (vlo, vhi) in ranges {
        // the value range stays contiguous under the outer reversals already
        // applied; locate it in the working permutation
        let lo = working
            .values()
            .iter()
            .position(|v| (vlo..=vhi).contains(&v.unsigned_abs()))
            .expect("value range present")
            + 1;
        let hi = lo + (vhi - vlo) as usize;
        let r = Reversal::new(lo, hi);
        working = working.apply_reversal(r)?;
        steps.push(r);
    }
    debug_assert_ne!(working.classify_sorted(), SortClass::Neither);
    Ok(Scenario::new(steps))
}

/// Statistics of the unique scenario of a commuting permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversalProfile {
    pub count: usize,
    /// One entry per reversal, decreasing.
    pub lengths: Vec<usize>,
    pub length_one_count: usize,
    pub internal_vertices: usize,
    /// Sum of subtree sizes over non-root vertices.
    pub pathlength: u64,
}

pub fn reversal_profile(sigma: &SignedPermutation) -> Result<ReversalProfile> {
    let tree = build_sit(sigma);
    let primes = count_prime_vertices(&tree);
    if primes > 0 {
        return Err(Error::NotCommuting { primes });
    }
    let mut lengths: Vec<usize> = mismatch_ranges(&tree)
        .iter()
        .map(|&(lo, hi)| (hi - lo) as usize + 1)
        .collect();
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    Ok(ReversalProfile {
        count: lengths.len(),
        length_one_count: lengths.iter().filter(|&&l| l == 1).count(),
        internal_vertices: count_internal_vertices(&tree),
        pathlength: pathlength(&tree),
        lengths,
    })
}

/// Uniform sampler for commuting permutations of a fixed size.
///
/// A commuting permutation corresponds to a plane tree with every internal
/// vertex of degree at least two, a free root direction, directions
/// alternating down the tree, and a free sign per leaf. Tree shapes are drawn
/// uniformly by the recursive method over exact subtree counts.
pub struct CommutingSampler {
    n: usize,
    /// `s[m]` counts the tree shapes with `m` leaves; `s[0]` unused.
    s: Vec<BigUint>,
    /// `seq[r]` counts nonempty shape sequences with `r` leaves total;
    /// `seq[0] = 1` for the empty tail.
    seq: Vec<BigUint>,
}

impl CommutingSampler {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySize);
        }
        let mut s = schroder_numbers(n);
        s.insert(0, BigUint::zero());
        let mut seq = vec![BigUint::one(); n + 1];
        for r in 2..=n {
            seq[r] = &s[r] * 2u32;
        }
        Ok(CommutingSampler { n, s, seq })
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> SignedPermutation {
        let mut out = vec![0i32; self.n];
        self.fill(1, 1, self.n, None, rng, &mut out);
        SignedPermutation::new(out).expect("sampler output is a permutation")
    }

    pub fn sample_seeded(&self, seed: u64) -> SignedPermutation {
        self.sample(&mut ChaCha8Rng::seed_from_u64(seed))
    }

    /// Writes the values of a subtree with `m` leaves occupying positions
    /// `pos..pos+m` and values `val..val+m`.
    fn fill<R: Rng>(
        &self,
        pos: usize,
        val: u32,
        m: usize,
        parent_increasing: Option<bool>,
        rng: &mut R,
        out: &mut [i32],
    ) {
        if m == 1 {
            out[pos - 1] = if rng.gen() { val as i32 } else { -(val as i32) };
            return;
        }
        let increasing = match parent_increasing {
            None => rng.gen(),
            Some(d) => !d,
        };
        let sizes = self.child_sizes(m, rng);
        let mut p = pos;
        let mut above = 0usize; // leaves in children left of the current one
        let mut below = m; // leaves in the current child and to its right
        for &sz in &sizes {
            below -= sz;
            let v = if increasing {
                val + above as u32
            } else {
                val + below as u32
            };
            self.fill(p, v, sz, Some(increasing), rng, out);
            p += sz;
            above += sz;
        }
    }

    /// Child leaf counts for an internal vertex with `m` leaves, drawn with
    /// probability proportional to the number of shapes they admit.
    fn child_sizes<R: Rng>(&self, m: usize, rng: &mut R) -> Vec<usize> {
        debug_assert!(m >= 2);
        // first child: m-leaf shapes split as (first subtree of a leaves,
        // nonempty tail of m-a leaves)
        let a = self.weighted(rng, &self.s[m], 1, m - 1, |c| &self.s[c] * &self.seq[m - c]);
        let mut sizes = vec![a];
        let mut r = m - a;
        while r > 0 {
            let b = self.weighted(rng, &self.seq[r], 1, r, |c| &self.s[c] * &self.seq[r - c]);
            sizes.push(b);
            r -= b;
        }
        sizes
    }

    fn weighted<R: Rng>(
        &self,
        rng: &mut R,
        total: &BigUint,
        lo: usize,
        hi: usize,
        weight: impl Fn(usize) -> BigUint,
    ) -> usize {
        let x = rng.gen_biguint_below(total);
        let mut acc = BigUint::zero();
        for c in lo..=hi {
            acc += weight(c);
            if x < acc {
                return c;
            }
        }
        unreachable!("weights sum to the sampling bound")
    }
}

/// One uniform commuting permutation; prefer [`CommutingSampler`] for bulk
/// draws so the count tables are built once.
pub fn random_commuting_permutation(n: usize, seed: u64) -> Result<SignedPermutation> {
    Ok(CommutingSampler::new(n)?.sample_seeded(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perfect::{brute_force_perfect_oracle, parsimonious_perfect_scenario, step_contents};
    use std::collections::HashMap;

    fn p(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn detection_examples() {
        assert!(is_commuting(&p("1 -3 -2 5 4 6")));
        assert!(!is_commuting(&p("2 4 1 3")));
        assert!(is_commuting(&SignedPermutation::identity(9)));
        assert!(is_commuting(&p("-2 -1")));
    }

    #[test]
    fn example_scenario_contents_in_order() {
        let sigma = p("1 -3 -2 5 4 6");
        let s = commuting_scenario(&sigma).unwrap();
        let contents = step_contents(&sigma, &s).unwrap();
        assert_eq!(
            contents,
            vec![vec![2, 3], vec![4, 5], vec![4], vec![5]]
        );
        assert_eq!(
            sigma.apply_scenario(&s).unwrap().classify_sorted(),
            SortClass::Identity
        );
    }

    #[test]
    fn edge_scenarios() {
        assert!(commuting_scenario(&SignedPermutation::identity(5))
            .unwrap()
            .is_empty());
        let s = commuting_scenario(&p("-2 -1")).unwrap();
        assert!(s.is_empty());
        assert_eq!(
            p("-2 -1").classify_sorted(),
            SortClass::ReversedIdentity
        );
        assert!(matches!(
            commuting_scenario(&p("2 4 1 3")),
            Err(Error::NotCommuting { primes: 1 })
        ));
    }

    #[test]
    fn profile_examples() {
        let prof = reversal_profile(&p("1 -3 -2 5 4 6")).unwrap();
        assert_eq!(
            prof,
            ReversalProfile {
                count: 4,
                lengths: vec![2, 2, 1, 1],
                length_one_count: 2,
                internal_vertices: 3,
                pathlength: 10,
            }
        );
        assert_eq!(reversal_profile(&SignedPermutation::identity(4)).unwrap().count, 0);
        assert_eq!(reversal_profile(&p("-2 -1")).unwrap().count, 0);
    }

    #[test]
    fn scenario_steps_pairwise_commute() {
        for seed in 0..40 {
            let sigma = random_commuting_permutation(12, seed).unwrap();
            let s = commuting_scenario(&sigma).unwrap();
            let contents = step_contents(&sigma, &s).unwrap();
            for a in &contents {
                for b in &contents {
                    assert!(crate::perm::intervals_commute(a, b), "{sigma}");
                }
            }
        }
    }

    /// All signed permutations of size `n`.
    fn all_signed(n: u32) -> Vec<SignedPermutation> {
        fn perms(n: u32) -> Vec<Vec<u32>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for rest in perms(n - 1) {
                for i in 0..=rest.len() {
                    let mut v = rest.clone();
                    v.insert(i, n);
                    out.push(v);
                }
            }
            out
        }
        let mut out = Vec::new();
        for perm in perms(n) {
            for mask in 0..(1u32 << n) {
                let values = perm
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| {
                        if mask >> i & 1 == 1 {
                            -(v as i32)
                        } else {
                            v as i32
                        }
                    })
                    .collect();
                out.push(SignedPermutation::new(values).unwrap());
            }
        }
        out
    }

    #[test]
    fn matches_search_on_all_commuting_of_size_5() {
        for sigma in all_signed(5) {
            if !is_commuting(&sigma) {
                continue;
            }
            let s = commuting_scenario(&sigma).unwrap();
            let res = parsimonious_perfect_scenario(&sigma).unwrap();
            assert_eq!(res.assignments_explored, 1);
            assert_eq!(s.len(), res.length, "{sigma}");
            // same reversal set, possibly in another order
            let mut a = step_contents(&sigma, &s).unwrap();
            let mut b = step_contents(&sigma, &res.scenario).unwrap();
            a.sort();
            b.sort();
            assert_eq!(a, b, "{sigma}");
            assert_eq!(s.len(), brute_force_perfect_oracle(&sigma, 5).unwrap());
        }
    }

    #[test]
    fn class_counts_small() {
        let count4 = all_signed(4).iter().filter(|s| is_commuting(s)).count();
        assert_eq!(count4, 352);
        let count3 = all_signed(3).iter().filter(|s| is_commuting(s)).count();
        assert_eq!(count3, 48);
    }

    #[test]
    fn sampler_size_one() {
        let sampler = CommutingSampler::new(1).unwrap();
        let mut seen = std::collections::HashSet::new();
        for seed in 0..32 {
            seen.insert(sampler.sample_seeded(seed).to_string());
        }
        assert_eq!(seen.len(), 2);
        assert!(CommutingSampler::new(0).is_err());
    }

    #[test]
    fn sampler_deterministic() {
        let sampler = CommutingSampler::new(40).unwrap();
        assert_eq!(sampler.sample_seeded(11), sampler.sample_seeded(11));
        assert!(is_commuting(&sampler.sample_seeded(11)));
    }

    #[test]
    fn sampler_output_always_commutes() {
        let sampler = CommutingSampler::new(25).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            assert!(is_commuting(&sampler.sample(&mut rng)));
        }
    }

    /// Chi-square goodness of fit against the full enumeration, n = 3 and 4.
    #[test]
    fn sampler_uniformity_chi_square() {
        use statrs::distribution::{ChiSquared, ContinuousCDF};
        for (n, classes, trials) in [(3usize, 48usize, 100_000usize), (4, 352, 200_000)] {
            let sampler = CommutingSampler::new(n).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(20_240_000 + n as u64);
            let mut counts: HashMap<String, usize> = HashMap::new();
            for _ in 0..trials {
                *counts.entry(sampler.sample(&mut rng).to_string()).or_default() += 1;
            }
            assert_eq!(counts.len(), classes, "every class reached at n={n}");
            let expected = trials as f64 / classes as f64;
            let chi2: f64 = counts
                .values()
                .map(|&c| (c as f64 - expected).powi(2) / expected)
                .sum();
            let dist = ChiSquared::new((classes - 1) as f64).unwrap();
            let p_value = 1.0 - dist.cdf(chi2);
            assert!(p_value > 0.001, "n={n} chi2={chi2:.1} p={p_value:.5}");
        }
    }

    #[test]
    fn length_one_reversals_average_near_half_n() {
        // leaf signs are uniform, so half the leaves under a linear parent
        // mismatch; at n=40 almost every leaf has a linear parent
        let n = 40;
        let sampler = CommutingSampler::new(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let trials = 4000;
        let total: usize = (0..trials)
            .map(|_| {
                reversal_profile(&sampler.sample(&mut rng))
                    .unwrap()
                    .length_one_count
            })
            .sum();
        let mean = total as f64 / trials as f64;
        assert!((mean - n as f64 / 2.0).abs() < 1.5, "mean={mean}");
    }
}
