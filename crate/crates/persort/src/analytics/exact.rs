//! Brute-force enumerations at small sizes.
//!
//! These serve as independent checks for the series coefficients, the class
//! counts, and the counting bounds: everything here is plain exhaustion over
//! permutations or tree shapes, with no generating-function input.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::perm::{common_intervals_unsigned, is_simple, SignedPermutation};
use crate::sit::{build_sit, count_prime_vertices, count_twins};

use super::series::schroder_numbers;

/// `2^{n+1} S_n`, the number of commuting signed permutations of size `n`.
/// Undefined at `n = 1` (the root-sign factor collapses there; only two
/// signed permutations of size 1 exist).
pub fn commuting_count(n: usize) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::SizeCap { n, cap: 2 });
    }
    let s = schroder_numbers(n);
    Ok(&s[n - 1] << (n + 1))
}

/// A plane tree shape; every internal vertex has at least two children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    Leaf,
    Node(Vec<Shape>),
}

impl Shape {
    pub fn leaves(&self) -> usize {
        match self {
            Shape::Leaf => 1,
            Shape::Node(c) => c.iter().map(Shape::leaves).sum(),
        }
    }

    pub fn internal_vertices(&self) -> usize {
        match self {
            Shape::Leaf => 0,
            Shape::Node(c) => 1 + c.iter().map(Shape::internal_vertices).sum::<usize>(),
        }
    }

    /// Sum of subtree sizes over all non-root subtrees.
    pub fn pathlength(&self) -> usize {
        match self {
            Shape::Leaf => 0,
            Shape::Node(c) => c.iter().map(|t| t.pathlength() + t.leaves()).sum(),
        }
    }
}

/// Every shape with `n` leaves, generated by direct recursion.
pub fn enumerate_shapes(n: usize) -> Vec<Shape> {
    struct Gen {
        shapes: HashMap<usize, Vec<Shape>>,
        forests: HashMap<usize, Vec<Vec<Shape>>>,
    }
    impl Gen {
        fn shapes(&mut self, n: usize) -> Vec<Shape> {
            if let Some(s) = self.shapes.get(&n) {
                return s.clone();
            }
            let mut out = Vec::new();
            if n == 1 {
                out.push(Shape::Leaf);
            } else {
                // first child of a leaves, nonempty tail of n - a leaves
                for a in 1..n {
                    for first in self.shapes(a) {
                        for tail in self.forests(n - a) {
                            let mut children = vec![first.clone()];
                            children.extend(tail);
                            out.push(Shape::Node(children));
                        }
                    }
                }
            }
            self.shapes.insert(n, out.clone());
            out
        }

        fn forests(&mut self, r: usize) -> Vec<Vec<Shape>> {
            if let Some(f) = self.forests.get(&r) {
                return f.clone();
            }
            let mut out = Vec::new();
            if r == 0 {
                out.push(Vec::new());
            } else {
                for b in 1..=r {
                    for first in self.shapes(b) {
                        for tail in self.forests(r - b) {
                            let mut forest = vec![first.clone()];
                            forest.extend(tail);
                            out.push(forest);
                        }
                    }
                }
            }
            self.forests.insert(r, out.clone());
            out
        }
    }
    Gen {
        shapes: HashMap::new(),
        forests: HashMap::new(),
    }
    .shapes(n)
}

/// Calls `f` on every permutation of `1..=n` (Heap's algorithm).
fn for_each_permutation(n: usize, mut f: impl FnMut(&[u32])) {
    let mut a: Vec<u32> = (1..=n as u32).collect();
    let mut c = vec![0usize; n];
    f(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn tree_of(perm: &[u32]) -> crate::sit::SitTree {
    let sigma = SignedPermutation::new(perm.iter().map(|&v| v as i32).collect()).unwrap();
    build_sit(&sigma)
}

/// `s_1..s_N`: simple permutations of each size, by filtering all `n!`
/// permutations. Capped at `N = 10` for runtime.
pub fn simple_counts_bruteforce(n: usize) -> Result<Vec<u64>> {
    if n > 10 {
        return Err(Error::SizeCap { n, cap: 10 });
    }
    let mut out = Vec::with_capacity(n);
    for m in 1..=n {
        let mut count = 0u64;
        for_each_permutation(m, |p| {
            if is_simple(p) {
                count += 1;
            }
        });
        out.push(count);
    }
    Ok(out)
}

/// `U_{n,p}` for `p = 0..`: permutations of size `n` whose strong interval
/// tree has exactly `p` prime vertices. Exhaustive over `n!`, `n <= 8`.
pub fn count_by_prime_vertices(n: usize) -> Result<Vec<u64>> {
    if n > 8 {
        return Err(Error::SizeCap { n, cap: 8 });
    }
    let mut hist = Vec::new();
    for_each_permutation(n, |p| {
        let primes = count_prime_vertices(&tree_of(p));
        if hist.len() <= primes {
            hist.resize(primes + 1, 0u64);
        }
        hist[primes] += 1;
    });
    Ok(hist)
}

/// `p_{n,k}` for `k = 1..=n`: permutations of size `n` containing at least
/// one common interval of length exactly `k`. Exhaustive, `n <= 8`.
pub fn common_interval_length_counts(n: usize) -> Result<Vec<u64>> {
    if n > 8 {
        return Err(Error::SizeCap { n, cap: 8 });
    }
    let mut counts = vec![0u64; n];
    for_each_permutation(n, |p| {
        let mut seen = vec![false; n];
        for ci in common_intervals_unsigned(p) {
            seen[ci.len() - 1] = true;
        }
        for (k, s) in seen.iter().enumerate() {
            if *s {
                counts[k] += 1;
            }
        }
    });
    Ok(counts)
}

/// The counting bound `p_{n,k} <= (n−k+1) k! (n−k+1)!`.
pub fn interval_count_bound(n: usize, k: usize) -> BigUint {
    fn factorial(m: usize) -> BigUint {
        (1..=m as u32).fold(BigUint::one(), |acc, i| acc * i)
    }
    BigUint::from(n - k + 1) * factorial(k) * factorial(n - k + 1)
}

/// Twin-count histogram over all `n!` unsigned permutations, `n <= 10`.
pub fn exhaustive_twin_distribution(n: usize) -> Result<Vec<u64>> {
    if n > 10 {
        return Err(Error::SizeCap { n, cap: 10 });
    }
    let mut hist = Vec::new();
    for_each_permutation(n, |p| {
        let twins = count_twins(&tree_of(p));
        if hist.len() <= twins {
            hist.resize(twins + 1, 0u64);
        }
        hist[twins] += 1;
    });
    Ok(hist)
}

#[cfg(test)]
mod tests {
    use super::super::series::{internal_vertex_series, pathlength_series};
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn commuting_count_small() {
        assert_eq!(commuting_count(2).unwrap().to_u64(), Some(8));
        assert_eq!(commuting_count(3).unwrap().to_u64(), Some(48));
        assert_eq!(commuting_count(4).unwrap().to_u64(), Some(352));
        assert!(commuting_count(1).is_err());
    }

    #[test]
    fn commuting_count_matches_exhaustion_at_5() {
        // 2^5 sign patterns per unsigned separable permutation; the factor
        // for the root direction is already inside the unsigned count
        let mut commuting_unsigned = 0u64;
        for_each_permutation(5, |p| {
            if count_prime_vertices(&tree_of(p)) == 0 {
                commuting_unsigned += 1;
            }
        });
        assert_eq!(commuting_unsigned, 90);
        assert_eq!(
            commuting_count(5).unwrap().to_u64(),
            Some(commuting_unsigned << 5)
        );
    }

    #[test]
    fn shape_enumeration_matches_counting_sequence() {
        let s = schroder_numbers(10);
        for n in 1..=10 {
            assert_eq!(
                enumerate_shapes(n).len() as u64,
                s[n - 1].to_u64().unwrap(),
                "n={n}"
            );
        }
    }

    #[test]
    fn shape_enumeration_matches_parameter_series() {
        let iv = internal_vertex_series(7);
        let pl = pathlength_series(7);
        for n in 1..=7 {
            let shapes = enumerate_shapes(n);
            let total_iv: u64 = shapes.iter().map(|t| t.internal_vertices() as u64).sum();
            let total_pl: u64 = shapes.iter().map(|t| t.pathlength() as u64).sum();
            assert_eq!(total_iv, iv[n - 1].to_u64().unwrap(), "n={n}");
            assert_eq!(total_pl, pl[n - 1].to_u64().unwrap(), "n={n}");
        }
    }

    #[test]
    fn simple_counts_small() {
        let s = simple_counts_bruteforce(6).unwrap();
        // sizes 1-3 are degenerate: both size-2 permutations vacuously have
        // only trivial intervals; the first interesting entries start at 4
        assert_eq!(&s[..4], &[0, 2, 0, 2]);
        // sizes 5 and 6 filtered exhaustively; pinned after first computation
        assert_eq!(s[4], 6);
        assert_eq!(s[5], 46);
        assert!(simple_counts_bruteforce(11).is_err());
    }

    #[test]
    fn prime_vertex_histogram() {
        let h4 = count_by_prime_vertices(4).unwrap();
        assert_eq!(h4.iter().sum::<u64>(), 24);
        assert_eq!(h4[1], 2);
        let h7 = count_by_prime_vertices(7).unwrap();
        assert_eq!(h7.iter().sum::<u64>(), 5040);
        // the bound 48 (n−1)!/2^p for p >= 2
        for (p, &u) in h7.iter().enumerate().skip(2) {
            assert!(u << p <= 48 * 720, "p={p} u={u}");
        }
    }

    #[test]
    fn interval_length_counts() {
        let c5 = common_interval_length_counts(5).unwrap();
        assert_eq!(c5[0], 120);
        assert_eq!(c5[4], 120);
        let n = 7;
        let c7 = common_interval_length_counts(n).unwrap();
        for k in 1..=n {
            let bound = interval_count_bound(n, k);
            assert!(
                BigUint::from(c7[k - 1]) <= bound,
                "k={k} count={} bound={bound}",
                c7[k - 1]
            );
        }
    }

    #[test]
    fn twin_histogram_small() {
        let h = exhaustive_twin_distribution(4).unwrap();
        assert_eq!(h.iter().sum::<u64>(), 24);
        // [2 4 1 3], [3 1 4 2] have no twins; the identity-like trees do
        assert!(h[0] >= 2);
        assert_eq!(
            h.iter().enumerate().map(|(k, &c)| k as u64 * c).sum::<u64>() > 0,
            true
        );
    }
}
