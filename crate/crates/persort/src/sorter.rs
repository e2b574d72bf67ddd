//! Parsimonious (non-perfect) sorting by reversals.
//!
//! Distances follow the Hannenhalli-Pevzner theory: pad the permutation with
//! 0 and n+1, split each element into two breakpoint-graph vertices, count
//! alternating cycles, then correct for hurdles and fortresses. Sorting
//! proceeds by searching, at each step, for any reversal that decreases the
//! distance; such a reversal always exists.
//!
//! Sorting toward the reversed identity is reduced to the identity target by
//! the value relabeling `e -> -sign(e) * (n+1-|e|)`, which preserves reversal
//! positions.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::perm::{Reversal, Scenario, SignedPermutation, SortClass};

/// Which permutation a scenario should end at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SortTarget {
    Identity,
    ReversedIdentity,
}

/// Minimum number of reversals transforming `sigma` into the identity.
pub fn reversal_distance(sigma: &SignedPermutation) -> usize {
    let n = sigma.size();
    let g = BreakpointGraph::new(sigma);
    n + 1 - g.cycles + g.hurdles + g.fortress as usize
}

/// Minimum number of reversals to the given target.
pub fn distance_to_target(sigma: &SignedPermutation, target: SortTarget) -> usize {
    match target {
        SortTarget::Identity => reversal_distance(sigma),
        SortTarget::ReversedIdentity => reversal_distance(&relabel_for_reversed(sigma)),
    }
}

/// The relabeling that turns the reversed-identity target into the identity.
pub fn relabel_for_reversed(sigma: &SignedPermutation) -> SignedPermutation {
    let n = sigma.size() as i32;
    let values = sigma
        .values()
        .iter()
        .map(|&v| -v.signum() * (n + 1 - v.abs()))
        .collect();
    SignedPermutation::new(values).expect("relabeling preserves permutation structure")
}

/// A parsimonious scenario from `sigma` to the target.
pub fn sort_to_target(sigma: &SignedPermutation, target: SortTarget) -> Scenario {
    let working = match target {
        SortTarget::Identity => sigma.clone(),
        SortTarget::ReversedIdentity => relabel_for_reversed(sigma),
    };
    let scenario = sort_to_identity(working);
    debug_assert_eq!(
        sigma.apply_scenario(&scenario).unwrap().classify_sorted(),
        match target {
            SortTarget::Identity => SortClass::Identity,
            SortTarget::ReversedIdentity => SortClass::ReversedIdentity,
        }
    );
    scenario
}

fn sort_to_identity(mut sigma: SignedPermutation) -> Scenario {
    let n = sigma.size();
    let mut steps = Vec::new();
    let mut d = reversal_distance(&sigma);
    while d > 0 {
        let mut found = false;
        'search: for lo in 1..=n {
            for hi in lo..=n {
                let r = Reversal::new(lo, hi);
                let next = sigma.apply_reversal(r).unwrap();
                if reversal_distance(&next) == d - 1 {
                    sigma = next;
                    steps.push(r);
                    d -= 1;
                    found = true;
                    break 'search;
                }
            }
        }
        assert!(found, "no distance-decreasing reversal found; distance formula inconsistent");
    }
    Scenario::new(steps)
}

struct BreakpointGraph {
    cycles: usize,
    hurdles: usize,
    fortress: bool,
}

impl BreakpointGraph {
    fn new(sigma: &SignedPermutation) -> Self {
        let n = sigma.size();
        // vertex sequence: 0, split elements, 2n+1
        let mut seq = Vec::with_capacity(2 * n + 2);
        seq.push(0u32);
        for &v in sigma.values() {
            let a = v.unsigned_abs();
            if v > 0 {
                seq.push(2 * a - 1);
                seq.push(2 * a);
            } else {
                seq.push(2 * a);
                seq.push(2 * a - 1);
            }
        }
        seq.push(2 * n as u32 + 1);
        let m = seq.len();
        let mut index_of = vec![0usize; m];
        for (i, &v) in seq.iter().enumerate() {
            index_of[v as usize] = i;
        }

        // alternating cycles: black partner flips the low index bit, gray
        // partner flips the low value bit
        let mut cycle_of = vec![usize::MAX; m];
        let mut cycles = 0usize;
        let mut cycle_len = Vec::new();
        for start in 0..m {
            if cycle_of[start] != usize::MAX {
                continue;
            }
            let id = cycles;
            cycles += 1;
            let mut len = 0usize;
            let mut idx = start;
            loop {
                cycle_of[idx] = id;
                len += 1;
                let black = idx ^ 1;
                cycle_of[black] = id;
                len += 1;
                let gray = index_of[(seq[black] ^ 1) as usize];
                idx = gray;
                if idx == start {
                    break;
                }
            }
            cycle_len.push(len);
        }

        // gray edges with their index extents and orientation
        struct GrayEdge {
            lo: usize,
            hi: usize,
            cycle: usize,
            oriented: bool,
        }
        let mut grays = Vec::with_capacity(n + 1);
        for v in (0..m as u32).step_by(2) {
            let i = index_of[v as usize];
            let j = index_of[(v ^ 1) as usize];
            let (lo, hi) = if i < j { (i, j) } else { (j, i) };
            grays.push(GrayEdge {
                lo,
                hi,
                cycle: cycle_of[i],
                oriented: (hi - lo) % 2 == 0,
            });
        }

        // interleaving components over non-trivial cycles
        let mut parent: Vec<usize> = (0..cycles).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for i in 0..grays.len() {
            for j in i + 1..grays.len() {
                let (a, b) = (&grays[i], &grays[j]);
                let crossing = (a.lo < b.lo && b.lo < a.hi && a.hi < b.hi)
                    || (b.lo < a.lo && a.lo < b.hi && b.hi < a.hi);
                if crossing {
                    let (ra, rb) = (find(&mut parent, a.cycle), find(&mut parent, b.cycle));
                    if ra != rb {
                        parent[ra] = rb;
                    }
                }
            }
        }

        let trivial: Vec<bool> = cycle_len.iter().map(|&l| l == 2).collect();
        let mut comp_oriented: HashMap<usize, bool> = HashMap::new();
        for g in &grays {
            if trivial[g.cycle] {
                continue;
            }
            let root = find(&mut parent, g.cycle);
            let e = comp_oriented.entry(root).or_insert(false);
            *e |= g.oriented;
        }

        // circular occurrence list of unoriented components, in index order
        let mut occ: Vec<usize> = Vec::new();
        for idx in 0..m {
            let c = cycle_of[idx];
            if trivial[c] {
                continue;
            }
            let root = find(&mut parent, c);
            if comp_oriented.get(&root) == Some(&false) {
                occ.push(root);
            }
        }
        let hurdle_set = hurdles_of(&occ);
        let hurdles = hurdle_set.len();
        let mut fortress = false;
        if hurdles >= 3 && hurdles % 2 == 1 {
            fortress = hurdle_set.iter().all(|&h| {
                let reduced: Vec<usize> = occ.iter().copied().filter(|&c| c != h).collect();
                let before: std::collections::HashSet<usize> =
                    hurdles_of(&occ).into_iter().collect();
                hurdles_of(&reduced)
                    .into_iter()
                    .any(|c| c != h && !before.contains(&c))
            });
        }

        BreakpointGraph {
            cycles,
            hurdles,
            fortress,
        }
    }
}

/// Components whose occurrences form a single circular block.
fn hurdles_of(occ: &[usize]) -> Vec<usize> {
    let mut blocks: HashMap<usize, usize> = HashMap::new();
    let len = occ.len();
    for i in 0..len {
        let prev = occ[(i + len - 1) % len];
        if occ[i] != prev || len == 1 {
            *blocks.entry(occ[i]).or_insert(0) += 1;
        }
    }
    if len > 0 && blocks.is_empty() {
        // every entry equals its predecessor: a single component
        blocks.insert(occ[0], 1);
    }
    blocks
        .into_iter()
        .filter(|&(_, b)| b == 1)
        .map(|(c, _)| c)
        .collect()
}

// ---------------------------------------------------------------------------
// breadth-first-search oracle

/// Hard cap for the exhaustive oracle.
pub const BFS_CAP: usize = 8;

/// Provably minimal scenario by breadth-first search over all reversals.
///
/// The full distance table from the identity is computed once per size and
/// cached, then the scenario is read off by greedy descent.
pub fn bfs_oracle_sort(
    sigma: &SignedPermutation,
    target: SortTarget,
    cap: usize,
) -> Result<Scenario> {
    let n = sigma.size();
    if n > cap || n > BFS_CAP {
        return Err(Error::SizeCap {
            n,
            cap: cap.min(BFS_CAP),
        });
    }
    let table = distance_table(n);
    let working = match target {
        SortTarget::Identity => sigma.clone(),
        SortTarget::ReversedIdentity => relabel_for_reversed(sigma),
    };
    let mut cur = working;
    let mut steps = Vec::new();
    let mut d = table[encode(&cur)];
    while d > 0 {
        let mut advanced = false;
        'search: for lo in 1..=n {
            for hi in lo..=n {
                let r = Reversal::new(lo, hi);
                let next = cur.apply_reversal(r).unwrap();
                if table[encode(&next)] == d - 1 {
                    cur = next;
                    steps.push(r);
                    d -= 1;
                    advanced = true;
                    break 'search;
                }
            }
        }
        assert!(advanced, "BFS table inconsistent");
    }
    Ok(Scenario::new(steps))
}

/// Exact distance to the identity, by table lookup (n <= 8).
pub fn bfs_distance(sigma: &SignedPermutation, target: SortTarget) -> Result<usize> {
    let n = sigma.size();
    if n > BFS_CAP {
        return Err(Error::SizeCap { n, cap: BFS_CAP });
    }
    let table = distance_table(n);
    let working = match target {
        SortTarget::Identity => sigma.clone(),
        SortTarget::ReversedIdentity => relabel_for_reversed(sigma),
    };
    Ok(table[encode(&working)] as usize)
}

fn factorial(n: usize) -> usize {
    (1..=n).product::<usize>().max(1)
}

/// Lehmer rank of the absolute permutation, combined with the sign mask.
fn encode(sigma: &SignedPermutation) -> usize {
    let n = sigma.size();
    let values = sigma.values();
    let mut rank = 0usize;
    for i in 0..n {
        let ai = values[i].unsigned_abs();
        let smaller = values[i + 1..]
            .iter()
            .filter(|v| v.unsigned_abs() < ai)
            .count();
        rank = rank * (n - i) + smaller;
    }
    let mut mask = 0usize;
    for (i, &v) in values.iter().enumerate() {
        if v < 0 {
            mask |= 1 << i;
        }
    }
    rank * (1 << n) + mask
}

fn decode(mut code: usize, n: usize) -> SignedPermutation {
    let mask = code & ((1 << n) - 1);
    code >>= n;
    let mut digits = vec![0usize; n];
    for i in (0..n).rev() {
        digits[i] = code % (n - i);
        code /= n - i;
    }
    let mut pool: Vec<u32> = (1..=n as u32).collect();
    let mut values = Vec::with_capacity(n);
    for (i, &d) in digits.iter().enumerate() {
        let v = pool.remove(d);
        let signed = if mask & (1 << i) != 0 {
            -(v as i32)
        } else {
            v as i32
        };
        values.push(signed);
    }
    SignedPermutation::new(values).unwrap()
}

fn distance_table(n: usize) -> Arc<Vec<u8>> {
    static TABLES: OnceLock<Mutex<HashMap<usize, Arc<Vec<u8>>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = tables.lock().unwrap();
    if let Some(t) = guard.get(&n) {
        return Arc::clone(t);
    }
    let size = factorial(n) << n;
    let mut dist = vec![u8::MAX; size];
    let id = SignedPermutation::identity(n);
    let start = encode(&id);
    dist[start] = 0;
    let mut queue = VecDeque::new();
    queue.push_back(start);
    while let Some(code) = queue.pop_front() {
        let d = dist[code];
        let sigma = decode(code, n);
        for lo in 1..=n {
            for hi in lo..=n {
                let next = sigma.apply_reversal(Reversal::new(lo, hi)).unwrap();
                let nc = encode(&next);
                if dist[nc] == u8::MAX {
                    dist[nc] = d + 1;
                    queue.push_back(nc);
                }
            }
        }
    }
    let arc = Arc::new(dist);
    guard.insert(n, Arc::clone(&arc));
    arc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn paper_distances() {
        assert_eq!(reversal_distance(&p("3 1 -4 -2")), 3);
        assert_eq!(reversal_distance(&p("-3 1 4 2")), 4);
        assert_eq!(reversal_distance(&SignedPermutation::identity(7)), 0);
    }

    #[test]
    fn hurdle_distance() {
        // classic all-positive hurdle
        assert_eq!(reversal_distance(&p("2 1")), 3);
        assert_eq!(reversal_distance(&p("3 2 1")), 3);
    }

    #[test]
    fn encode_decode_roundtrip() {
        for code in 0..(factorial(4) << 4) {
            assert_eq!(encode(&decode(code, 4)), code);
        }
    }

    #[test]
    fn sort_reaches_target() {
        for (s, target) in [
            ("3 1 -4 -2", SortTarget::Identity),
            ("-3 -1 4 2", SortTarget::ReversedIdentity),
            ("2 1", SortTarget::Identity),
            ("1 -3 -2 5 4 6", SortTarget::Identity),
        ] {
            let sigma = p(s);
            let scenario = sort_to_target(&sigma, target);
            let end = sigma.apply_scenario(&scenario).unwrap();
            let expect = match target {
                SortTarget::Identity => SortClass::Identity,
                SortTarget::ReversedIdentity => SortClass::ReversedIdentity,
            };
            assert_eq!(end.classify_sorted(), expect);
        }
    }

    #[test]
    fn paper_scenario_lengths() {
        assert_eq!(sort_to_target(&p("3 1 -4 -2"), SortTarget::Identity).len(), 3);
        // relabeled image of the first fixture, so the distance is also 3
        assert_eq!(
            sort_to_target(&p("-2 -4 1 3"), SortTarget::ReversedIdentity).len(),
            3
        );
        assert!(sort_to_target(&SignedPermutation::identity(5), SortTarget::Identity).is_empty());
    }

    #[test]
    fn oracle_fixtures() {
        assert_eq!(
            bfs_oracle_sort(&p("3 1 -4 -2"), SortTarget::Identity, 8)
                .unwrap()
                .len(),
            3
        );
        assert!(bfs_oracle_sort(&SignedPermutation::identity(3), SortTarget::Identity, 8)
            .unwrap()
            .is_empty());
        assert!(bfs_oracle_sort(&SignedPermutation::identity(9), SortTarget::Identity, 9).is_err());
    }

    #[test]
    fn matches_oracle_exhaustively_size_4() {
        for code in 0..(factorial(4) << 4) {
            let sigma = decode(code, 4);
            let d = reversal_distance(&sigma);
            assert_eq!(d, bfs_distance(&sigma, SortTarget::Identity).unwrap(), "{sigma}");
            assert_eq!(sort_to_target(&sigma, SortTarget::Identity).len(), d, "{sigma}");
        }
    }

    #[test]
    fn reversed_target_matches_relabeling() {
        for seed in 0..50 {
            let sigma = SignedPermutation::random(6, seed).unwrap();
            assert_eq!(
                distance_to_target(&sigma, SortTarget::ReversedIdentity),
                reversal_distance(&relabel_for_reversed(&sigma))
            );
            let s = sort_to_target(&sigma, SortTarget::ReversedIdentity);
            assert_eq!(
                sigma.apply_scenario(&s).unwrap().classify_sorted(),
                SortClass::ReversedIdentity
            );
        }
    }
}
