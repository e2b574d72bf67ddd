//! Parsimonious perfect scenarios (Algorithm BBCP07).
//!
//! Signs are assigned to the vertices of the strong interval tree: linear
//! vertices by direction, prime vertices with a linear parent by inheritance,
//! and the remaining prime vertices by exhaustive search over the `2^u`
//! possible assignments. For each assignment a perfect scenario is assembled
//! from parsimonious sortings of the signed quotients of prime vertices plus
//! one reversal per vertex disagreeing with its linear parent; the shortest
//! scenario over all assignments is parsimonious among perfect scenarios.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Reversal, Scenario, SignedPermutation, SortClass};
use crate::sit::{build_sit, count_prime_vertices, Sign, SitTree, SitVertex, VertexKind};
use crate::sorter::{sort_to_target, SortTarget};

/// Default cap on the number of free prime vertices explored exhaustively.
pub const DEFAULT_MAX_FREE_PRIMES: usize = 20;

/// Flattened tree with one sign slot per vertex, in pre-order.
#[derive(Debug, Clone)]
pub struct SignedTree {
    vertices: Vec<FlatVertex>,
    signs: Vec<Option<Sign>>,
    forced: Vec<bool>,
    unassigned: Vec<usize>,
}

#[derive(Debug, Clone)]
struct FlatVertex {
    span: (usize, usize),
    kind: VertexKind,
    quotient: Vec<u32>,
    children: Vec<usize>,
    parent: Option<usize>,
}

impl SignedTree {
    /// Pre-order indices of the prime vertices left without a sign.
    pub fn unassigned_primes(&self) -> &[usize] {
        &self.unassigned
    }

    /// Sign of the vertex at pre-order index `idx`, if determined.
    pub fn sign(&self, idx: usize) -> Option<Sign> {
        self.signs[idx]
    }

    /// Whether the sign at `idx` was forced by the rules (as opposed to
    /// searched).
    pub fn is_forced(&self, idx: usize) -> bool {
        self.forced[idx]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Position span of the vertex at pre-order index `idx`.
    pub fn span(&self, idx: usize) -> (usize, usize) {
        self.vertices[idx].span
    }
}

fn flatten(t: &SitTree) -> Vec<FlatVertex> {
    fn rec(v: &SitVertex, parent: Option<usize>, out: &mut Vec<FlatVertex>) -> usize {
        let idx = out.len();
        out.push(FlatVertex {
            span: (v.span.lo, v.span.hi),
            kind: v.kind,
            quotient: v.quotient.clone(),
            children: Vec::new(),
            parent,
        });
        let mut children = Vec::with_capacity(v.children.len());
        for c in &v.children {
            children.push(rec(c, Some(idx), out));
        }
        out[idx].children = children;
        idx
    }
    let mut out = Vec::new();
    rec(&t.root, None, &mut out);
    out
}

/// Applies the forced sign rules to the tree.
///
/// Linear vertices take their direction as sign, leaves keep their element
/// sign, and a prime vertex whose parent is linear inherits the parent sign.
/// Prime vertices with no parent or a prime parent stay unassigned.
pub fn assign_forced_signs(t: &SitTree, sigma: &SignedPermutation) -> SignedTree {
    let vertices = flatten(t);
    let mut signs: Vec<Option<Sign>> = vec![None; vertices.len()];
    let mut forced = vec![true; vertices.len()];
    let mut unassigned = Vec::new();
    for idx in 0..vertices.len() {
        let v = &vertices[idx];
        signs[idx] = match v.kind {
            VertexKind::Leaf => Some(Sign::of(sigma.at(v.span.0))),
            VertexKind::LinearIncreasing => Some(Sign::Plus),
            VertexKind::LinearDecreasing => Some(Sign::Minus),
            VertexKind::Prime => {
                let inherited = v.parent.and_then(|p| {
                    matches!(
                        vertices[p].kind,
                        VertexKind::LinearIncreasing | VertexKind::LinearDecreasing
                    )
                    .then(|| signs[p].unwrap())
                });
                if inherited.is_none() {
                    forced[idx] = false;
                    unassigned.push(idx);
                }
                inherited
            }
        };
    }
    SignedTree {
        vertices,
        signs,
        forced,
        unassigned,
    }
}

/// The perfect scenario for one complete sign assignment.
///
/// `assignment` gives a sign per unassigned prime vertex, in pre-order.
pub fn scenario_for_assignment(
    st: &SignedTree,
    sigma: &SignedPermutation,
    assignment: &[Sign],
) -> Result<Scenario> {
    if assignment.len() != st.unassigned.len() {
        return Err(Error::IncompleteAssignment {
            given: assignment.len(),
            needed: st.unassigned.len(),
        });
    }
    let mut signs: Vec<Sign> = Vec::with_capacity(st.vertices.len());
    {
        let mut free = st.unassigned.iter().zip(assignment.iter());
        let mut next_free = free.next();
        for (idx, s) in st.signs.iter().enumerate() {
            match s {
                Some(s) => signs.push(*s),
                None => {
                    let (&fidx, &fs) = next_free.expect("assignment length checked");
                    debug_assert_eq!(fidx, idx);
                    signs.push(fs);
                    next_free = free.next();
                }
            }
        }
    }

    let mut working = sigma.clone();
    let mut steps = Vec::new();
    emit(st, &signs, 0, &mut working, &mut steps)?;

    let target = match signs[0] {
        Sign::Plus => SortClass::Identity,
        Sign::Minus => SortClass::ReversedIdentity,
    };
    debug_assert_eq!(working.classify_sorted(), target);
    Ok(Scenario::new(steps))
}

fn emit(
    st: &SignedTree,
    signs: &[Sign],
    idx: usize,
    working: &mut SignedPermutation,
    steps: &mut Vec<Reversal>,
) -> Result<()> {
    let v = &st.vertices[idx];
    for &c in &v.children {
        emit(st, signs, c, working, steps)?;
    }
    match v.kind {
        VertexKind::Prime => {
            // lift child signs onto the quotient and sort it parsimoniously
            let values: Vec<i32> = v
                .quotient
                .iter()
                .zip(v.children.iter())
                .map(|(&q, &c)| match signs[c] {
                    Sign::Plus => q as i32,
                    Sign::Minus => -(q as i32),
                })
                .collect();
            let quotient = SignedPermutation::new(values)?;
            let target = match signs[idx] {
                Sign::Plus => SortTarget::Identity,
                Sign::Minus => SortTarget::ReversedIdentity,
            };
            let quotient_scenario = sort_to_target(&quotient, target);
            // expand quotient-level reversals to element ranges, tracking how
            // block lengths move as reversals are applied
            let mut lengths: Vec<usize> = v
                .children
                .iter()
                .map(|&c| {
                    let (lo, hi) = st.vertices[c].span;
                    hi - lo + 1
                })
                .collect();
            let base = v.span.0;
            for qr in &quotient_scenario.steps {
                let before: usize = lengths[..qr.lo - 1].iter().sum();
                let width: usize = lengths[qr.lo - 1..qr.hi].iter().sum();
                let r = Reversal::new(base + before, base + before + width - 1);
                *working = working.apply_reversal(r)?;
                steps.push(r);
                lengths[qr.lo - 1..qr.hi].reverse();
            }
        }
        VertexKind::LinearIncreasing | VertexKind::LinearDecreasing => {
            for &c in &v.children {
                if signs[c] != signs[idx] {
                    let (lo, hi) = st.vertices[c].span;
                    let r = Reversal::new(lo, hi);
                    *working = working.apply_reversal(r)?;
                    steps.push(r);
                }
            }
        }
        VertexKind::Leaf => {}
    }
    Ok(())
}

/// Outcome of the full assignment search.
#[derive(Debug, Clone)]
pub struct PerfectResult {
    pub scenario: Scenario,
    pub length: usize,
    /// Total number of prime vertices in the tree.
    pub prime_count: usize,
    /// Chosen signs for the unassigned primes, in pre-order.
    pub chosen_assignment: Vec<Sign>,
    pub assignments_explored: usize,
}

/// Shortest perfect scenario over all sign assignments.
pub fn parsimonious_perfect_scenario(sigma: &SignedPermutation) -> Result<PerfectResult> {
    parsimonious_perfect_scenario_capped(sigma, DEFAULT_MAX_FREE_PRIMES)
}

/// As [`parsimonious_perfect_scenario`] with an explicit cap on the number
/// of free prime vertices (the search is `2^u` assignments).
pub fn parsimonious_perfect_scenario_capped(
    sigma: &SignedPermutation,
    max_free_primes: usize,
) -> Result<PerfectResult> {
    let tree = build_sit(sigma);
    let st = assign_forced_signs(&tree, sigma);
    let u = st.unassigned.len();
    if u > max_free_primes {
        return Err(Error::BudgetExceeded {
            unassigned: u,
            cap: max_free_primes,
        });
    }
    let mut best: Option<(Scenario, Vec<Sign>)> = None;
    for code in 0..(1usize << u) {
        // high bit of the code is the first free prime, so increasing codes
        // enumerate assignments in lexicographic order with + before -
        let assignment: Vec<Sign> = (0..u)
            .map(|j| {
                if code >> (u - 1 - j) & 1 == 0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            })
            .collect();
        let scenario = scenario_for_assignment(&st, sigma, &assignment)?;
        let better = match &best {
            None => true,
            Some((b, _)) => scenario.len() < b.len(),
        };
        if better {
            best = Some((scenario, assignment));
        }
    }
    let (scenario, chosen_assignment) = best.expect("at least one assignment");
    debug_assert!(validate_perfect(sigma, &scenario));
    Ok(PerfectResult {
        length: scenario.len(),
        scenario,
        prime_count: count_prime_vertices(&tree),
        chosen_assignment,
        assignments_explored: 1 << u,
    })
}

/// Value content of every step of a scenario, in application order.
pub fn step_contents(sigma: &SignedPermutation, s: &Scenario) -> Result<Vec<Vec<u32>>> {
    let mut working = sigma.clone();
    let mut out = Vec::with_capacity(s.len());
    for &r in &s.steps {
        if r.lo < 1 || r.hi > working.size() {
            return Err(Error::RangeOutOfBounds {
                lo: r.lo,
                hi: r.hi,
                n: working.size(),
            });
        }
        let mut content: Vec<u32> = working.values()[r.lo - 1..r.hi]
            .iter()
            .map(|v| v.unsigned_abs())
            .collect();
        content.sort_unstable();
        out.push(content);
        working = working.apply_reversal(r)?;
    }
    Ok(out)
}

/// True when the scenario sorts `sigma` to `Id` or `Id-bar` without breaking
/// any of its common intervals.
pub fn validate_perfect(sigma: &SignedPermutation, s: &Scenario) -> bool {
    let Ok(end) = sigma.apply_scenario(s) else {
        return false;
    };
    if end.classify_sorted() == SortClass::Neither {
        return false;
    }
    let commons: Vec<(u32, u32)> = sigma
        .common_intervals()
        .iter()
        .map(|c| (c.min, c.max))
        .collect();
    let Ok(contents) = step_contents(sigma, s) else {
        return false;
    };
    contents
        .iter()
        .all(|set| commons.iter().all(|&ci| set_commutes_with_range(set, ci)))
}

/// Sorted set vs value range: nested or disjoint.
fn set_commutes_with_range(set: &[u32], (a, b): (u32, u32)) -> bool {
    let lb = set.partition_point(|&x| x < a);
    let ub = set.partition_point(|&x| x <= b);
    let inside = ub - lb;
    inside == 0 || inside == (b - a + 1) as usize || inside == set.len()
}

/// Cap for the exhaustive perfect oracle.
pub const PERFECT_ORACLE_CAP: usize = 6;

/// Exact minimum perfect-scenario length by breadth-first search restricted
/// to reversals commuting with every common interval of the original
/// permutation.
pub fn brute_force_perfect_oracle(sigma: &SignedPermutation, cap: usize) -> Result<usize> {
    let n = sigma.size();
    if n > cap || n > PERFECT_ORACLE_CAP {
        return Err(Error::SizeCap {
            n,
            cap: cap.min(PERFECT_ORACLE_CAP),
        });
    }
    let commons: Vec<(u32, u32)> = sigma
        .common_intervals()
        .iter()
        .map(|c| (c.min, c.max))
        .collect();
    let mut dist: HashMap<Vec<i32>, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert(sigma.values().to_vec(), 0);
    queue.push_back(sigma.clone());
    while let Some(cur) = queue.pop_front() {
        let d = dist[cur.values()];
        if cur.classify_sorted() != SortClass::Neither {
            return Ok(d);
        }
        for lo in 1..=n {
            for hi in lo..=n {
                let mut content: Vec<u32> = cur.values()[lo - 1..hi]
                    .iter()
                    .map(|v| v.unsigned_abs())
                    .collect();
                content.sort_unstable();
                if !commons
                    .iter()
                    .all(|&ci| set_commutes_with_range(&content, ci))
                {
                    continue;
                }
                let next = cur.apply_reversal(Reversal::new(lo, hi)).unwrap();
                if !dist.contains_key(next.values()) {
                    dist.insert(next.values().to_vec(), d + 1);
                    queue.push_back(next);
                }
            }
        }
    }
    unreachable!("a perfect scenario always exists")
}

// ---------------------------------------------------------------------------
// wire format

/// JSON form of a scenario, with per-step value contents.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub schema: String,
    pub source: String,
    pub target: String,
    pub steps: Vec<ScenarioStep>,
    pub length: usize,
    pub p: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioStep {
    pub lo: usize,
    pub hi: usize,
    pub set: Vec<u32>,
}

impl ScenarioReport {
    pub fn new(
        sigma: &SignedPermutation,
        scenario: &Scenario,
        prime_count: usize,
    ) -> Result<Self> {
        let contents = step_contents(sigma, scenario)?;
        let end = sigma.apply_scenario(scenario)?;
        let target = match end.classify_sorted() {
            SortClass::Identity => "Id",
            SortClass::ReversedIdentity => "IdBar",
            SortClass::Neither => {
                return Err(Error::Parse(
                    "scenario does not end at Id or IdBar".into(),
                ))
            }
        };
        Ok(ScenarioReport {
            schema: "persort/1".into(),
            source: sigma.to_string(),
            target: target.into(),
            steps: scenario
                .steps
                .iter()
                .zip(contents)
                .map(|(r, set)| ScenarioStep {
                    lo: r.lo,
                    hi: r.hi,
                    set,
                })
                .collect(),
            length: scenario.len(),
            p: prime_count,
        })
    }

    pub fn scenario(&self) -> Scenario {
        Scenario::new(
            self.steps
                .iter()
                .map(|s| Reversal::new(s.lo, s.hi))
                .collect(),
        )
    }
}
