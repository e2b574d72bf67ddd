//! Strong interval trees of signed permutations.
//!
//! The tree has one leaf per element and one internal vertex per non-trivial
//! strong interval. Internal vertices are linear (quotient `Id_k` or its
//! mirror) or prime (simple quotient of size >= 4).
//!
//! Two construction routes are kept deliberately: a direct filter over all
//! common intervals, and a left-to-right stack scan that is the default.
//! They must agree everywhere; tests cross-check them exhaustively for small
//! sizes and on random inputs.

mod text;

pub use text::parse_tree;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{is_simple, Interval, SignedPermutation};

/// Sign carried by leaves and, later, by vertices of a signed tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn of(v: i32) -> Sign {
        if v >= 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    Leaf,
    LinearIncreasing,
    LinearDecreasing,
    Prime,
}

/// A vertex of the strong interval tree together with its subtree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SitVertex {
    /// Positions covered in the permutation, 1-based inclusive.
    pub span: Interval,
    pub kind: VertexKind,
    /// Smallest absolute value in the subtree.
    pub vmin: u32,
    /// Largest absolute value in the subtree.
    pub vmax: u32,
    /// Relative order of the children's value blocks; empty for leaves.
    pub quotient: Vec<u32>,
    pub children: Vec<SitVertex>,
    /// Present exactly on leaves.
    pub leaf_sign: Option<Sign>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SitTree {
    pub root: SitVertex,
    pub n: usize,
}

/// A broken tree invariant reported by [`validate_tree`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub span: Interval,
    pub rule: String,
}

impl SitVertex {
    pub fn is_leaf(&self) -> bool {
        self.kind == VertexKind::Leaf
    }

    /// Number of leaves below (and including) this vertex.
    pub fn size(&self) -> usize {
        self.span.len()
    }

    fn leaf(pos: usize, value: i32) -> SitVertex {
        SitVertex {
            span: Interval::new(pos, pos),
            kind: VertexKind::Leaf,
            vmin: value.unsigned_abs(),
            vmax: value.unsigned_abs(),
            quotient: Vec::new(),
            children: Vec::new(),
            leaf_sign: Some(Sign::of(value)),
        }
    }

    /// Pre-order traversal.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a SitVertex)) {
        f(self);
        for c in &self.children {
            c.walk(f);
        }
    }
}

/// Rank permutation of the children by their smallest value.
fn quotient_of(children: &[SitVertex]) -> Vec<u32> {
    let mins: Vec<u32> = children.iter().map(|c| c.vmin).collect();
    mins.iter()
        .map(|&m| 1 + mins.iter().filter(|&&o| o < m).count() as u32)
        .collect()
}

fn kind_of_quotient(q: &[u32]) -> VertexKind {
    let k = q.len() as u32;
    if q.iter().enumerate().all(|(i, &v)| v == i as u32 + 1) {
        VertexKind::LinearIncreasing
    } else if q.iter().enumerate().all(|(i, &v)| v == k - i as u32) {
        VertexKind::LinearDecreasing
    } else {
        VertexKind::Prime
    }
}

fn internal(children: Vec<SitVertex>) -> SitVertex {
    let quotient = quotient_of(&children);
    let kind = kind_of_quotient(&quotient);
    debug_assert!(kind != VertexKind::Prime || is_simple(&quotient));
    SitVertex {
        span: Interval::new(
            children.first().unwrap().span.lo,
            children.last().unwrap().span.hi,
        ),
        kind,
        vmin: children.iter().map(|c| c.vmin).min().unwrap(),
        vmax: children.iter().map(|c| c.vmax).max().unwrap(),
        quotient,
        children,
        leaf_sign: None,
    }
}

/// Builds the strong interval tree by the default left-to-right stack scan.
///
/// One node per element is pushed; after each push the shortest suffix of the
/// stack whose values form a consecutive range is merged into a new vertex,
/// repeatedly. A two-node merge yields a linear vertex and splices children of
/// a same-kind linear child; a longer minimal merge is always prime.
pub fn build_sit(sigma: &SignedPermutation) -> SitTree {
    let n = sigma.size();
    let mut stack: Vec<SitVertex> = Vec::with_capacity(n);
    for pos in 1..=n {
        stack.push(SitVertex::leaf(pos, sigma.at(pos)));
        loop {
            // shortest mergeable suffix
            let mut min = u32::MAX;
            let mut max = 0u32;
            let mut total = 0usize;
            let mut merge_k = None;
            for (k, node) in stack.iter().rev().enumerate() {
                min = min.min(node.vmin);
                max = max.max(node.vmax);
                total += node.size();
                if k >= 1 && (max - min) as usize + 1 == total {
                    merge_k = Some(k + 1);
                    break;
                }
            }
            let Some(k) = merge_k else { break };
            let tail = stack.split_off(stack.len() - k);
            if k == 2 {
                let q = quotient_of(&tail);
                let kind = kind_of_quotient(&q);
                let mut children = Vec::new();
                for node in tail {
                    if node.kind == kind {
                        children.extend(node.children);
                    } else {
                        children.push(node);
                    }
                }
                stack.push(internal(children));
            } else {
                stack.push(internal(tail));
            }
        }
    }
    debug_assert_eq!(stack.len(), 1);
    SitTree {
        root: stack.pop().unwrap(),
        n,
    }
}

/// The strong intervals as position ranges, by the direct definition:
/// common intervals that commute with every common interval.
pub fn strong_intervals_direct(sigma: &SignedPermutation) -> Vec<Interval> {
    let commons = sigma.common_intervals();
    // Singletons and the full range commute with everything; only
    // non-trivial common intervals can rule a candidate out.
    let n = sigma.size();
    let nontrivial: Vec<Interval> = commons
        .iter()
        .map(|c| c.span)
        .filter(|s| s.len() > 1 && s.len() < n)
        .collect();
    commons
        .iter()
        .map(|c| c.span)
        .filter(|cand| nontrivial.iter().all(|o| cand.commutes_with(o)))
        .collect()
}

/// Builds the tree by filtering common intervals down to strong ones and
/// nesting them. Reference route used to cross-check [`build_sit`].
pub fn build_sit_naive(sigma: &SignedPermutation) -> SitTree {
    let n = sigma.size();
    let mut spans = strong_intervals_direct(sigma);
    // parents before children: sort by (lo asc, hi desc)
    spans.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.hi.cmp(&a.hi)));
    let mut stack: Vec<(Interval, Vec<SitVertex>)> = Vec::new();
    let mut done: Option<SitVertex> = None;
    for span in spans {
        while let Some((top, _)) = stack.last() {
            if span.lo > top.hi {
                let (s, children) = stack.pop().unwrap();
                let v = finish_vertex(sigma, s, children);
                if let Some((_, parent_children)) = stack.last_mut() {
                    parent_children.push(v);
                } else {
                    done = Some(v);
                }
            } else {
                break;
            }
        }
        stack.push((span, Vec::new()));
    }
    while let Some((s, children)) = stack.pop() {
        let v = finish_vertex(sigma, s, children);
        if let Some((_, parent_children)) = stack.last_mut() {
            parent_children.push(v);
        } else {
            done = Some(v);
        }
    }
    SitTree {
        root: done.expect("at least the full interval is strong"),
        n,
    }
}

fn finish_vertex(sigma: &SignedPermutation, span: Interval, children: Vec<SitVertex>) -> SitVertex {
    if span.len() == 1 {
        debug_assert!(children.is_empty());
        SitVertex::leaf(span.lo, sigma.at(span.lo))
    } else {
        debug_assert!(children.len() >= 2);
        internal(children)
    }
}

/// Inverse of [`build_sit`]: the unique permutation whose strong interval
/// tree is structurally equal to `t`. The tree is validated first.
pub fn tree_to_permutation(t: &SitTree) -> Result<SignedPermutation> {
    let violations = validate_tree(t);
    if let Some(v) = violations.first() {
        return Err(Error::InvalidTree(format!(
            "{} (at span {}..{})",
            v.rule, v.span.lo, v.span.hi
        )));
    }
    let mut values = vec![0i32; t.n];
    assign_values(&t.root, 1, &mut values);
    SignedPermutation::new(values)
}

fn assign_values(v: &SitVertex, m: u32, out: &mut [i32]) {
    if v.is_leaf() {
        let signed = match v.leaf_sign.unwrap() {
            Sign::Plus => m as i32,
            Sign::Minus => -(m as i32),
        };
        out[v.span.lo - 1] = signed;
        return;
    }
    let sizes: Vec<u32> = v.children.iter().map(|c| c.size() as u32).collect();
    for (i, child) in v.children.iter().enumerate() {
        let mut mi = m;
        for (j, &sj) in sizes.iter().enumerate() {
            if v.quotient[j] < v.quotient[i] {
                mi += sj;
            }
        }
        assign_values(child, mi, out);
    }
}

/// Checks the defining properties of the tree family; empty means valid.
pub fn validate_tree(t: &SitTree) -> Vec<Violation> {
    let mut out = Vec::new();
    if t.root.span.lo != 1 || t.root.span.hi != t.n {
        out.push(Violation {
            span: t.root.span,
            rule: format!("root span must be 1..{}", t.n),
        });
    }
    validate_vertex(&t.root, None, &mut out);
    out
}

fn validate_vertex(v: &SitVertex, parent_kind: Option<VertexKind>, out: &mut Vec<Violation>) {
    let mut fail = |rule: String| {
        out.push(Violation {
            span: v.span,
            rule,
        })
    };
    match v.kind {
        VertexKind::Leaf => {
            if v.span.len() != 1 || !v.children.is_empty() || !v.quotient.is_empty() {
                fail("leaf must be a childless singleton".into());
            }
            if v.leaf_sign.is_none() {
                fail("leaf must carry a sign".into());
            }
            return;
        }
        kind => {
            if v.leaf_sign.is_some() {
                fail("internal vertex must not carry a leaf sign".into());
            }
            if v.children.len() < 2 {
                fail("internal vertex must have at least two children".into());
            }
            if v.quotient.len() != v.children.len() {
                fail("quotient size must equal child count".into());
            } else {
                let mut sorted = v.quotient.clone();
                sorted.sort_unstable();
                if sorted != (1..=v.quotient.len() as u32).collect::<Vec<_>>() {
                    fail("quotient must be a permutation of 1..k".into());
                } else if kind_of_quotient(&v.quotient) != kind {
                    fail(format!("kind {:?} inconsistent with quotient", kind));
                } else if kind == VertexKind::Prime
                    && (v.quotient.len() < 4 || !is_simple(&v.quotient))
                {
                    fail("prime quotient must be simple of size >= 4".into());
                }
            }
            if let Some(pk) = parent_kind {
                if pk == kind
                    && matches!(
                        kind,
                        VertexKind::LinearIncreasing | VertexKind::LinearDecreasing
                    )
                {
                    fail("adjacent linear vertices of the same direction".into());
                }
            }
            // children partition the span left to right
            let mut expect = v.span.lo;
            for c in &v.children {
                if c.span.lo != expect {
                    fail("children must partition the span left to right".into());
                    break;
                }
                expect = c.span.hi + 1;
            }
            if expect != v.span.hi + 1 && v.children.len() >= 2 {
                fail("children must cover the span".into());
            }
        }
    }
    for c in &v.children {
        validate_vertex(c, Some(v.kind), out);
    }
}

/// A twin is a degree-2 vertex whose two children are both leaves.
pub fn count_twins(t: &SitTree) -> usize {
    let mut count = 0;
    t.root.walk(&mut |v| {
        if v.children.len() == 2 && v.children.iter().all(SitVertex::is_leaf) {
            count += 1;
        }
    });
    count
}

pub fn count_prime_vertices(t: &SitTree) -> usize {
    let mut count = 0;
    t.root.walk(&mut |v| {
        if v.kind == VertexKind::Prime {
            count += 1;
        }
    });
    count
}

pub fn count_internal_vertices(t: &SitTree) -> usize {
    let mut count = 0;
    t.root.walk(&mut |v| {
        if !v.is_leaf() {
            count += 1;
        }
    });
    count
}

/// Sum of subtree sizes over all non-root vertices (leaves count 1 each).
pub fn pathlength(t: &SitTree) -> u64 {
    let mut total = 0u64;
    t.root.walk(&mut |v| total += v.size() as u64);
    total - t.root.size() as u64
}

/// Prime root whose children are all leaves or twins; the dominant shape of
/// a large random permutation. Sizes below 4 cannot have a prime root.
pub fn shape_is_dominant(t: &SitTree) -> bool {
    if t.n < 4 || t.root.kind != VertexKind::Prime {
        return false;
    }
    t.root.children.iter().all(|c| {
        c.is_leaf() || (c.children.len() == 2 && c.children.iter().all(SitVertex::is_leaf))
    })
}

/// All vertex spans of the tree (leaves included), pre-order.
pub fn vertex_spans(t: &SitTree) -> Vec<Interval> {
    let mut spans = Vec::new();
    t.root.walk(&mut |v| spans.push(v.span));
    spans
}
