//! The simplicial nerve of a finite groupoid.
//!
//! Level 0 holds the objects; level p >= 1 holds the composable chains
//! (g_1, ..., g_p) with src(g_i) == tgt(g_{i+1}). Faces compose adjacent
//! entries or drop an end; degeneracies insert the unit arrow that keeps the
//! chain composable (slot 0 inserts the unit at tgt(g_1), slot i >= 1 the
//! unit at src(g_i), directly after g_i). With these conventions all five
//! simplicial identity families hold, which `check_simplicial_identities`
//! verifies exhaustively.
//!
//! Faces and degeneracies assume a groupoid that passes
//! [`validate_groupoid`](crate::groupoid::validate_groupoid): on a table with
//! missing entries they panic rather than guess.

use crate::error::{Error, Result};
use crate::groupoid::{Arr, FiniteGroupoid, Obj};
use crate::report::Report;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NerveTuple {
    Vertex(Obj),
    Chain(Vec<Arr>),
}

impl NerveTuple {
    pub fn level(&self) -> usize {
        match self {
            NerveTuple::Vertex(_) => 0,
            NerveTuple::Chain(entries) => entries.len(),
        }
    }

    pub fn entries(&self) -> &[Arr] {
        match self {
            NerveTuple::Vertex(_) => &[],
            NerveTuple::Chain(entries) => entries,
        }
    }

    /// Human-readable id, e.g. `x0` or `(r1,r2)`.
    pub fn display(&self, g: &FiniteGroupoid) -> String {
        match self {
            NerveTuple::Vertex(o) => g.oid(*o).to_string(),
            NerveTuple::Chain(entries) => {
                let parts: Vec<&str> = entries.iter().map(|&a| g.aid(a)).collect();
                format!("({})", parts.join(","))
            }
        }
    }
}

/// Number of level-p cells, computed without enumerating them.
pub fn nerve_size(g: &FiniteGroupoid, p: usize) -> BigInt {
    if p == 0 {
        return BigInt::from(g.n_objects());
    }
    // counts[o] = chains of the current length whose rightmost source is o
    let mut counts: Vec<BigInt> = vec![BigInt::from(0); g.n_objects()];
    for a in g.arrows() {
        counts[g.src(a).0 as usize] += 1;
    }
    for _ in 1..p {
        let mut next: Vec<BigInt> = vec![BigInt::from(0); g.n_objects()];
        for b in g.arrows() {
            let tail = counts[g.tgt(b).0 as usize].clone();
            next[g.src(b).0 as usize] += tail;
        }
        counts = next;
    }
    counts.into_iter().sum()
}

/// One materialized nerve level, tuples in lexicographic order of their
/// arrow indices (object index at level 0). The order is the canonical basis
/// order for cochain coordinates.
#[derive(Debug, Clone)]
pub struct NerveLevel {
    pub level: usize,
    pub tuples: Vec<NerveTuple>,
}

impl NerveLevel {
    pub fn build(g: &FiniteGroupoid, level: usize, max_cells: u64) -> Result<NerveLevel> {
        let cells = nerve_size(g, level);
        if cells > BigInt::from(max_cells) {
            return Err(Error::TooManyCells { level, cells, cap: max_cells });
        }
        let mut tuples = Vec::with_capacity(cells.to_usize().unwrap_or(0));
        if level == 0 {
            tuples.extend(g.objects().map(NerveTuple::Vertex));
        } else {
            let mut chain: Vec<Arr> = Vec::with_capacity(level);
            build_chains(g, level, &mut chain, &mut tuples);
        }
        debug_assert!(tuples.windows(2).all(|w| w[0] < w[1]));
        Ok(NerveLevel { level, tuples })
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuple(&self, i: usize) -> &NerveTuple {
        &self.tuples[i]
    }

    pub fn index_of(&self, t: &NerveTuple) -> Option<usize> {
        self.tuples.binary_search(t).ok()
    }
}

fn build_chains(
    g: &FiniteGroupoid,
    remaining: usize,
    chain: &mut Vec<Arr>,
    out: &mut Vec<NerveTuple>,
) {
    if remaining == 0 {
        out.push(NerveTuple::Chain(chain.clone()));
        return;
    }
    match chain.last() {
        None => {
            for a in g.arrows() {
                chain.push(a);
                build_chains(g, remaining - 1, chain, out);
                chain.pop();
            }
        }
        Some(&prev) => {
            // arrows_with_target is ascending, so output stays lexicographic
            for &a in g.arrows_with_target(g.src(prev)) {
                chain.push(a);
                build_chains(g, remaining - 1, chain, out);
                chain.pop();
            }
        }
    }
}

/// Face i of a level-p tuple (0 <= i <= p, p >= 1): face 0 drops the first
/// arrow, face p the last, and an inner face composes the adjacent pair. At
/// level 1, face 0 is the source vertex and face 1 the target.
pub fn face(g: &FiniteGroupoid, t: &NerveTuple, i: usize) -> NerveTuple {
    let p = t.level();
    assert!(p >= 1, "faces start at level 1");
    assert!(i <= p, "face index {i} out of range at level {p}");
    let entries = t.entries();
    if p == 1 {
        return if i == 0 {
            NerveTuple::Vertex(g.src(entries[0]))
        } else {
            NerveTuple::Vertex(g.tgt(entries[0]))
        };
    }
    let mut next = Vec::with_capacity(p - 1);
    if i == 0 {
        next.extend_from_slice(&entries[1..]);
    } else if i == p {
        next.extend_from_slice(&entries[..p - 1]);
    } else {
        next.extend_from_slice(&entries[..i - 1]);
        let merged = g
            .compose(entries[i - 1], entries[i])
            .expect("face on a chain from a validated groupoid");
        next.push(merged);
        next.extend_from_slice(&entries[i + 1..]);
    }
    NerveTuple::Chain(next)
}

/// Degeneracy i of a level-p tuple (0 <= i <= p): slot 0 prepends the unit
/// at the chain's target, slot i >= 1 inserts the unit at src(g_i) directly
/// after g_i. A vertex becomes the chain holding its unit arrow.
pub fn degeneracy(g: &FiniteGroupoid, t: &NerveTuple, i: usize) -> NerveTuple {
    let p = t.level();
    assert!(i <= p, "degeneracy index {i} out of range at level {p}");
    match t {
        NerveTuple::Vertex(o) => NerveTuple::Chain(vec![g.unit(*o)]),
        NerveTuple::Chain(entries) => {
            let mut next = Vec::with_capacity(p + 1);
            if i == 0 {
                next.push(g.unit(g.tgt(entries[0])));
                next.extend_from_slice(entries);
            } else {
                next.extend_from_slice(&entries[..i]);
                next.push(g.unit(g.src(entries[i - 1])));
                next.extend_from_slice(&entries[i..]);
            }
            NerveTuple::Chain(next)
        }
    }
}

fn chain_is_composable(g: &FiniteGroupoid, t: &NerveTuple) -> bool {
    t.entries().windows(2).all(|w| g.src(w[0]) == g.tgt(w[1]))
}

/// Exhaustively verify the five simplicial identity families on every tuple
/// up to `max_level`, plus composability of all face and degeneracy images.
pub fn check_simplicial_identities(
    g: &FiniteGroupoid,
    max_level: usize,
    max_cells: u64,
) -> Result<Report> {
    let mut r = Report::new(format!("simplicial identities up to level {max_level}"));
    r.law("faces and degeneracies stay composable");
    r.law("face-face: d_i d_j = d_{j-1} d_i for i < j");
    r.law("degeneracy-degeneracy: s_i s_j = s_{j+1} s_i for i <= j");
    r.law("face-degeneracy: d_i s_j = s_{j-1} d_i for i < j");
    r.law("face-degeneracy: d_j s_j = d_{j+1} s_j = id");
    r.law("face-degeneracy: d_i s_j = s_j d_{i-1} for i > j + 1");

    for p in 0..=max_level {
        let level = NerveLevel::build(g, p, max_cells)?;
        for t in &level.tuples {
            for i in 0..=p {
                let s = degeneracy(g, t, i);
                if !chain_is_composable(g, &s) {
                    r.violation(
                        "faces and degeneracies stay composable",
                        format!("s_{i} {}", t.display(g)),
                    );
                }
            }
            if p >= 1 {
                for i in 0..=p {
                    if !chain_is_composable(g, &face(g, t, i)) {
                        r.violation(
                            "faces and degeneracies stay composable",
                            format!("d_{i} {}", t.display(g)),
                        );
                    }
                }
            }

            if p >= 2 {
                for j in 1..=p {
                    for i in 0..j {
                        let lhs = face(g, &face(g, t, j), i);
                        let rhs = face(g, &face(g, t, i), j - 1);
                        if lhs != rhs {
                            r.violation(
                                "face-face: d_i d_j = d_{j-1} d_i for i < j",
                                format!(
                                    "d_{i} d_{j} {} = {} but d_{} d_{i} gives {}",
                                    t.display(g),
                                    lhs.display(g),
                                    j - 1,
                                    rhs.display(g)
                                ),
                            );
                        }
                    }
                }
            }

            for j in 0..=p {
                for i in 0..=j {
                    let lhs = degeneracy(g, &degeneracy(g, t, j), i);
                    let rhs = degeneracy(g, &degeneracy(g, t, i), j + 1);
                    if lhs != rhs {
                        r.violation(
                            "degeneracy-degeneracy: s_i s_j = s_{j+1} s_i for i <= j",
                            format!("s_{i} s_{j} {}", t.display(g)),
                        );
                    }
                }
            }

            for j in 0..=p {
                let s = degeneracy(g, t, j);
                for i in 0..=p + 1 {
                    let lhs = face(g, &s, i);
                    if i == j || i == j + 1 {
                        if &lhs != t {
                            r.violation(
                                "face-degeneracy: d_j s_j = d_{j+1} s_j = id",
                                format!("d_{i} s_{j} {} = {}", t.display(g), lhs.display(g)),
                            );
                        }
                    } else if i < j {
                        let rhs = degeneracy(g, &face(g, t, i), j - 1);
                        if lhs != rhs {
                            r.violation(
                                "face-degeneracy: d_i s_j = s_{j-1} d_i for i < j",
                                format!("d_{i} s_{j} {}", t.display(g)),
                            );
                        }
                    } else {
                        // i > j + 1; needs p >= 1 and that holds since i <= p + 1
                        let rhs = degeneracy(g, &face(g, t, i - 1), j);
                        if lhs != rhs {
                            r.violation(
                                "face-degeneracy: d_i s_j = s_j d_{i-1} for i > j + 1",
                                format!("d_{i} s_{j} {}", t.display(g)),
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(r)
}
