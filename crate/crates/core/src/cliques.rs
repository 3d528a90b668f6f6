//! Exact s-clique counting via ordered extension over neighborhood
//! bitmask intersections.

use crate::error::{Error, Result};
use crate::graph::{bit, BitIter, Graph, VertexSet};

/// Mask of vertices strictly above `v`.
#[inline(always)]
fn above(v: usize) -> u64 {
    // v <= 63; shifting by 64 is UB, so split the top case out.
    if v >= 63 {
        0
    } else {
        !((bit(v) << 1) - 1)
    }
}

/// Counts extensions of the current partial clique: `cand` holds the
/// common neighbors above the last chosen vertex.
fn extend(adj: &[u64], cand: u64, need: usize) -> u64 {
    if need == 0 {
        return 1;
    }
    if (cand.count_ones() as usize) < need {
        return 0;
    }
    if need == 1 {
        return cand.count_ones() as u64;
    }
    let mut total = 0u64;
    for v in BitIter(cand) {
        total += extend(adj, cand & adj[v] & above(v), need - 1);
    }
    total
}

/// True iff some clique of size `need` lies inside `cand` (extension with
/// early exit). `cand` members need not be above any pivot.
fn exists(adj: &[u64], cand: u64, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    if (cand.count_ones() as usize) < need {
        return false;
    }
    if need == 1 {
        return true;
    }
    for v in BitIter(cand) {
        if exists(adj, cand & adj[v] & above(v), need - 1) {
            return true;
        }
    }
    false
}

/// Worst-case guard: refuse parameter pairs whose count could not be
/// represented in a 64-bit accumulator.
fn capacity_guard(n: usize, s: usize) -> Result<()> {
    let mut worst: u128 = 1;
    let r = s.min(n.saturating_sub(s));
    for i in 0..r {
        worst = worst * (n - i) as u128 / (i + 1) as u128;
        if worst > (1u128 << 63) {
            return Err(Error::Capacity(format!(
                "C({n},{s}) exceeds the 64-bit counting budget"
            )));
        }
    }
    Ok(())
}

/// Exact number of s-cliques in `g`.
///
/// `s = 0` counts the empty clique once; `s = 1` counts vertices;
/// `s > order` gives 0.
pub fn count_cliques(g: &Graph, s: usize) -> Result<u64> {
    let n = g.order();
    capacity_guard(n, s)?;
    if s == 0 {
        return Ok(1);
    }
    if s > n {
        return Ok(0);
    }
    if s == 1 {
        return Ok(n as u64);
    }
    let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v)).collect();
    Ok(extend(&adj, g.vertex_mask(), s))
}

/// Number of s-cliques whose vertex set contains every vertex of
/// `roots`. Zero when the roots are not themselves a clique, or when
/// `s < |roots|`.
pub fn count_cliques_through(g: &Graph, s: usize, roots: VertexSet) -> Result<u64> {
    let n = g.order();
    capacity_guard(n, s)?;
    if roots.bits() & !g.vertex_mask() != 0 {
        return Err(Error::Argument(format!(
            "root set {:#x} lies outside order {n}",
            roots.bits()
        )));
    }
    let r = roots.len();
    if s < r {
        return Ok(0);
    }
    // Roots must be pairwise adjacent.
    for v in roots.iter() {
        if roots.bits() & !bit(v) & !g.neighbors(v) != 0 {
            return Ok(0);
        }
    }
    let mut cand = g.vertex_mask() & !roots.bits();
    for v in roots.iter() {
        cand &= g.neighbors(v);
    }
    let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v)).collect();
    Ok(extend(&adj, cand, s - r))
}

/// The set of vertices lying in at least one s-clique (`s >= 1`).
///
/// Inducing on the result preserves the total s-clique count.
pub fn clique_support(g: &Graph, s: usize) -> VertexSet {
    assert!(s >= 1, "clique support requires s >= 1");
    let n = g.order();
    let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v)).collect();
    let mut support = VertexSet::EMPTY;
    for v in 0..n {
        if exists(&adj, adj[v], s - 1) {
            support.insert(v);
        }
    }
    support
}
