//! Builders for the candidate extremal graphs: the clique-plus-matching
//! union family, the clique-join-matching family, and the two
//! general-pattern variants that wrap a caller-supplied extremal graph.
//!
//! Each builder returns the maximal member of its family (every optional
//! matching edge present).

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::packing::{contains_subgraph, PatternGraph};

/// `K_{3k-1}` disjoint-union a maximal matching on the remaining
/// `n - 3k + 1` vertices. Free of k disjoint P3 copies by construction.
/// Requires `n >= 3k - 1`, `k >= 1`.
pub fn build_conjecture_union(n: usize, k: usize) -> Result<Graph> {
    if k < 1 || n + 1 < 3 * k {
        return Err(Error::Argument(format!(
            "union construction requires n >= 3k-1 >= 2, got n={n}, k={k}"
        )));
    }
    let clique = Graph::complete(3 * k - 1)?;
    let rest = Graph::matching(n - (3 * k - 1))?;
    clique.disjoint_union(&rest)
}

/// `K_{k-1}` joined to a maximal matching on `n - k + 1` vertices; its
/// s-clique count equals `f(n,k,s)` for every s. Requires `n >= k >= 1`.
pub fn build_conjecture_join(n: usize, k: usize) -> Result<Graph> {
    if k < 1 || n < k {
        return Err(Error::Argument(format!(
            "join construction requires n >= k >= 1, got n={n}, k={k}"
        )));
    }
    let clique = Graph::complete(k - 1)?;
    let rest = Graph::matching(n - k + 1)?;
    clique.join(&rest)
}

fn check_extremal_input(h: &PatternGraph, hx: &Graph, expected_order: usize) -> Result<()> {
    if hx.order() != expected_order {
        return Err(Error::Argument(format!(
            "extremal part has order {}, expected {expected_order}",
            hx.order()
        )));
    }
    if contains_subgraph(hx, h) {
        return Err(Error::Construction(
            "supplied extremal graph contains the forbidden pattern".into(),
        ));
    }
    Ok(())
}

/// `K_{km-1}` disjoint-union a caller-supplied H-free extremal graph on
/// `n - km + 1` vertices, where `m = |V(H)|`. Any k disjoint copies of a
/// connected H would need one copy inside each part, which neither part
/// can host, so the result is kH-free whenever `hx` is H-free (checked).
pub fn build_union_extremal(n: usize, k: usize, h: &PatternGraph, hx: &Graph) -> Result<Graph> {
    let m = h.order();
    if k < 1 || n + 1 < k * m {
        return Err(Error::Argument(format!(
            "union construction requires n >= km-1, got n={n}, k={k}, m={m}"
        )));
    }
    check_extremal_input(h, hx, n - (k * m - 1))?;
    Graph::complete(k * m - 1)?.disjoint_union(hx)
}

/// `K_{k-1}` joined to a caller-supplied H-free extremal graph on
/// `n - k + 1` vertices. kH-free whenever `hx` is H-free (checked): a
/// copy of H avoiding the join clique would lie inside `hx`.
pub fn build_join_extremal(n: usize, k: usize, h: &PatternGraph, hx: &Graph) -> Result<Graph> {
    if k < 1 || n < k {
        return Err(Error::Argument(format!(
            "join construction requires n >= k >= 1, got n={n}, k={k}"
        )));
    }
    check_extremal_input(h, hx, n - k + 1)?;
    Graph::complete(k - 1)?.join(hx)
}
