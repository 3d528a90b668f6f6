//! Vertex-disjoint packing of small connected patterns.
//!
//! The primary question is kP3-freeness: a P3 copy is a center vertex
//! adjacent to two distinct others (the ends need not be adjacent, so a
//! triangle hosts one). Packing for P3 runs a dedicated branch and
//! bound; arbitrary patterns go through a nested embedding search.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::{bit, low_mask, BitIter, Graph};

/// General-pattern packing is capped at this many copies; the embedding
/// search is exponential in k.
pub const MAX_PATTERN_COPIES: usize = 6;

/// A small connected pattern used as the forbidden unit in `kH`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternGraph {
    graph: Graph,
}

impl PatternGraph {
    /// Wraps a graph as a pattern; it must be connected with
    /// `1 <= order <= 10`.
    pub fn new(graph: Graph) -> Result<Self> {
        let n = graph.order();
        if n == 0 || n > 10 {
            return Err(Error::Argument(format!(
                "pattern order {n} outside the supported range 1..=10"
            )));
        }
        if !is_connected(&graph) {
            return Err(Error::Argument("pattern graph must be connected".into()));
        }
        Ok(PatternGraph { graph })
    }

    /// The path on three vertices.
    pub fn p3() -> Self {
        PatternGraph {
            graph: Graph::from_edges(3, &[(0, 1), (1, 2)]).expect("P3 fits"),
        }
    }

    /// The path on `k >= 1` vertices.
    pub fn path(k: usize) -> Result<Self> {
        let edges: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
        PatternGraph::new(Graph::from_edges(k, &edges)?)
    }

    /// The complete graph on `k >= 1` vertices.
    pub fn clique(k: usize) -> Result<Self> {
        PatternGraph::new(Graph::complete(k)?)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    /// True iff this pattern is the path on three vertices.
    pub fn is_p3(&self) -> bool {
        self.graph.order() == 3 && self.graph.edge_count() == 2
    }
}

fn is_connected(g: &Graph) -> bool {
    let n = g.order();
    if n <= 1 {
        return true;
    }
    let mut seen = 1u64;
    let mut frontier = vec![0usize];
    while let Some(v) = frontier.pop() {
        for w in BitIter(g.neighbors(v) & !seen) {
            seen |= bit(w);
            frontier.push(w);
        }
    }
    seen == g.vertex_mask()
}

// ---------------------------------------------------------------------
// P3-specific branch and bound
// ---------------------------------------------------------------------

/// All vertex triples within `avail` that contain `v` and host a P3,
/// enumerated center-first in ascending index order, deduplicated. The
/// center of a triple through `v` is `v` itself or a neighbor of `v`.
fn p3_triples_through(g: &Graph, v: usize, avail: u64) -> Vec<u64> {
    let mut triples = Vec::new();
    let mut seen = HashSet::new();
    let centers = (g.neighbors(v) | bit(v)) & avail;
    for center in BitIter(centers) {
        let nb = g.neighbors(center) & avail;
        if nb.count_ones() < 2 {
            continue;
        }
        if center == v {
            for a in BitIter(nb) {
                for b in BitIter(nb & low_mask(a)) {
                    let t = bit(center) | bit(a) | bit(b);
                    if seen.insert(t) {
                        triples.push(t);
                    }
                }
            }
        } else if nb & bit(v) != 0 {
            for b in BitIter(nb & !bit(v)) {
                let t = bit(center) | bit(v) | bit(b);
                if seen.insert(t) {
                    triples.push(t);
                }
            }
        }
    }
    triples
}

/// First triple through `v` in the same order `p3_triples_through` uses.
fn first_p3_triple_through(g: &Graph, v: usize, avail: u64) -> Option<u64> {
    let centers = (g.neighbors(v) | bit(v)) & avail;
    for center in BitIter(centers) {
        let nb = g.neighbors(center) & avail;
        if nb.count_ones() < 2 {
            continue;
        }
        if center == v {
            let a = nb.trailing_zeros() as usize;
            let rest = nb & !bit(a);
            let b = rest.trailing_zeros() as usize;
            return Some(bit(center) | bit(a) | bit(b));
        } else if nb & bit(v) != 0 {
            let b = (nb & !bit(v)).trailing_zeros() as usize;
            return Some(bit(center) | bit(v) | bit(b));
        }
    }
    None
}

/// Lowest-index vertex of `avail` that lies on some P3 within `avail`.
fn lowest_p3_vertex(g: &Graph, avail: u64) -> Option<usize> {
    for v in BitIter(avail) {
        // v as an end: some neighbor has a second available neighbor.
        // v as a center: two available neighbors.
        let nb = g.neighbors(v) & avail;
        if nb.count_ones() >= 2 {
            return Some(v);
        }
        for c in BitIter(nb) {
            if (g.neighbors(c) & avail & !bit(v)).count_ones() >= 1 {
                return Some(v);
            }
        }
    }
    None
}

/// Deterministic greedy packing: repeatedly remove the first triple
/// through the lowest usable vertex. Lower-bounds the optimum.
fn greedy_pack(g: &Graph, mut avail: u64) -> usize {
    let mut found = 0;
    while let Some(v) = lowest_p3_vertex(g, avail) {
        match first_p3_triple_through(g, v, avail) {
            Some(t) => {
                avail &= !t;
                found += 1;
            }
            None => avail &= !bit(v),
        }
    }
    found
}

/// Returns true to request early termination (target reached).
fn bnb(g: &Graph, avail: u64, found: usize, best: &mut usize, target: Option<usize>) -> bool {
    let improved = found + greedy_pack(g, avail);
    if improved > *best {
        *best = improved;
    }
    if let Some(t) = target {
        if *best >= t {
            return true;
        }
    }
    // No branch below can strictly beat the incumbent.
    if found + (avail.count_ones() as usize) / 3 <= *best {
        return false;
    }
    let Some(v) = lowest_p3_vertex(g, avail) else {
        return false;
    };
    for t in p3_triples_through(g, v, avail) {
        if bnb(g, avail & !t, found + 1, best, target) {
            return true;
        }
    }
    bnb(g, avail & !bit(v), found, best, target)
}

/// Exact maximum number of pairwise vertex-disjoint P3 copies in `g`.
pub fn max_p3_packing(g: &Graph) -> usize {
    let mut best = 0;
    bnb(g, g.vertex_mask(), 0, &mut best, None);
    best
}

/// Decision form with early exit: does `g` pack at least `k` disjoint
/// P3 copies?
pub fn p3_packing_at_least(g: &Graph, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if g.order() < 3 * k {
        return false;
    }
    let mut best = 0;
    bnb(g, g.vertex_mask(), 0, &mut best, Some(k))
}

// ---------------------------------------------------------------------
// General pattern embedding
// ---------------------------------------------------------------------

/// BFS order of pattern vertices so that each vertex after the first is
/// adjacent to an earlier one (patterns are connected).
fn embedding_order(h: &Graph) -> Vec<usize> {
    let n = h.order();
    let mut order = vec![0usize];
    let mut placed = 1u64;
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| placed & bit(v) == 0 && h.neighbors(v) & placed != 0)
            .max_by_key(|&v| (h.neighbors(v) & placed).count_ones())
            .expect("pattern is connected");
        order.push(next);
        placed |= bit(next);
    }
    order
}

fn embed_rec(
    g: &Graph,
    h: &Graph,
    order: &[usize],
    images: &mut Vec<usize>,
    used: u64,
    allowed: u64,
    sink: &mut dyn FnMut(u64) -> bool,
) -> bool {
    if images.len() == order.len() {
        // Signal from the sink: true aborts the enumeration.
        return sink(used);
    }
    let hv = order[images.len()];
    let hdeg = h.degree(hv);
    let mut cand = allowed & !used;
    for (i, &hu) in order[..images.len()].iter().enumerate() {
        if h.has_edge(hu, hv) {
            cand &= g.neighbors(images[i]);
        }
    }
    for v in BitIter(cand) {
        if g.degree(v) < hdeg {
            continue;
        }
        images.push(v);
        if embed_rec(g, h, order, images, used | bit(v), allowed, sink) {
            images.pop();
            return true;
        }
        images.pop();
    }
    false
}

/// True iff `h` embeds into `g[allowed]` as a (not necessarily induced)
/// subgraph.
fn embeds_within(g: &Graph, h: &PatternGraph, allowed: u64) -> bool {
    let hg = h.graph();
    if hg.order() > (allowed.count_ones() as usize) {
        return false;
    }
    let order = embedding_order(hg);
    let mut images = Vec::with_capacity(hg.order());
    embed_rec(g, hg, &order, &mut images, 0, allowed, &mut |_| true)
}

/// All distinct vertex sets of embeddings of `h` into `g[allowed]`,
/// ascending as masks.
fn embedding_masks(g: &Graph, h: &PatternGraph, allowed: u64) -> Vec<u64> {
    let hg = h.graph();
    let order = embedding_order(hg);
    let mut images = Vec::with_capacity(hg.order());
    let mut seen = HashSet::new();
    embed_rec(g, hg, &order, &mut images, 0, allowed, &mut |mask| {
        seen.insert(mask);
        false
    });
    let mut masks: Vec<u64> = seen.into_iter().collect();
    masks.sort_unstable();
    masks
}

/// True iff an embedding of `h` into `g` exists.
pub fn contains_subgraph(g: &Graph, h: &PatternGraph) -> bool {
    embeds_within(g, h, g.vertex_mask())
}

fn disjoint_rec(
    g: &Graph,
    h: &PatternGraph,
    k: usize,
    allowed: u64,
    memo: &mut HashMap<(u64, usize), bool>,
) -> bool {
    if k == 0 {
        return true;
    }
    if (allowed.count_ones() as usize) < k * h.order() {
        return false;
    }
    if let Some(&hit) = memo.get(&(allowed, k)) {
        return hit;
    }
    let mut ok = false;
    for mask in embedding_masks(g, h, allowed) {
        if disjoint_rec(g, h, k - 1, allowed & !mask, memo) {
            ok = true;
            break;
        }
    }
    memo.insert((allowed, k), ok);
    ok
}

/// True iff `g` contains `k` pairwise vertex-disjoint copies of `h`.
///
/// Runs a nested embedding search over used-vertex masks; `k` is capped
/// at [`MAX_PATTERN_COPIES`] (a capacity error beyond).
pub fn has_k_disjoint(g: &Graph, h: &PatternGraph, k: usize) -> Result<bool> {
    if k == 0 {
        return Ok(true);
    }
    if k > MAX_PATTERN_COPIES {
        return Err(Error::Capacity(format!(
            "packing {k} pattern copies exceeds the cap of {MAX_PATTERN_COPIES}"
        )));
    }
    let mut memo = HashMap::new();
    Ok(disjoint_rec(g, h, k, g.vertex_mask(), &mut memo))
}
