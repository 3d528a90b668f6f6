//! Immutable simple undirected graphs on at most 64 vertices.
//!
//! Each neighborhood is a single `u64` bitmask, so adjacency queries and
//! set intersections are one machine instruction. All constructors and
//! combinators return new values; nothing mutates a built graph.

use crate::error::{Error, Result};

/// Largest representable vertex count: one `u64` word per neighborhood.
pub const MAX_ORDER: usize = 64;

#[inline(always)]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the lowest `n` bits set (`n <= 64`).
#[inline(always)]
pub(crate) const fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        Err(Error::Size {
            requested: n,
            cap: MAX_ORDER,
        })
    } else {
        Ok(())
    }
}

/// A subset of the vertices of some graph, as a bitmask.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_ORDER);
        VertexSet(bit(v))
    }

    /// All vertices `0..n`.
    pub fn full(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_ORDER && self.0 & bit(v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < MAX_ORDER);
        self.0 |= bit(v);
    }

    /// Ascending iterator over the members.
    pub fn iter(self) -> BitIter {
        BitIter(self.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// Iterator over the set bits of a mask, in ascending order.
#[derive(Clone)]
pub struct BitIter(pub(crate) u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// Immutable simple undirected graph; `adj[v]` is the neighborhood of `v`.
///
/// Invariants (checked by constructors, preserved by combinators):
/// symmetric adjacency, no self-loops, no bits at positions `>= order`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    order: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Graph {
            order: n,
            adj: vec![0; n],
        })
    }

    /// The complete graph on `n` vertices.
    pub fn complete(n: usize) -> Result<Self> {
        check_order(n)?;
        let mask = low_mask(n);
        let adj = (0..n).map(|v| mask & !bit(v)).collect();
        Ok(Graph { order: n, adj })
    }

    /// `floor(n/2)` independent edges `{2i, 2i+1}`, plus one isolated
    /// vertex when `n` is odd.
    pub fn matching(n: usize) -> Result<Self> {
        check_order(n)?;
        let mut adj = vec![0u64; n];
        for i in 0..n / 2 {
            adj[2 * i] |= bit(2 * i + 1);
            adj[2 * i + 1] |= bit(2 * i);
        }
        Ok(Graph { order: n, adj })
    }

    /// Fan with `c` triangles: vertex 0 joined to a matching on `2c`
    /// vertices, with matched pairs `{2i-1, 2i}` for `1 <= i <= c`.
    pub fn fan(c: usize) -> Result<Self> {
        let n = 2 * c + 1;
        check_order(n)?;
        let mut adj = vec![bit(0); n];
        adj[0] = low_mask(n) & !1;
        for i in 1..=c {
            adj[2 * i - 1] |= bit(2 * i);
            adj[2 * i] |= bit(2 * i - 1);
        }
        Ok(Graph { order: n, adj })
    }

    /// Builds a graph from an explicit edge list. Duplicate edges are
    /// collapsed; self-loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        check_order(n)?;
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Argument(format!(
                    "edge ({u},{v}) out of range for order {n}"
                )));
            }
            if u == v {
                return Err(Error::Argument(format!("self-loop at vertex {u}")));
            }
            adj[u] |= bit(v);
            adj[v] |= bit(u);
        }
        Ok(Graph { order: n, adj })
    }

    pub(crate) fn from_adj_unchecked(order: usize, adj: Vec<u64>) -> Self {
        let g = Graph { order, adj };
        debug_assert!(g.validate().is_ok());
        g
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline(always)]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    #[inline(always)]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).max().unwrap_or(0)
    }

    /// Mask of all vertices.
    #[inline(always)]
    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.order)
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Ascending `(u, v)` pairs with `u < v` and `uv` an edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for v in 1..self.order {
            for u in BitIter(self.adj[v] & low_mask(v)) {
                out.push((u, v));
            }
        }
        out
    }

    /// Copy of this graph with edge `uv` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Graph {
        debug_assert!(u < self.order && v < self.order && u != v);
        let mut adj = self.adj.clone();
        adj[u] |= bit(v);
        adj[v] |= bit(u);
        Graph {
            order: self.order,
            adj,
        }
    }

    /// Copy of this graph with edge `uv` removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        debug_assert!(u < self.order && v < self.order);
        let mut adj = self.adj.clone();
        adj[u] &= !bit(v);
        adj[v] &= !bit(u);
        Graph {
            order: self.order,
            adj,
        }
    }

    /// Disjoint union; the vertices of `other` are shifted up by
    /// `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.order + other.order;
        check_order(n)?;
        let mut adj = Vec::with_capacity(n);
        adj.extend_from_slice(&self.adj);
        adj.extend(other.adj.iter().map(|a| a << self.order));
        Ok(Graph { order: n, adj })
    }

    /// Join: disjoint union plus every edge between the two parts.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(other)?;
        let left = low_mask(self.order);
        let right = low_mask(g.order) & !left;
        for v in 0..self.order {
            g.adj[v] |= right;
        }
        for v in self.order..g.order {
            g.adj[v] |= left;
        }
        Ok(g)
    }

    /// Induced subgraph on `s`, relabeled order-preservingly to
    /// `0..s.len()`.
    ///
    /// Panics if `s` contains bits at positions `>= order`.
    pub fn induced(&self, s: VertexSet) -> Graph {
        assert!(
            s.bits() & !self.vertex_mask() == 0,
            "vertex set {:#x} lies outside order {}",
            s.bits(),
            self.order
        );
        let kept: Vec<usize> = s.iter().collect();
        let n = kept.len();
        let mut adj = vec![0u64; n];
        for (new_u, &old_u) in kept.iter().enumerate() {
            for (new_v, &old_v) in kept.iter().enumerate() {
                if self.has_edge(old_u, old_v) {
                    adj[new_u] |= bit(new_v);
                }
            }
        }
        Graph { order: n, adj }
    }

    /// Relabels by `perm`, where `perm[v]` is the new index of `v`.
    ///
    /// Panics unless `perm` is a permutation of `0..order`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order, "permutation length mismatch");
        let mut seen = 0u64;
        for &p in perm {
            assert!(p < self.order && seen & bit(p) == 0, "not a permutation");
            seen |= bit(p);
        }
        let mut adj = vec![0u64; self.order];
        for u in 0..self.order {
            for v in BitIter(self.adj[u]) {
                adj[perm[u]] |= bit(perm[v]);
            }
        }
        Graph {
            order: self.order,
            adj,
        }
    }

    /// Complement within the same vertex set.
    pub fn complement(&self) -> Graph {
        let mask = self.vertex_mask();
        let adj = (0..self.order)
            .map(|v| mask & !self.adj[v] & !bit(v))
            .collect();
        Graph {
            order: self.order,
            adj,
        }
    }

    /// Checks the representation invariants: symmetry, irreflexivity,
    /// and no bits at positions `>= order`.
    pub fn validate(&self) -> Result<()> {
        if self.adj.len() != self.order {
            return Err(Error::Argument("adjacency length != order".into()));
        }
        let mask = low_mask(self.order);
        for v in 0..self.order {
            if self.adj[v] & !mask != 0 {
                return Err(Error::Argument(format!("vertex {v} has out-of-range bits")));
            }
            if self.adj[v] & bit(v) != 0 {
                return Err(Error::Argument(format!("self-loop at vertex {v}")));
            }
        }
        for u in 0..self.order {
            for v in BitIter(self.adj[u]) {
                if self.adj[v] & bit(u) == 0 {
                    return Err(Error::Argument(format!("asymmetric edge ({u},{v})")));
                }
            }
        }
        Ok(())
    }

    /// Degree multiset, ascending. Cheap isomorphism pre-filter.
    pub fn degree_sequence(&self) -> Vec<u8> {
        let mut d: Vec<u8> = self.adj.iter().map(|a| a.count_ones() as u8).collect();
        d.sort_unstable();
        d
    }
}
