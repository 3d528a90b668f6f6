//! Exact canonical labeling.
//!
//! Iterated degree refinement drives a backtracking search over the
//! individualization tree; discovered automorphisms prune branches whose
//! subtrees can only repeat already-seen leaves. The canonical form is
//! the lexicographically least packed adjacency over the tree's leaves,
//! which is invariant under relabeling, so two graphs have equal labels
//! exactly when they are isomorphic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{bit, BitIter, Graph};
use crate::graph6;

/// Isomorphism-invariant normal form: the graph6 encoding of the
/// canonically relabeled graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalLabel(String);

impl CanonicalLabel {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    /// Decodes the label back into its representative graph.
    pub fn to_graph(&self) -> Graph {
        graph6::decode_str(&self.0).expect("canonical labels are valid graph6")
    }
}

impl fmt::Display for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalLabel({})", self.0)
    }
}

/// Canonical label of `g`.
pub fn canonical_label(g: &Graph) -> CanonicalLabel {
    canonical_with_perm(g).0
}

/// Canonical label together with one relabeling `perm` achieving it
/// (`perm[v]` is the canonical position of vertex `v`).
pub fn canonical_with_perm(g: &Graph) -> (CanonicalLabel, Vec<usize>) {
    let n = g.order();
    if n <= 1 {
        let label = CanonicalLabel(graph6::encode_string(g));
        return (label, (0..n).collect());
    }

    let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v)).collect();
    let mut search = Search {
        adj: &adj,
        n,
        best_body: None,
        best_perm: Vec::new(),
        best_inv: Vec::new(),
        gens: Vec::new(),
        path: Vec::new(),
    };
    search.explore(vec![g.vertex_mask()]);

    let perm = search.best_perm;
    let canon = g.permute(&perm);
    (CanonicalLabel(graph6::encode_string(&canon)), perm)
}

/// True iff `a` and `b` are isomorphic.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order()
        && a.degree_sequence() == b.degree_sequence()
        && canonical_label(a) == canonical_label(b)
}

const MAX_STORED_GENS: usize = 4096;

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    best_body: Option<Vec<u8>>,
    best_perm: Vec<usize>,
    best_inv: Vec<usize>,
    gens: Vec<Vec<usize>>,
    path: Vec<usize>,
}

impl Search<'_> {
    fn explore(&mut self, mut cells: Vec<u64>) {
        refine(self.adj, &mut cells);
        let target = cells.iter().position(|c| c.count_ones() > 1);
        let Some(ci) = target else {
            self.leaf(&cells);
            return;
        };

        let cell = cells[ci];
        let mut processed: Vec<usize> = Vec::new();
        for v in BitIter(cell) {
            if processed.iter().any(|&u| self.same_orbit_fixing_path(u, v)) {
                continue;
            }
            processed.push(v);
            let mut child = cells.clone();
            child[ci] = cell & !bit(v);
            child.insert(ci, bit(v));
            self.path.push(v);
            self.explore(child);
            self.path.pop();
        }
    }

    fn leaf(&mut self, cells: &[u64]) {
        let mut perm = vec![0usize; self.n];
        for (pos, c) in cells.iter().enumerate() {
            perm[c.trailing_zeros() as usize] = pos;
        }
        let body = packed_body(self.adj, &perm);

        match &self.best_body {
            None => self.install_best(body, perm),
            Some(best) => match body.cmp(best) {
                std::cmp::Ordering::Less => self.install_best(body, perm),
                std::cmp::Ordering::Equal => self.record_automorphism(&perm),
                std::cmp::Ordering::Greater => {}
            },
        }
    }

    fn install_best(&mut self, body: Vec<u8>, perm: Vec<usize>) {
        let mut inv = vec![0usize; self.n];
        for (v, &p) in perm.iter().enumerate() {
            inv[p] = v;
        }
        self.best_body = Some(body);
        self.best_perm = perm;
        self.best_inv = inv;
    }

    /// Two leaves with equal bodies compose to an automorphism.
    fn record_automorphism(&mut self, perm: &[usize]) {
        if self.gens.len() >= MAX_STORED_GENS {
            return;
        }
        let gamma: Vec<usize> = (0..self.n).map(|v| self.best_inv[perm[v]]).collect();
        if gamma.iter().enumerate().all(|(v, &w)| v == w) {
            return;
        }
        self.gens.push(gamma);
    }

    /// Orbit test under the discovered automorphisms that fix every
    /// vertex individualized on the current path; only those map this
    /// node's subtrees onto each other.
    fn same_orbit_fixing_path(&self, u: usize, v: usize) -> bool {
        if self.gens.is_empty() {
            return false;
        }
        let usable: Vec<&Vec<usize>> = self
            .gens
            .iter()
            .filter(|g| self.path.iter().all(|&x| g[x] == x))
            .collect();
        if usable.is_empty() {
            return false;
        }
        let mut seen = bit(u);
        let mut frontier = vec![u];
        while let Some(x) = frontier.pop() {
            for g in &usable {
                let y = g[x];
                if y == v {
                    return true;
                }
                if seen & bit(y) == 0 {
                    seen |= bit(y);
                    frontier.push(y);
                }
            }
        }
        false
    }
}

/// Upper-triangle adjacency bits of the relabeled graph, packed six per
/// byte in graph6 body order (without the +63 offset).
fn packed_body(adj: &[u64], perm: &[usize]) -> Vec<u8> {
    let n = adj.len();
    let mut inv = vec![0usize; n];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    let mut out = Vec::with_capacity((n * (n - 1) / 2).div_ceil(6));
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            let e = (adj[inv[i]] >> inv[j]) & 1;
            chunk = (chunk << 1) | e as u8;
            filled += 1;
            if filled == 6 {
                out.push(chunk);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(chunk << (6 - filled));
    }
    out
}

/// Equitable refinement of an ordered partition: repeatedly split cells
/// by neighbor counts into splitter cells, sub-cells ordered by count.
/// The process uses only structural data, so it commutes with vertex
/// relabeling.
fn refine(adj: &[u64], cells: &mut Vec<u64>) {
    'outer: loop {
        for ci in 0..cells.len() {
            let cell = cells[ci];
            if cell.count_ones() <= 1 {
                continue;
            }
            for sj in 0..cells.len() {
                let splitter = cells[sj];
                let mut groups = [0u64; 65];
                let mut counts: Vec<usize> = Vec::new();
                for v in BitIter(cell) {
                    let c = (adj[v] & splitter).count_ones() as usize;
                    if groups[c] == 0 {
                        counts.push(c);
                    }
                    groups[c] |= bit(v);
                }
                if counts.len() > 1 {
                    counts.sort_unstable();
                    cells.splice(ci..=ci, counts.into_iter().map(|c| groups[c]));
                    continue 'outer;
                }
            }
        }
        return;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn permutation_invariance_smoke() {
        let g = Graph::fan(3).unwrap();
        let l = canonical_label(&g);
        assert_eq!(canonical_label(&g.permute(&[6, 0, 5, 1, 4, 2, 3])), l);
        assert_eq!(canonical_label(&g.permute(&[1, 2, 3, 4, 5, 6, 0])), l);
    }

    #[test]
    fn k5_and_c5_differ() {
        assert_ne!(
            canonical_label(&Graph::complete(5).unwrap()),
            canonical_label(&cycle(5))
        );
    }

    #[test]
    fn eleven_classes_on_four_vertices() {
        // Brute-force dedup of all 2^6 labeled graphs on 4 vertices.
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut labels = std::collections::HashSet::new();
        for mask in 0u32..64 {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(4, &edges).unwrap();
            labels.insert(canonical_label(&g));
        }
        assert_eq!(labels.len(), 11);
    }

    #[test]
    fn join_of_point_and_matching_is_a_fan() {
        let k1 = Graph::complete(1).unwrap();
        for c in [1usize, 2, 5, 8] {
            let m = Graph::matching(2 * c).unwrap();
            let joined = k1.join(&m).unwrap();
            assert!(are_isomorphic(&joined, &Graph::fan(c).unwrap()));
        }
    }

    #[test]
    fn labels_decode_to_isomorphic_graphs() {
        let g = Graph::complete(3)
            .unwrap()
            .disjoint_union(&Graph::matching(4).unwrap())
            .unwrap();
        let label = canonical_label(&g);
        let back = label.to_graph();
        assert_eq!(back.order(), g.order());
        assert_eq!(back.edge_count(), g.edge_count());
        assert_eq!(canonical_label(&back), label);
    }

    #[test]
    fn highly_symmetric_graphs_terminate_quickly() {
        // Complete graphs and matchings have huge automorphism groups;
        // orbit pruning must keep these tractable.
        canonical_label(&Graph::complete(12).unwrap());
        canonical_label(&Graph::matching(24).unwrap());
        canonical_label(&Graph::fan(11).unwrap());
    }

    #[test]
    fn non_isomorphic_same_degree_sequence() {
        // C6 vs 2*K3: both 2-regular on 6 vertices.
        let c6 = cycle(6);
        let k3 = Graph::complete(3).unwrap();
        let two_k3 = k3.disjoint_union(&k3).unwrap();
        assert_eq!(c6.degree_sequence(), two_k3.degree_sequence());
        assert!(!are_isomorphic(&c6, &two_k3));

        let c3_c4 = cycle(3).disjoint_union(&cycle(4)).unwrap();
        assert!(!are_isomorphic(&c3_c4, &cycle(7)));
    }

    #[test]
    fn distinguishes_cospectral_strongly_regular_pair() {
        // The 4x4 rook's graph and the Shrikhande graph are both
        // srg(16,6,2,2); refinement alone cannot separate them, only
        // the backtracking can. They must get distinct labels, each
        // stable under relabeling.
        let idx = |r: usize, c: usize| 4 * r + c;
        let mut rook = Vec::new();
        let mut shrikhande = Vec::new();
        for r in 0..4 {
            for c in 0..4 {
                for r2 in 0..4 {
                    for c2 in 0..4 {
                        if (r, c) >= (r2, c2) {
                            continue;
                        }
                        if r == r2 || c == c2 {
                            rook.push((idx(r, c), idx(r2, c2)));
                        }
                        let dr = (r2 + 4 - r) % 4;
                        let dc = (c2 + 4 - c) % 4;
                        if matches!((dr, dc), (1, 0) | (3, 0) | (0, 1) | (0, 3) | (1, 1) | (3, 3)) {
                            shrikhande.push((idx(r, c), idx(r2, c2)));
                        }
                    }
                }
            }
        }
        let rook = Graph::from_edges(16, &rook).unwrap();
        let shrikhande = Graph::from_edges(16, &shrikhande).unwrap();
        assert_eq!(rook.edge_count(), 48);
        assert_eq!(shrikhande.edge_count(), 48);
        assert_eq!(rook.degree_sequence(), shrikhande.degree_sequence());
        assert!(!are_isomorphic(&rook, &shrikhande));

        let perm: Vec<usize> = (0..16).map(|v| (v * 7 + 3) % 16).collect();
        assert_eq!(
            canonical_label(&rook.permute(&perm)),
            canonical_label(&rook)
        );
        assert_eq!(
            canonical_label(&shrikhande.permute(&perm)),
            canonical_label(&shrikhande)
        );
    }

    #[test]
    fn induced_complement_consistency() {
        // Sanity: canonical labeling sees through an induced relabeling.
        let f5 = Graph::fan(5).unwrap();
        let sub = f5.induced(VertexSet::from_iter([0, 3, 4, 7, 8]));
        assert!(are_isomorphic(&sub, &Graph::fan(2).unwrap()));
    }
}
