//! Brute-force oracles shared by the integration suites. Everything
//! here is deliberately naive and independent of the library's search
//! paths: subset loops, exhaustive branching, and full label dedup.

// Each integration target compiles this module separately and uses a
// different subset of it.
#![allow(dead_code)]

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use turan_core::graph::{Graph, VertexSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdos-Renyi random graph.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 0..n {
        for u in 0..v {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Every labeled graph on `n` vertices (2^C(n,2) of them); keep `n` tiny.
pub fn all_labeled_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|v| (0..v).map(move |u| (u, v)))
        .collect();
    let mut out = Vec::with_capacity(1 << pairs.len());
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        out.push(Graph::from_edges(n, &edges).unwrap());
    }
    out
}

/// Clique count by looping over all size-s vertex subsets.
pub fn naive_count_cliques(g: &Graph, s: usize) -> u64 {
    let n = g.order();
    if s > n {
        return 0;
    }
    let mut count = 0u64;
    let mut subset: Vec<usize> = Vec::with_capacity(s);
    fn rec(g: &Graph, s: usize, start: usize, subset: &mut Vec<usize>, count: &mut u64) {
        if subset.len() == s {
            for i in 0..s {
                for j in 0..i {
                    if !g.has_edge(subset[i], subset[j]) {
                        return;
                    }
                }
            }
            *count += 1;
            return;
        }
        for v in start..g.order() {
            subset.push(v);
            rec(g, s, v + 1, subset, count);
            subset.pop();
        }
    }
    rec(g, s, 0, &mut subset, &mut count);
    count
}

/// All vertex triples hosting a P3: some member adjacent to the other two.
fn p3_triples(g: &Graph) -> Vec<u64> {
    let n = g.order();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let hosts = (g.has_edge(a, b) && g.has_edge(a, c))
                    || (g.has_edge(b, a) && g.has_edge(b, c))
                    || (g.has_edge(c, a) && g.has_edge(c, b));
                if hosts {
                    out.push(1u64 << a | 1u64 << b | 1u64 << c);
                }
            }
        }
    }
    out
}

/// Maximum disjoint P3 packing by exhaustive branching over triples.
pub fn naive_max_p3_packing(g: &Graph) -> usize {
    let triples = p3_triples(g);
    fn rec(triples: &[u64], i: usize, used: u64) -> usize {
        if i == triples.len() {
            return 0;
        }
        let skip = rec(triples, i + 1, used);
        if triples[i] & used == 0 {
            skip.max(1 + rec(triples, i + 1, used | triples[i]))
        } else {
            skip
        }
    }
    rec(&triples, 0, 0)
}

/// Does an injective (not necessarily induced) embedding of `small`
/// into `host` exist? Plain backtracking over vertex maps; `small` may
/// be disconnected.
pub fn naive_embeds(small: &Graph, host: &Graph) -> bool {
    if small.order() > host.order() {
        return false;
    }
    fn rec(small: &Graph, host: &Graph, images: &mut Vec<usize>, used: u64) -> bool {
        let v = images.len();
        if v == small.order() {
            return true;
        }
        for w in 0..host.order() {
            if used & (1u64 << w) != 0 {
                continue;
            }
            let ok = (0..v).all(|u| !small.has_edge(u, v) || host.has_edge(images[u], w));
            if ok {
                images.push(w);
                if rec(small, host, images, used | (1u64 << w)) {
                    return true;
                }
                images.pop();
            }
        }
        false
    }
    rec(small, host, &mut Vec::new(), 0)
}

/// Random subset of the vertices of `g` with exactly `size` members.
pub fn random_vertex_subset(rng: &mut ChaCha8Rng, g: &Graph, size: usize) -> VertexSet {
    let mut verts: Vec<usize> = g.vertices().collect();
    verts.shuffle(rng);
    verts.into_iter().take(size).collect()
}
