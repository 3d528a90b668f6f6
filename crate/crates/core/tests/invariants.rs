//! Cross-module invariants checked against independent brute-force
//! oracles and property-based generators.

mod common;

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use proptest::prelude::*;
use rand::Rng as _;

use common::*;
use turan_core::canon::{canonical_label, CanonicalLabel};
use turan_core::cliques::{clique_support, count_cliques, count_cliques_through};
use turan_core::constructions::{build_conjecture_join, build_conjecture_union};
use turan_core::formulas::{
    binomial, conjecture_value, ex_p3_closed, f_formula, ExOracle,
};
use turan_core::graph::{Graph, VertexSet};
use turan_core::graph6;
use turan_core::packing::{has_k_disjoint, max_p3_packing, PatternGraph};
use turan_core::search::{enumerate_graphs, exact_ex, EnumerationOracle};
use turan_core::verify::{is_subgraph_of_join, verify_conjecture};

// ---------------------------------------------------------------------
// Property-based generators
// ---------------------------------------------------------------------

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            (Just(n), proptest::collection::vec(any::<bool>(), pairs))
        })
        .prop_map(|(n, flags)| {
            let mut edges = Vec::new();
            let mut idx = 0;
            for v in 0..n {
                for u in 0..v {
                    if flags[idx] {
                        edges.push((u, v));
                    }
                    idx += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
}

proptest! {
    #[test]
    fn union_and_join_counts_add(a in arb_graph(10), b in arb_graph(10)) {
        let u = a.disjoint_union(&b).unwrap();
        prop_assert_eq!(u.order(), a.order() + b.order());
        prop_assert_eq!(u.edge_count(), a.edge_count() + b.edge_count());
        u.validate().unwrap();

        let j = a.join(&b).unwrap();
        prop_assert_eq!(j.order(), a.order() + b.order());
        prop_assert_eq!(
            j.edge_count(),
            a.edge_count() + b.edge_count() + a.order() * b.order()
        );
        j.validate().unwrap();
    }

    #[test]
    fn graph6_roundtrip(g in arb_graph(16)) {
        let enc = graph6::encode(&g);
        prop_assert_eq!(graph6::decode(&enc).unwrap(), g);
    }

    #[test]
    fn canonical_label_is_permutation_invariant(
        g in arb_graph(9),
        seed in any::<u64>(),
    ) {
        let mut r = rng(seed);
        let perm = random_permutation(&mut r, g.order());
        prop_assert_eq!(canonical_label(&g.permute(&perm)), canonical_label(&g));
    }

    #[test]
    fn clique_count_matches_naive(g in arb_graph(9), s in 0usize..6) {
        prop_assert_eq!(count_cliques(&g, s).unwrap(), naive_count_cliques(&g, s));
    }

    #[test]
    fn adding_edges_never_decreases_counts(g in arb_graph(9), s in 2usize..5) {
        let before = count_cliques(&g, s).unwrap();
        let non_edges: Vec<(usize, usize)> = (0..g.order())
            .flat_map(|v| (0..v).map(move |u| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        for (u, v) in non_edges {
            prop_assert!(count_cliques(&g.with_edge(u, v), s).unwrap() >= before);
        }
    }

    #[test]
    fn join_identity_convolution(a in arb_graph(7), b in arb_graph(7), s in 0usize..6) {
        let j = a.join(&b).unwrap();
        let mut expect = 0u64;
        for i in 0..=s {
            expect += count_cliques(&a, i).unwrap() * count_cliques(&b, s - i).unwrap();
        }
        prop_assert_eq!(count_cliques(&j, s).unwrap(), expect);
    }

    #[test]
    fn packing_is_hereditary(g in arb_graph(9), seed in any::<u64>()) {
        let base = max_p3_packing(&g);
        let mut r = rng(seed);
        let mut h = g.clone();
        for (u, v) in g.edges() {
            if r.gen_bool(0.4) {
                h = h.without_edge(u, v);
            }
        }
        prop_assert!(max_p3_packing(&h) <= base);

        // Vertex deletions never help either.
        let keep: VertexSet = g.vertices().filter(|_| r.gen_bool(0.7)).collect();
        prop_assert!(max_p3_packing(&g.induced(keep)) <= base);
    }

    #[test]
    fn combinators_preserve_validity(g in arb_graph(8), seed in any::<u64>()) {
        let mut r = rng(seed);
        let other = random_graph(&mut r, 5, 0.5);
        g.complement().validate().unwrap();
        g.disjoint_union(&other).unwrap().validate().unwrap();
        g.join(&other).unwrap().validate().unwrap();
        let keep = random_vertex_subset(&mut r, &g, g.order() / 2);
        g.induced(keep).validate().unwrap();
    }
}

// ---------------------------------------------------------------------
// Clique counting: exhaustive and structured oracles
// ---------------------------------------------------------------------

#[test]
fn clique_counts_match_naive_on_all_small_graphs() {
    for n in 0..=5 {
        for g in all_labeled_graphs(n) {
            for s in 0..=n + 1 {
                assert_eq!(count_cliques(&g, s).unwrap(), naive_count_cliques(&g, s));
            }
        }
    }
}

#[test]
fn rooted_counts_match_naive_filter() {
    let mut r = rng(11);
    for _ in 0..200 {
        let g = random_graph(&mut r, 8, 0.5);
        let roots = random_vertex_subset(&mut r, &g, 2);
        for s in 2..=4 {
            let fast = count_cliques_through(&g, s, roots).unwrap();
            // Naive: count subsets of size s containing the roots that
            // induce a clique.
            let mut slow = 0u64;
            let verts: Vec<usize> = g.vertices().collect();
            let mut stack: Vec<Vec<usize>> = vec![vec![]];
            while let Some(sel) = stack.pop() {
                if sel.len() == s {
                    let set: VertexSet = sel.iter().copied().collect();
                    if roots.bits() & !set.bits() == 0 {
                        let ok = sel.iter().enumerate().all(|(i, &a)| {
                            sel[..i].iter().all(|&b| g.has_edge(a, b))
                        });
                        if ok {
                            slow += 1;
                        }
                    }
                    continue;
                }
                let next = sel.last().map_or(0, |&x| x + 1);
                for &v in &verts[next.min(verts.len())..] {
                    let mut e = sel.clone();
                    e.push(v);
                    stack.push(e);
                }
            }
            assert_eq!(fast, slow, "graph {} s={s}", g.to_graph6());
        }
    }
}

/// Inclusion-exclusion over a 3-vertex window: the total count splits by
/// the (clique) intersection with the window.
#[test]
fn decomposition_identity_over_windows() {
    let mut r = rng(7);
    for _ in 0..120 {
        let g = random_graph(&mut r, 9, 0.45);
        let w = random_vertex_subset(&mut r, &g, 3);
        for s in 2..=4 {
            let total = count_cliques(&g, s).unwrap();
            let mut sum = 0u64;
            let w_verts: Vec<usize> = w.iter().collect();
            for rmask in 0u32..8 {
                let roots: VertexSet = w_verts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| rmask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                // Keep everything except the discarded window vertices.
                let kept_old: Vec<usize> = g
                    .vertices()
                    .filter(|&v| !w.contains(v) || roots.contains(v))
                    .collect();
                let kept: VertexSet = kept_old.iter().copied().collect();
                let sub = g.induced(kept);
                let mapped: VertexSet = roots
                    .iter()
                    .map(|v| kept_old.iter().position(|&x| x == v).unwrap())
                    .collect();
                sum += count_cliques_through(&sub, s, mapped).unwrap();
            }
            assert_eq!(total, sum, "graph {} s={s}", g.to_graph6());
        }
    }
}

#[test]
fn support_restriction_preserves_counts() {
    let mut r = rng(23);
    for _ in 0..200 {
        let g = random_graph(&mut r, 9, 0.4);
        for s in 1..=4 {
            let sup = clique_support(&g, s);
            assert_eq!(
                count_cliques(&g.induced(sup), s).unwrap(),
                count_cliques(&g, s).unwrap()
            );
        }
    }
}

// ---------------------------------------------------------------------
// Packing: brute-force agreement and consistency
// ---------------------------------------------------------------------

#[test]
fn p3_packing_matches_naive_on_all_classes_up_to_7() {
    for n in 0..=7 {
        let failures = Mutex::new(Vec::new());
        let visit = |g: &Graph| {
            if max_p3_packing(g) != naive_max_p3_packing(g) {
                failures.lock().unwrap().push(g.to_graph6());
            }
        };
        enumerate_graphs(n, &|_| true, &visit, 1).unwrap();
        assert!(failures.into_inner().unwrap().is_empty());
    }
}

#[test]
fn general_packing_agrees_with_p3_branch_and_bound() {
    // Independent routes: nested embedding search vs branch and bound.
    let p3 = PatternGraph::p3();
    // Every class up to 7 vertices.
    for n in 0..=7 {
        let visit = |g: &Graph| {
            let value = max_p3_packing(g);
            for k in 0..=2 {
                assert_eq!(
                    has_k_disjoint(g, &p3, k).unwrap(),
                    value >= k,
                    "graph {} k={k}",
                    g.to_graph6()
                );
            }
        };
        enumerate_graphs(n, &|_| true, &visit, 1).unwrap();
    }
    // Random corpus at 8 vertices.
    let mut r = rng(31);
    for _ in 0..300 {
        let g = random_graph(&mut r, 8, 0.45);
        let value = max_p3_packing(&g);
        for k in 0..=3 {
            assert_eq!(
                has_k_disjoint(&g, &p3, k).unwrap(),
                value >= k,
                "graph {} k={k}",
                g.to_graph6()
            );
        }
    }
}

#[test]
fn complete_graph_packing_floor() {
    for n in 0..=20 {
        assert_eq!(max_p3_packing(&Graph::complete(n).unwrap()), n / 3);
    }
}

// ---------------------------------------------------------------------
// Formulas against constructions
// ---------------------------------------------------------------------

#[test]
fn join_construction_attains_f_formula() {
    for k in 1..=5 {
        for n in k..=20 {
            let join = build_conjecture_join(n, k).unwrap();
            for s in 3..=6 {
                assert_eq!(
                    count_cliques(&join, s).unwrap(),
                    f_formula(n, k, s).unwrap()
                );
            }
        }
    }
}

#[test]
fn union_construction_attains_binomial() {
    for k in 1..=5 {
        for n in 3 * k - 1..=20 {
            let union = build_conjecture_union(n, k).unwrap();
            for s in 3..=6 {
                assert_eq!(count_cliques(&union, s).unwrap(), binomial(3 * k - 1, s));
            }
        }
    }
}

#[test]
fn closed_p3_oracle_matches_enumeration() {
    let oracle = EnumerationOracle::new(&PatternGraph::p3()).unwrap();
    for n in 0..=10 {
        for i in 0..=5 {
            assert_eq!(oracle.ex(n, i).unwrap(), ex_p3_closed(n, i), "n={n} i={i}");
        }
    }
}

#[test]
fn crossover_against_search_values() {
    // Small side of the piecewise law, within enumeration reach.
    for n in 6..=10 {
        assert_eq!(conjecture_value(n, 2, 3).unwrap(), 10);
        assert_eq!(exact_ex(n, 3, 2, &PatternGraph::p3()).unwrap().value, 10);
    }
}

// ---------------------------------------------------------------------
// Search: pruning soundness and class counts
// ---------------------------------------------------------------------

#[test]
fn pruned_search_equals_post_filtering() {
    use turan_core::search::Method;
    let p3 = PatternGraph::p3();
    for n in 3..=6 {
        for s in [3usize, 4, 5] {
            let pruned = exact_ex(n, s, 2, &p3).unwrap();

            // Oracle route: enumerate everything, filter afterwards.
            let best = Mutex::new((0u64, Vec::<CanonicalLabel>::new(), false));
            let visit = |g: &Graph| {
                if max_p3_packing(g) <= 1 {
                    let c = count_cliques(g, s).unwrap();
                    let mut b = best.lock().unwrap();
                    if !b.2 || c > b.0 {
                        *b = (c, vec![canonical_label(g)], true);
                    } else if c == b.0 {
                        b.1.push(canonical_label(g));
                    }
                }
            };
            enumerate_graphs(n, &|_| true, &visit, 1).unwrap();
            let (value, mut witnesses, any) = best.into_inner().unwrap();
            assert!(any);
            witnesses.sort();

            assert_eq!(pruned.value, value, "n={n} s={s}");
            match pruned.method {
                // Where enumeration ran, the optimizer sets must match.
                Method::Enumeration => {
                    assert_eq!(pruned.witnesses, witnesses, "n={n} s={s}")
                }
                // Below k*m the shortcut reports the complete graph,
                // which must be among the oracle's optimizers.
                _ => {
                    assert!(witnesses.contains(&pruned.witnesses[0]), "n={n} s={s}")
                }
            }
        }
    }
}

#[test]
fn class_counts_match_labeled_dedup() {
    use std::collections::HashSet;
    for n in 0..=5 {
        let mut labels = HashSet::new();
        for g in all_labeled_graphs(n) {
            labels.insert(canonical_label(&g));
        }
        let counted = AtomicU64::new(0);
        enumerate_graphs(
            n,
            &|_| true,
            &|_| {
                counted.fetch_add(1, Ordering::Relaxed);
            },
            1,
        )
        .unwrap();
        assert_eq!(counted.load(Ordering::Relaxed) as usize, labels.len());
    }
}

#[test]
fn filtered_free_classes_cross_check() {
    // 2P3-free classes on 6 vertices: canonical-deletion enumeration vs
    // filtering the unrestricted list.
    let keep = |g: &Graph| max_p3_packing(g) <= 1;
    let direct = AtomicU64::new(0);
    enumerate_graphs(
        6,
        &|g| keep(g),
        &|g| {
            assert!(keep(g));
            direct.fetch_add(1, Ordering::Relaxed);
        },
        1,
    )
    .unwrap();

    let filtered = AtomicU64::new(0);
    enumerate_graphs(
        6,
        &|_| true,
        &|g| {
            if keep(g) {
                filtered.fetch_add(1, Ordering::Relaxed);
            }
        },
        1,
    )
    .unwrap();
    assert_eq!(
        direct.load(Ordering::Relaxed),
        filtered.load(Ordering::Relaxed)
    );
}

// ---------------------------------------------------------------------
// Verify: shape tests against definitional embeddings
// ---------------------------------------------------------------------

#[test]
fn join_shape_matches_embedding_definition() {
    let mut r = rng(47);
    for _ in 0..150 {
        let n = 4 + (r.gen::<usize>() % 4); // 4..=7
        let g = random_graph(&mut r, n, 0.5);
        for k in 1..=3 {
            let fast = is_subgraph_of_join(&g, k).unwrap();
            let host = build_conjecture_join(n, k).unwrap();
            let slow = naive_embeds(&g, &host);
            assert_eq!(fast, slow, "graph {} k={k}", g.to_graph6());
        }
    }
}

#[test]
fn conjecture_holds_at_k3_with_unique_witness() {
    let report = verify_conjecture(9, 3, 3).unwrap();
    assert_eq!(report.expected, 56);
    assert_eq!(report.computed, 56);
    assert!(report.value_ok);
    assert!(report.characterization_ok);
    assert_eq!(report.witnesses.len(), 1);
    assert!(matches!(
        report.witnesses[0].classification,
        turan_core::verify::WitnessShape::SandwichUnion
    ));
}

#[test]
fn witnesses_revalidate_and_split_by_case() {
    // k=2: for s >= k+2 = 4 every witness must be sandwich-only.
    for n in 6..=8 {
        for s in [4usize, 5] {
            let report = verify_conjecture(n, 2, s).unwrap();
            assert!(report.value_ok);
            assert!(report.characterization_ok);
            for w in &report.witnesses {
                let g = Graph::from_graph6(&w.graph6).unwrap();
                assert_eq!(count_cliques(&g, s).unwrap(), report.computed);
                assert!(max_p3_packing(&g) <= 1);
                assert!(matches!(
                    w.classification,
                    turan_core::verify::WitnessShape::SandwichUnion
                        | turan_core::verify::WitnessShape::Both
                ));
            }
        }
    }
}
