//! Isomorph-free exhaustive search.
//!
//! Graphs are generated by canonical edge-augmentation from the empty
//! graph: a child is accepted exactly when deleting its canonical-maximum
//! edge recovers the parent's isomorphism class (with same-parent
//! duplicates collapsed locally), so each class satisfying the monotone
//! `keep` predicate is visited once without a global seen-set. Pruning
//! an augmentation that violates `keep` is sound because `keep` must be
//! subgraph-closed; the caller asserts that.

use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_label, canonical_with_perm, CanonicalLabel};
use crate::cliques::count_cliques;
use crate::error::{Error, Result};
use crate::formulas::binomial;
use crate::graph::Graph;
use crate::packing::{has_k_disjoint, p3_packing_at_least, PatternGraph, MAX_PATTERN_COPIES};

/// Hard cap on exhaustive enumeration; class counts explode past this.
pub const ENUM_CAP: usize = 12;

/// Counters from one enumeration run.
#[derive(Clone, Debug, Default)]
pub struct EnumStats {
    /// Isomorphism classes visited (each exactly once).
    pub classes_visited: u64,
    /// Candidate augmentations discarded (keep-violating or
    /// non-canonical).
    pub nodes_pruned: u64,
    pub elapsed: Duration,
}

/// How a search result was obtained.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Exhaustive isomorph-free enumeration.
    Enumeration,
    /// Direct construction (the forbidden graph cannot embed).
    Construction,
    /// Closed formula.
    Formula,
}

/// Exact optimum for one `(n, k, s, H)` instance with all optimizers.
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    /// Canonical graph6 of the forbidden pattern H.
    pub pattern: String,
    /// Maximum s-clique count over the kH-free class.
    pub value: u64,
    /// Canonical labels of every optimizer, lexicographically sorted.
    pub witnesses: Vec<CanonicalLabel>,
    pub method: Method,
    pub classes_visited: u64,
    pub nodes_pruned: u64,
    pub elapsed: Duration,
}

struct EnumCtx<'a> {
    keep: &'a (dyn Fn(&Graph) -> bool + Sync),
    visit: &'a (dyn Fn(&Graph) + Sync),
    classes: AtomicU64,
    pruned: AtomicU64,
    parallel: bool,
}

/// The edge whose endpoint pair is colex-maximal under the canonical
/// relabeling; its orbit is isomorphism-invariant, so deleting it gives
/// a well-defined parent class.
fn canonical_max_edge(g: &Graph, perm: &[usize]) -> (usize, usize) {
    g.edges()
        .into_iter()
        .max_by_key(|&(u, v)| {
            let (a, b) = (perm[u], perm[v]);
            (a.max(b), a.min(b))
        })
        .expect("graph has at least one edge")
}

fn expand(ctx: &EnumCtx<'_>, g: &Graph, g_label: &CanonicalLabel) {
    let n = g.order();
    let parent_degseq = g.degree_sequence();
    let mut children: Vec<(Graph, CanonicalLabel)> = Vec::new();
    let mut seen: HashSet<CanonicalLabel> = HashSet::new();

    for v in 1..n {
        for u in 0..v {
            if g.has_edge(u, v) {
                continue;
            }
            let child = g.with_edge(u, v);
            if !(ctx.keep)(&child) {
                ctx.pruned.fetch_add(1, Ordering::Relaxed);
                continue;
            }
            let (child_label, perm) = canonical_with_perm(&child);
            if seen.contains(&child_label) {
                ctx.pruned.fetch_add(1, Ordering::Relaxed);
                continue;
            }
            let (du, dv) = canonical_max_edge(&child, &perm);
            let reduced = child.without_edge(du, dv);
            if reduced.degree_sequence() != parent_degseq
                || canonical_label(&reduced) != *g_label
            {
                ctx.pruned.fetch_add(1, Ordering::Relaxed);
                continue;
            }
            seen.insert(child_label.clone());
            children.push((child, child_label));
        }
    }

    ctx.classes
        .fetch_add(children.len() as u64, Ordering::Relaxed);
    for (child, _) in &children {
        (ctx.visit)(child);
    }

    if ctx.parallel {
        children
            .par_iter()
            .for_each(|(child, label)| expand(ctx, child, label));
    } else {
        for (child, label) in &children {
            expand(ctx, child, label);
        }
    }
}

/// Visits exactly one representative of every isomorphism class of
/// n-vertex graphs satisfying `keep`.
///
/// `keep` must be subgraph-closed (deleting an edge never falsifies it);
/// the visit sink must tolerate concurrent calls when `jobs > 1`. The
/// visited set and the counters are independent of the schedule.
pub fn enumerate_graphs(
    n: usize,
    keep: &(dyn Fn(&Graph) -> bool + Sync),
    visit: &(dyn Fn(&Graph) + Sync),
    jobs: usize,
) -> Result<EnumStats> {
    if n > ENUM_CAP {
        return Err(Error::EnumerationCap {
            requested: n,
            cap: ENUM_CAP,
        });
    }
    let start = Instant::now();
    let root = Graph::empty(n)?;
    let mut stats = EnumStats::default();
    if !keep(&root) {
        // keep is monotone, so rejecting the empty graph rejects all.
        stats.elapsed = start.elapsed();
        return Ok(stats);
    }

    let ctx = EnumCtx {
        keep,
        visit,
        classes: AtomicU64::new(1),
        pruned: AtomicU64::new(0),
        parallel: jobs > 1,
    };
    visit(&root);
    let root_label = canonical_label(&root);

    if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Capacity(format!("thread pool: {e}")))?;
        pool.install(|| expand(&ctx, &root, &root_label));
    } else {
        expand(&ctx, &root, &root_label);
    }

    stats.classes_visited = ctx.classes.load(Ordering::Relaxed);
    stats.nodes_pruned = ctx.pruned.load(Ordering::Relaxed);
    stats.elapsed = start.elapsed();
    Ok(stats)
}

struct BestTracker {
    value: u64,
    witnesses: Vec<CanonicalLabel>,
    any: bool,
}

impl BestTracker {
    fn new() -> Self {
        BestTracker {
            value: 0,
            witnesses: Vec::new(),
            any: false,
        }
    }

    fn offer(&mut self, count: u64, label: CanonicalLabel) {
        if !self.any || count > self.value {
            self.value = count;
            self.witnesses.clear();
            self.witnesses.push(label);
            self.any = true;
        } else if count == self.value {
            self.witnesses.push(label);
        }
    }
}

fn keep_predicate<'a>(h: &'a PatternGraph, k: usize) -> Box<dyn Fn(&Graph) -> bool + Sync + 'a> {
    if h.is_p3() {
        Box::new(move |g: &Graph| !p3_packing_at_least(g, k))
    } else {
        Box::new(move |g: &Graph| {
            !has_k_disjoint(g, h, k).expect("copy budget checked upfront")
        })
    }
}

/// Exact `ex(n, K_s, kH)` with every optimal isomorphism class.
pub fn exact_ex(n: usize, s: usize, k: usize, h: &PatternGraph) -> Result<SearchResult> {
    exact_ex_jobs(n, s, k, h, 1, None)
}

/// [`exact_ex`] with a parallelism budget and an optional sink that
/// receives every visited class (for streaming external cross-checks).
pub fn exact_ex_jobs(
    n: usize,
    s: usize,
    k: usize,
    h: &PatternGraph,
    jobs: usize,
    class_sink: Option<&(dyn Fn(&Graph) + Sync)>,
) -> Result<SearchResult> {
    if n > ENUM_CAP {
        return Err(Error::EnumerationCap {
            requested: n,
            cap: ENUM_CAP,
        });
    }
    let start = Instant::now();
    let pattern = canonical_label(h.graph()).to_string();

    // The forbidden graph cannot embed: the complete graph is optimal.
    if n < k * h.order() {
        let kn = Graph::complete(n)?;
        return Ok(SearchResult {
            n,
            k,
            s,
            pattern,
            value: binomial(n, s),
            witnesses: vec![canonical_label(&kn)],
            method: Method::Construction,
            classes_visited: 0,
            nodes_pruned: 0,
            elapsed: start.elapsed(),
        });
    }
    if !h.is_p3() && k > MAX_PATTERN_COPIES {
        return Err(Error::Capacity(format!(
            "packing {k} pattern copies exceeds the cap of {MAX_PATTERN_COPIES}"
        )));
    }

    let keep = keep_predicate(h, k);
    let tracker = Mutex::new(BestTracker::new());
    let visit = |g: &Graph| {
        let count = count_cliques(g, s).expect("within the counting budget");
        let label = canonical_label(g);
        if let Some(sink) = class_sink {
            sink(g);
        }
        tracker.lock().unwrap().offer(count, label);
    };

    let stats = enumerate_graphs(n, keep.as_ref(), &visit, jobs)?;
    let tracker = tracker.into_inner().unwrap();
    if !tracker.any {
        return Err(Error::Argument(format!(
            "no {k}H-free graphs exist on {n} vertices for this pattern"
        )));
    }

    let mut witnesses = tracker.witnesses;
    witnesses.sort();
    let result = SearchResult {
        n,
        k,
        s,
        pattern,
        value: tracker.value,
        witnesses,
        method: Method::Enumeration,
        classes_visited: stats.classes_visited,
        nodes_pruned: stats.nodes_pruned,
        elapsed: start.elapsed(),
    };
    recheck_witnesses(&result, h)?;
    Ok(result)
}

/// Computes the optimum over an externally supplied collection of
/// n-vertex graphs instead of enumerating internally. Graphs failing the
/// kH-freeness test are skipped; isomorphic duplicates collapse.
pub fn exact_ex_from_stream(
    n: usize,
    s: usize,
    k: usize,
    h: &PatternGraph,
    graphs: impl IntoIterator<Item = Graph>,
) -> Result<SearchResult> {
    let start = Instant::now();
    if !h.is_p3() && k > MAX_PATTERN_COPIES {
        return Err(Error::Capacity(format!(
            "packing {k} pattern copies exceeds the cap of {MAX_PATTERN_COPIES}"
        )));
    }
    let keep = keep_predicate(h, k);
    let mut tracker = BestTracker::new();
    let mut seen = HashSet::new();
    let mut skipped = 0u64;
    for g in graphs {
        if g.order() != n {
            return Err(Error::Argument(format!(
                "stream graph has order {}, expected {n}",
                g.order()
            )));
        }
        if !keep(&g) {
            skipped += 1;
            continue;
        }
        let label = canonical_label(&g);
        if seen.insert(label.clone()) {
            tracker.offer(count_cliques(&g, s)?, label);
        }
    }
    if !tracker.any {
        return Err(Error::Argument(
            "the supplied stream contains no admissible graphs".into(),
        ));
    }
    let mut witnesses = tracker.witnesses;
    witnesses.sort();
    let result = SearchResult {
        n,
        k,
        s,
        pattern: canonical_label(h.graph()).to_string(),
        value: tracker.value,
        witnesses,
        method: Method::Enumeration,
        classes_visited: seen.len() as u64,
        nodes_pruned: skipped,
        elapsed: start.elapsed(),
    };
    recheck_witnesses(&result, h)?;
    Ok(result)
}

/// Output validation: every witness must decode to a kH-free graph
/// attaining the reported value.
fn recheck_witnesses(result: &SearchResult, h: &PatternGraph) -> Result<()> {
    for w in &result.witnesses {
        let g = w.to_graph();
        let count = count_cliques(&g, result.s)?;
        let free = if h.is_p3() {
            !p3_packing_at_least(&g, result.k)
        } else {
            !has_k_disjoint(&g, h, result.k)?
        };
        if count != result.value || !free {
            return Err(Error::Argument(format!(
                "internal invariant violated: witness {w} fails re-validation"
            )));
        }
    }
    Ok(())
}

/// `ex(n, K_i, H)` oracle backed by exhaustive enumeration (`k = 1`),
/// memoized, honoring the `i = 0` and `i = 1` conventions directly.
pub struct EnumerationOracle {
    pattern: PatternGraph,
    memo: Mutex<HashMap<(usize, usize), u64>>,
}

impl EnumerationOracle {
    /// Patterns above 5 vertices make oracle calls too expensive.
    pub fn new(h: &PatternGraph) -> Result<Self> {
        if h.order() > 5 {
            return Err(Error::Capacity(format!(
                "enumeration oracle supports patterns up to 5 vertices, got {}",
                h.order()
            )));
        }
        Ok(EnumerationOracle {
            pattern: h.clone(),
            memo: Mutex::new(HashMap::new()),
        })
    }
}

impl crate::formulas::ExOracle for EnumerationOracle {
    fn ex(&self, n: usize, i: usize) -> Result<u64> {
        if i == 0 {
            return Ok(1);
        }
        if i == 1 {
            return Ok(n as u64);
        }
        if i > n {
            return Ok(0);
        }
        if let Some(&v) = self.memo.lock().unwrap().get(&(n, i)) {
            return Ok(v);
        }
        let v = exact_ex(n, i, 1, &self.pattern)?.value;
        self.memo.lock().unwrap().insert((n, i), v);
        Ok(v)
    }
}
