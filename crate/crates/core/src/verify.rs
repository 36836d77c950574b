//! Self-check suites run by `sbe verify`.
//!
//! Each check draws seeded random graphs, compares the tree searches against
//! the oracle and asserts the structural laws of split-by-edges trees.

use crate::error::{range, Error};
use crate::experiments::{emit_csv, figure_variants, run_sweep, SweepConfig};
use crate::graph::{degree_ordering, max_edges, random_graph, Graph, OrderingMode, VertexSet};
use crate::oracle::{
    alpha_by_enumeration, alpha_exact, enumerate_maximal_sets, maximum_sets_by_enumeration,
};
use crate::rng;
use crate::search::{dfs_descend, lbl_search, SearchConfig};
use crate::tree::{build_full_tree, stability, EdgeRule, Stability};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

impl std::str::FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            _ => Err(range(format!(
                "unknown level '{s}' (expected quick or full)"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    /// First few failure descriptions.
    pub failures: Vec<String>,
    pub failure_count: usize,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

struct Check {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
    failure_count: usize,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            cases: 0,
            failures: Vec::new(),
            failure_count: 0,
        }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < 5 {
                self.failures.push(describe());
            }
        }
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            failure_count: self.failure_count,
        }
    }
}

/// `count` seeded graphs with `n` in `lo..=hi` and edge counts spread over
/// the whole density range.
pub fn sample_graphs(count: usize, lo: usize, hi: usize, seed: u64) -> Vec<Graph> {
    (0..count as u64)
        .map(|i| {
            let h = rng::derive_seed(seed, i, 0);
            let n = lo + (h % (hi - lo + 1) as u64) as usize;
            let m = (rng::mix64(h) % (max_edges(n) as u64 + 1)) as usize;
            random_graph(n, m, h).expect("sampled parameters are in range")
        })
        .collect()
}

/// Every graph on `n` vertices, one per edge subset.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(n, &edges).expect("subset of simple edges")
        })
        .collect()
}

/// Graphs on up to four vertices plus `random` graphs with 5 to 10 vertices.
pub fn small_population(random: usize, seed: u64) -> Vec<Graph> {
    let mut graphs: Vec<Graph> = (1..=4).flat_map(all_graphs).collect();
    graphs.extend(sample_graphs(random, 5, 10, seed));
    graphs
}

fn check_oracles(graphs: &[Graph]) -> CheckOutcome {
    let mut c = Check::new("oracle: branch-and-bound equals subset enumeration");
    for g in graphs {
        let bb = alpha_exact(g);
        let en = alpha_by_enumeration(g).expect("small graph");
        c.case(
            bb.alpha == en.alpha && g.is_independent(bb.witness) && bb.witness.len() == bb.alpha,
            || format!("{g:?}: {} vs {}", bb.alpha, en.alpha),
        );
    }
    c.finish()
}

fn check_layer_search(graphs: &[Graph]) -> CheckOutcome {
    let mut c = Check::new("layer search finds alpha and every maximum set");
    for g in graphs {
        let expected = maximum_sets_by_enumeration(g).expect("small graph");
        for mode in OrderingMode::ALL {
            let r = lbl_search(g, &degree_ordering(g, mode), EdgeRule::LexFirst);
            let mut found = r.maximum_sets.clone();
            crate::oracle::canonical_sort(&mut found);
            c.case(
                r.alpha == expected[0].len() && found == expected && r.depth() == g.n() - r.alpha,
                || format!("{g:?} under {mode:?}"),
            );
        }
    }
    c.finish()
}

fn check_full_trees(graphs: &[Graph]) -> Vec<CheckOutcome> {
    let mut leaves_ok = Check::new("every full-tree leaf is independent");
    let mut coverage = Check::new("every maximal independent set is a leaf");
    let mut cardinality = Check::new("node cardinality is n - depth");
    let mut siblings = Check::new("siblings: union is parent, intersection loses two");
    let mut width = Check::new("layer l has 2^l nodes above depth n - alpha");
    let mut depth = Check::new("first leaf layer sits at depth n - alpha");
    for g in graphs {
        let alpha = alpha_exact(g).alpha;
        let maximal = enumerate_maximal_sets(g).expect("small graph");
        for mode in OrderingMode::ALL {
            let t = build_full_tree(g, &degree_ordering(g, mode), EdgeRule::LexFirst)
                .expect("small graph");
            let nodes = t.nodes();
            let mut leaves: Vec<VertexSet> = t.leaves().map(|n| n.content).collect();
            leaves_ok.case(leaves.iter().all(|&s| g.is_independent(s)), || {
                format!("{g:?}")
            });
            leaves.sort();
            coverage.case(
                maximal.iter().all(|s| leaves.binary_search(s).is_ok()),
                || format!("{g:?} under {mode:?}"),
            );
            cardinality.case(
                nodes.iter().all(|n| n.content.len() + n.depth == g.n()),
                || format!("{g:?}"),
            );
            siblings.case(
                nodes.iter().all(|n| match n.children {
                    None => true,
                    Some((l, r)) => {
                        let (l, r) = (nodes[l].content, nodes[r].content);
                        l.union(r) == n.content && l.intersection(r).len() + 2 == n.content.len()
                    }
                }),
                || format!("{g:?}"),
            );
            let widths = t.layer_widths();
            width.case((0..g.n() - alpha).all(|l| widths[l] == 1 << l), || {
                format!("{g:?}: {widths:?}")
            });
            depth.case(t.first_leaf_depth() == g.n() - alpha, || format!("{g:?}"));
        }
    }
    vec![
        leaves_ok.finish(),
        coverage.finish(),
        cardinality.finish(),
        siblings.finish(),
        width.finish(),
        depth.finish(),
    ]
}

fn check_stability(graphs: &[Graph], seed: u64) -> CheckOutcome {
    let mut c = Check::new("stability lies in [k, k^2], k^2 exactly when independent");
    let mut r = rng::rng_from_seed(seed);
    for g in graphs {
        for _ in 0..8 {
            let s = VertexSet::from_bits(rand_core::RngCore::next_u64(&mut r))
                .intersection(g.vertices());
            if s.is_empty() {
                continue;
            }
            let k = s.len() as u128;
            let st = stability(g, s).numerator();
            let unit = Stability::denominator();
            let complete = g.induced_edge_count(s) == s.len() * (s.len() - 1) / 2;
            c.case(
                k * unit <= st
                    && st <= k * k * unit
                    && (st == k * k * unit) == g.is_independent(s)
                    && (st == k * unit) == complete,
                || format!("{g:?} at {s:?}"),
            );
        }
    }
    c.finish()
}

fn check_descents(graphs: &[Graph]) -> Vec<CheckOutcome> {
    let mut bound = Check::new("descent returns an independent set no larger than alpha");
    let mut boundary = Check::new("descent succeeds on edgeless and complete graphs");
    let variants: Vec<SearchConfig> = crate::experiments::all_variants();
    for g in graphs {
        let alpha = alpha_exact(g).alpha;
        for v in &variants {
            let r = dfs_descend(g, v);
            bound.case(
                g.is_independent(r.found) && r.size <= alpha && r.depth + r.size == g.n(),
                || format!("{g:?} with {v}"),
            );
        }
    }
    for n in [1, 2, 5, 9, 16, 40, 64] {
        for g in [Graph::empty(n).unwrap(), Graph::complete(n).unwrap()] {
            let alpha = if g.m() == 0 { n } else { 1 };
            for v in &variants {
                boundary.case(dfs_descend(&g, v).size == alpha, || format!("n = {n}, {v}"));
            }
        }
    }
    vec![bound.finish(), boundary.finish()]
}

fn check_sweep_determinism(level: Level) -> CheckOutcome {
    let mut c = Check::new("sweep output is independent of the worker count");
    let graphs = if level == Level::Quick { 10 } else { 60 };
    let mut cfg = SweepConfig::new(
        12,
        (12..=60).step_by(8).collect(),
        graphs,
        figure_variants(),
    );
    cfg.master_seed = 2024;
    let single = run_sweep(&cfg).map(|rows| emit_csv(&rows));
    cfg.thread_count = 4;
    let multi = run_sweep(&cfg).map(|rows| emit_csv(&rows));
    c.case(single.is_ok() && single == multi, || "CSV differs".into());
    let rows = run_sweep(&cfg).unwrap_or_default();
    let mut bound = true;
    for r in &rows {
        let rate = r.success_rate();
        bound &= r.mean_accuracy() + 1e-12 >= rate + (1.0 - rate) / r.n as f64;
    }
    c.case(bound, || "accuracy lower bound violated".into());
    c.finish()
}

/// Runs every suite. `Quick` takes about a second in release builds.
pub fn run(level: Level) -> Vec<CheckOutcome> {
    let (count, seed) = match level {
        Level::Quick => (60, 0x5BE),
        Level::Full => (500, 0x5BE),
    };
    let medium = sample_graphs(count, 4, 16, seed);
    let small = small_population(if level == Level::Quick { 30 } else { 100 }, seed + 1);
    let mut out = vec![check_oracles(&medium), check_layer_search(&medium)];
    out.extend(check_full_trees(&small));
    out.push(check_stability(&medium, seed));
    out.extend(check_descents(&medium));
    out.push(check_sweep_determinism(level));
    out
}
