//! Greedy depth-first descent and exact layer-by-layer search.

use std::fmt;

use crate::error::{range, Error, Result};
use crate::graph::{degree_ordering, Graph, OrderingMode, Permutation, VertexSet};
use crate::tree::{expand_layer, find_split_edge, split_node, stability, EdgeRule, Layer};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum BranchPolicy {
    AlwaysLeft,
    /// Child whose induced subgraph has fewer edges.
    FewestEdges,
    /// Child with the larger stability.
    #[default]
    MostStable,
}

impl BranchPolicy {
    pub const ALL: [BranchPolicy; 3] = [
        BranchPolicy::AlwaysLeft,
        BranchPolicy::FewestEdges,
        BranchPolicy::MostStable,
    ];

    pub fn token(self) -> &'static str {
        match self {
            BranchPolicy::AlwaysLeft => "left",
            BranchPolicy::FewestEdges => "fewest",
            BranchPolicy::MostStable => "most-stable",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BranchPolicy::AlwaysLeft => "always-left",
            BranchPolicy::FewestEdges => "fewest-edges",
            BranchPolicy::MostStable => "most-stable",
        }
    }
}

impl std::str::FromStr for BranchPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" | "always-left" => Ok(BranchPolicy::AlwaysLeft),
            "fewest" | "fewest-edges" => Ok(BranchPolicy::FewestEdges),
            "most-stable" | "stable" => Ok(BranchPolicy::MostStable),
            _ => Err(range(format!(
                "unknown policy '{s}' (expected left, fewest or most-stable)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// One depth-first variant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SearchConfig {
    pub ordering: OrderingMode,
    pub policy: BranchPolicy,
    pub edge_rule: EdgeRule,
}

impl SearchConfig {
    pub fn new(ordering: OrderingMode, policy: BranchPolicy) -> Self {
        SearchConfig {
            ordering,
            policy,
            edge_rule: EdgeRule::LexFirst,
        }
    }

    /// `<ordering>/<policy>`, e.g. `desc/most-stable`.
    pub fn label(&self) -> String {
        format!("{}/{}", self.ordering.token(), self.policy.token())
    }
}

impl fmt::Display for SearchConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl std::str::FromStr for SearchConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (ordering, policy) = s.split_once('/').ok_or_else(|| {
            range(format!(
                "variant '{s}' is not of the form <ordering>/<policy>"
            ))
        })?;
        Ok(SearchConfig::new(ordering.parse()?, policy.parse()?))
    }
}

/// One step of a descent: the node that was split and the side taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub node: VertexSet,
    pub edge: (usize, usize),
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub found: VertexSet,
    pub size: usize,
    /// Number of splits, `n - size`.
    pub depth: usize,
    pub alpha: Option<usize>,
    pub success: Option<bool>,
    pub path: Option<Vec<Step>>,
}

impl SearchResult {
    /// Attaches a known independence number.
    pub fn with_alpha(mut self, alpha: usize) -> Self {
        debug_assert!(self.size <= alpha);
        self.alpha = Some(alpha);
        self.success = Some(self.size == alpha);
        self
    }
}

/// Picks the child to descend into. Ties go left.
pub fn choose_branch(g: &Graph, left: VertexSet, right: VertexSet, policy: BranchPolicy) -> Side {
    let go_right = match policy {
        BranchPolicy::AlwaysLeft => false,
        BranchPolicy::FewestEdges => g.induced_edge_count(right) < g.induced_edge_count(left),
        BranchPolicy::MostStable => stability(g, right) > stability(g, left),
    };
    if go_right {
        Side::Right
    } else {
        Side::Left
    }
}

fn descend(g: &Graph, cfg: &SearchConfig, perm: &Permutation, trace: bool) -> SearchResult {
    let mut node = g.vertices();
    let mut path = trace.then(Vec::new);
    let mut depth = 0;
    while let Some(edge) = find_split_edge(g, node, perm, cfg.edge_rule) {
        let (left, right) = split_node(g, node, edge).expect("split edge lies inside the node");
        let side = choose_branch(g, left, right, cfg.policy);
        if let Some(path) = path.as_mut() {
            path.push(Step { node, edge, side });
        }
        node = match side {
            Side::Left => left,
            Side::Right => right,
        };
        depth += 1;
    }
    SearchResult {
        found: node,
        size: node.len(),
        depth,
        alpha: None,
        success: None,
        path,
    }
}

/// Single greedy root-to-leaf descent, no backtracking.
pub fn dfs_descend(g: &Graph, cfg: &SearchConfig) -> SearchResult {
    let perm = degree_ordering(g, cfg.ordering);
    descend(g, cfg, &perm, false)
}

/// [`dfs_descend`] that also records every step.
pub fn dfs_descend_traced(g: &Graph, cfg: &SearchConfig) -> SearchResult {
    let perm = degree_ordering(g, cfg.ordering);
    descend(g, cfg, &perm, true)
}

/// [`dfs_descend`] under an explicit vertex order; `cfg.ordering` is ignored.
pub fn dfs_descend_with(g: &Graph, cfg: &SearchConfig, perm: &Permutation) -> SearchResult {
    descend(g, cfg, perm, false)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerSearchResult {
    pub alpha: usize,
    /// Every maximum independent set, sorted by bit pattern.
    pub maximum_sets: Vec<VertexSet>,
    /// Distinct node count of each layer, root layer first, terminal layer last.
    pub layer_widths: Vec<usize>,
}

impl LayerSearchResult {
    /// Total number of distinct nodes visited.
    pub fn node_count(&self) -> usize {
        self.layer_widths.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.layer_widths.len() - 1
    }
}

/// Exact layer-by-layer search of the uniquified tree. Stops at the first
/// layer holding an independent node; that layer sits at depth `n - alpha`
/// and its independent nodes are all the maximum independent sets.
pub fn lbl_search(g: &Graph, perm: &Permutation, rule: EdgeRule) -> LayerSearchResult {
    let mut layer = Layer::root(g);
    let mut widths = vec![1];
    if g.is_independent(layer.nodes[0]) {
        return LayerSearchResult {
            alpha: g.n(),
            maximum_sets: layer.nodes,
            layer_widths: widths,
        };
    }
    loop {
        let (next, independents) =
            expand_layer(g, &layer, perm, rule, true).expect("layer holds no independent node");
        widths.push(next.len());
        if !independents.is_empty() {
            return LayerSearchResult {
                alpha: g.n() - next.depth,
                maximum_sets: independents,
                layer_widths: widths,
            };
        }
        layer = next;
    }
}
