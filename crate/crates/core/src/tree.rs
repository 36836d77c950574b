//! Split-by-edges trees.
//!
//! A node is a vertex set. An internal node `N` is split on an edge `uv`
//! inside it into the children `N - u` (left) and `N - v` (right); a node is
//! a leaf exactly when it is independent. Every child has one vertex fewer
//! than its parent, so depth determines cardinality and duplicate nodes can
//! only appear within one layer.

use std::fmt;

use crate::error::{precondition, Error, Result};
use crate::exact::{scaled_unit, COMMON_DENOM};
use crate::graph::{Graph, Permutation, VertexSet};

/// Default vertex cap for [`build_full_tree`].
pub const FULL_TREE_CAP: usize = 16;

/// Which edge of a non-independent node is split on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum EdgeRule {
    /// `u` is the earliest vertex (in the active order) that has a neighbor
    /// inside the node, `v` is the earliest such neighbor of `u`.
    #[default]
    LexFirst,
}

impl EdgeRule {
    pub const ALL: [EdgeRule; 1] = [EdgeRule::LexFirst];

    pub fn token(self) -> &'static str {
        match self {
            EdgeRule::LexFirst => "lex-first",
        }
    }
}

impl std::str::FromStr for EdgeRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex-first" | "lexfirst" => Ok(EdgeRule::LexFirst),
            _ => Err(crate::error::range(format!(
                "unknown edge rule '{s}' (expected lex-first)"
            ))),
        }
    }
}

/// Returns the split edge `(u, v)` of `s`, with `u` before `v` in `perm`, or
/// `None` when `s` is independent.
pub fn find_split_edge(
    g: &Graph,
    s: VertexSet,
    perm: &Permutation,
    rule: EdgeRule,
) -> Option<(usize, usize)> {
    match rule {
        EdgeRule::LexFirst => {
            if perm.is_identity() {
                // fast path: perm order is bit order
                let u = s
                    .iter()
                    .find(|&u| !g.neighbors(u).intersection(s).is_empty())?;
                let v = g.neighbors(u).intersection(s).first()?;
                return Some((u, v));
            }
            let order = perm.order();
            let pos = order
                .iter()
                .position(|&u| s.contains(u) && !g.neighbors(u).intersection(s).is_empty())?;
            let u = order[pos];
            let inside = g.neighbors(u).intersection(s);
            // every neighbor of u inside s comes after u, or u would not be first
            let v = order[pos + 1..]
                .iter()
                .copied()
                .find(|&w| inside.contains(w))?;
            Some((u, v))
        }
    }
}

/// Splits `s` on the edge `(u, v)` into `(s - u, s - v)`.
pub fn split_node(g: &Graph, s: VertexSet, edge: (usize, usize)) -> Result<(VertexSet, VertexSet)> {
    let (u, v) = edge;
    if !s.contains(u) || !s.contains(v) {
        return Err(precondition(format!(
            "split edge ({u}, {v}) is not inside the node"
        )));
    }
    if !g.has_edge(u, v) {
        return Err(precondition(format!(
            "vertices {u} and {v} are not adjacent"
        )));
    }
    Ok((s.without(u), s.without(v)))
}

/// Exact value of `sum over v in N of |N| / (deg_N(v) + 1)`, where `deg_N` is
/// the degree inside the subgraph induced by `N`.
///
/// Stored as a numerator over [`COMMON_DENOM`], so comparisons are integer
/// comparisons.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Stability(u128);

impl Stability {
    /// Numerator over [`Stability::denominator`].
    pub fn numerator(self) -> u128 {
        self.0
    }

    pub fn denominator() -> u128 {
        COMMON_DENOM
    }

    /// Exact integer value, if the stability is an integer.
    pub fn as_integer(self) -> Option<u128> {
        self.0
            .is_multiple_of(COMMON_DENOM)
            .then_some(self.0 / COMMON_DENOM)
    }

    pub fn to_f64(self) -> f64 {
        let whole = self.0 / COMMON_DENOM;
        let frac = self.0 % COMMON_DENOM;
        whole as f64 + frac as f64 / COMMON_DENOM as f64
    }
}

impl fmt::Debug for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(k) => write!(f, "Stability({k})"),
            None => write!(f, "Stability(~{:.6})", self.to_f64()),
        }
    }
}

/// Stability of `s`; the empty set has stability 0.
pub fn stability(g: &Graph, s: VertexSet) -> Stability {
    let k = s.len() as u128;
    let total: u128 = s
        .iter()
        .map(|v| scaled_unit(g.neighbors(v).intersection(s).len() + 1))
        .sum();
    Stability(k * total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub content: VertexSet,
    pub depth: usize,
    pub parent: Option<usize>,
    /// Left and right child indices; `None` for leaves.
    pub children: Option<(usize, usize)>,
}

/// A complete (non-uniquified) split-by-edges tree, nodes in breadth-first
/// order with the root at index 0.
#[derive(Clone, Debug)]
pub struct FullTree {
    nodes: Vec<TreeNode>,
}

impl FullTree {
    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn root(&self) -> &TreeNode {
        &self.nodes[0]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn leaves(&self) -> impl Iterator<Item = &TreeNode> {
        self.nodes.iter().filter(|n| n.children.is_none())
    }

    pub fn height(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    /// Number of nodes at each depth.
    pub fn layer_widths(&self) -> Vec<usize> {
        let mut widths = vec![0; self.height() + 1];
        for node in &self.nodes {
            widths[node.depth] += 1;
        }
        widths
    }

    /// Depth of the shallowest leaf.
    pub fn first_leaf_depth(&self) -> usize {
        self.leaves()
            .map(|n| n.depth)
            .min()
            .expect("a tree has leaves")
    }
}

pub fn build_full_tree(g: &Graph, perm: &Permutation, rule: EdgeRule) -> Result<FullTree> {
    build_full_tree_capped(g, perm, rule, FULL_TREE_CAP)
}

/// [`build_full_tree`] with an explicit vertex cap.
pub fn build_full_tree_capped(
    g: &Graph,
    perm: &Permutation,
    rule: EdgeRule,
    cap: usize,
) -> Result<FullTree> {
    if g.n() > cap {
        return Err(Error::Capacity { n: g.n(), cap });
    }
    let mut nodes = vec![TreeNode {
        content: g.vertices(),
        depth: 0,
        parent: None,
        children: None,
    }];
    let mut next = 0;
    while next < nodes.len() {
        let content = nodes[next].content;
        if let Some(edge) = find_split_edge(g, content, perm, rule) {
            let (left, right) = split_node(g, content, edge)?;
            let depth = nodes[next].depth + 1;
            let li = nodes.len();
            for child in [left, right] {
                nodes.push(TreeNode {
                    content: child,
                    depth,
                    parent: Some(next),
                    children: None,
                });
            }
            nodes[next].children = Some((li, li + 1));
        }
        next += 1;
    }
    Ok(FullTree { nodes })
}

/// One layer of a layer-by-layer expansion. All nodes have cardinality
/// `n - depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub depth: usize,
    pub nodes: Vec<VertexSet>,
}

impl Layer {
    pub fn root(g: &Graph) -> Self {
        Layer {
            depth: 0,
            nodes: vec![g.vertices()],
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Expands every node of `layer` into its two children.
///
/// With `uniquify`, the next layer is sorted by bit pattern and duplicates
/// are dropped; otherwise children keep generation order (left then right,
/// parent by parent). Also returns the independent members of the next layer.
pub fn expand_layer(
    g: &Graph,
    layer: &Layer,
    perm: &Permutation,
    rule: EdgeRule,
    uniquify: bool,
) -> Result<(Layer, Vec<VertexSet>)> {
    let mut next = Vec::with_capacity(2 * layer.nodes.len());
    for &node in &layer.nodes {
        let edge = find_split_edge(g, node, perm, rule)
            .ok_or_else(|| precondition(format!("layer node {node:?} is independent")))?;
        let (left, right) = split_node(g, node, edge)?;
        next.push(left);
        next.push(right);
    }
    if uniquify {
        next.sort_unstable();
        next.dedup();
    }
    let independents = next
        .iter()
        .copied()
        .filter(|&s| g.is_independent(s))
        .collect();
    Ok((
        Layer {
            depth: layer.depth + 1,
            nodes: next,
        },
        independents,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{degree_ordering, random_graph, OrderingMode};
    use proptest::prelude::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn sorted(mut v: Vec<VertexSet>) -> Vec<VertexSet> {
        v.sort();
        v
    }

    #[test]
    fn split_edge_selection() {
        let k3 = Graph::complete(3).unwrap();
        let id = Permutation::identity(3);
        assert_eq!(
            find_split_edge(&k3, k3.vertices(), &id, EdgeRule::LexFirst),
            Some((0, 1))
        );
        assert_eq!(
            find_split_edge(&k3, set(&[2]), &id, EdgeRule::LexFirst),
            None
        );

        // path a-b-c with order (b, a, c)
        let path = Graph::path(3).unwrap();
        let perm = Permutation::from_order(vec![1, 0, 2]).unwrap();
        assert_eq!(
            find_split_edge(&path, path.vertices(), &perm, EdgeRule::LexFirst),
            Some((1, 0))
        );
        // order (c, b, a): c is first with a neighbor, its only neighbor is b
        let perm = Permutation::from_order(vec![2, 1, 0]).unwrap();
        assert_eq!(
            find_split_edge(&path, path.vertices(), &perm, EdgeRule::LexFirst),
            Some((2, 1))
        );
        assert_eq!(
            find_split_edge(&path, set(&[0, 2]), &perm, EdgeRule::LexFirst),
            None
        );
    }

    #[test]
    fn splitting() {
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(
            split_node(&k2, set(&[0, 1]), (0, 1)).unwrap(),
            (set(&[1]), set(&[0]))
        );
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(
            split_node(&k3, k3.vertices(), (0, 1)).unwrap(),
            (set(&[1, 2]), set(&[0, 2]))
        );
        let path = Graph::path(3).unwrap();
        assert!(matches!(
            split_node(&path, path.vertices(), (0, 2)),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            split_node(&path, set(&[0, 2]), (0, 1)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn stability_values() {
        let g = Graph::empty(3).unwrap();
        assert_eq!(stability(&g, g.vertices()).as_integer(), Some(9));
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(stability(&k3, k3.vertices()).as_integer(), Some(3));
        let path = Graph::path(3).unwrap();
        assert_eq!(stability(&path, path.vertices()).as_integer(), Some(4));
        assert_eq!(stability(&path, VertexSet::EMPTY).as_integer(), Some(0));
        // K2 plus an isolated vertex: 3/2 + 3/2 + 3
        let g = Graph::from_edges(3, &[(1, 2)]).unwrap();
        assert_eq!(stability(&g, g.vertices()).as_integer(), Some(6));
        // P4: 4/2 + 4/3 + 4/3 + 4/2 = 20/3
        let p4 = Graph::path(4).unwrap();
        let s = stability(&p4, p4.vertices());
        assert_eq!(s.as_integer(), None);
        assert_eq!(s.numerator() * 3, 20 * Stability::denominator());
    }

    #[test]
    fn small_full_trees() {
        let g = Graph::empty(3).unwrap();
        let t = build_full_tree(&g, &Permutation::identity(3), EdgeRule::LexFirst).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t.root().children.is_none());

        let k2 = Graph::complete(2).unwrap();
        let t = build_full_tree(&k2, &Permutation::identity(2), EdgeRule::LexFirst).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.nodes()[1].content, set(&[1]));
        assert_eq!(t.nodes()[2].content, set(&[0]));

        let k3 = Graph::complete(3).unwrap();
        let t = build_full_tree(&k3, &Permutation::identity(3), EdgeRule::LexFirst).unwrap();
        assert_eq!(t.len(), 7);
        assert_eq!(t.height(), 2);
        let leaves: Vec<_> = t.leaves().map(|n| n.content).collect();
        assert_eq!(
            sorted(leaves),
            vec![set(&[0]), set(&[1]), set(&[2]), set(&[2])]
        );
    }

    #[test]
    fn full_tree_cap() {
        let g = Graph::empty(17).unwrap();
        let err = build_full_tree(&g, &Permutation::identity(17), EdgeRule::LexFirst).unwrap_err();
        assert_eq!(err, Error::Capacity { n: 17, cap: 16 });
        assert!(err.to_string().contains("16"));
        assert!(
            build_full_tree_capped(&g, &Permutation::identity(17), EdgeRule::LexFirst, 20).is_ok()
        );
    }

    #[test]
    fn layer_expansion() {
        let k3 = Graph::complete(3).unwrap();
        let id = Permutation::identity(3);
        let (l1, ind) =
            expand_layer(&k3, &Layer::root(&k3), &id, EdgeRule::LexFirst, true).unwrap();
        assert_eq!(sorted(l1.nodes.clone()), vec![set(&[0, 2]), set(&[1, 2])]);
        assert!(ind.is_empty());
        assert_eq!(l1.depth, 1);

        let (l2, ind) = expand_layer(&k3, &l1, &id, EdgeRule::LexFirst, true).unwrap();
        assert_eq!(l2.nodes, vec![set(&[0]), set(&[1]), set(&[2])]);
        assert_eq!(ind, l2.nodes);
        let (raw, _) = expand_layer(&k3, &l1, &id, EdgeRule::LexFirst, false).unwrap();
        assert_eq!(raw.len(), 4);

        let path = Graph::path(3).unwrap();
        let (l1, ind) =
            expand_layer(&path, &Layer::root(&path), &id, EdgeRule::LexFirst, true).unwrap();
        assert_eq!(sorted(l1.nodes), vec![set(&[0, 2]), set(&[1, 2])]);
        assert_eq!(ind, vec![set(&[0, 2])]);

        let bad = Layer {
            depth: 1,
            nodes: vec![set(&[0, 2])],
        };
        assert!(matches!(
            expand_layer(&path, &bad, &id, EdgeRule::LexFirst, true),
            Err(Error::Precondition(_))
        ));
    }

    fn arb_small_graph() -> impl Strategy<Value = (Graph, OrderingMode)> {
        (1usize..=10, 0.0f64..=1.0, any::<u64>(), 0usize..3).prop_map(|(n, d, seed, o)| {
            let m = (d * crate::graph::max_edges(n) as f64).round() as usize;
            (random_graph(n, m, seed).unwrap(), OrderingMode::ALL[o])
        })
    }

    proptest! {
        #[test]
        fn stability_bounds(n in 1usize..=24, d in 0.0f64..=1.0, seed in any::<u64>(), bits in any::<u64>()) {
            let m = (d * crate::graph::max_edges(n) as f64).round() as usize;
            let g = random_graph(n, m, seed).unwrap();
            let s = VertexSet::from_bits(bits).intersection(g.vertices());
            prop_assume!(!s.is_empty());
            let k = s.len() as u128;
            let st = stability(&g, s);
            let lo = k * Stability::denominator();
            let hi = k * k * Stability::denominator();
            prop_assert!(lo <= st.numerator() && st.numerator() <= hi);
            prop_assert_eq!(st.numerator() == hi, g.is_independent(s));
            let complete = g.induced_edge_count(s) == s.len() * (s.len() - 1) / 2;
            prop_assert_eq!(st.numerator() == lo, complete);
        }

        #[test]
        fn full_tree_laws((g, mode) in arb_small_graph()) {
            let perm = degree_ordering(&g, mode);
            let t = build_full_tree(&g, &perm, EdgeRule::LexFirst).unwrap();
            let n = g.n();
            for (i, node) in t.nodes().iter().enumerate() {
                prop_assert_eq!(node.content.len(), n - node.depth);
                match node.children {
                    None => prop_assert!(g.is_independent(node.content)),
                    Some((l, r)) => {
                        let (left, right) = (t.nodes()[l].content, t.nodes()[r].content);
                        prop_assert_eq!(left.union(right), node.content);
                        prop_assert_eq!(left.intersection(right).len(), node.content.len() - 2);
                        prop_assert_eq!(t.nodes()[l].parent, Some(i));
                        prop_assert_eq!(t.nodes()[r].parent, Some(i));
                    }
                }
            }
            let widths = t.layer_widths();
            let first_leaf = t.first_leaf_depth();
            for (l, &w) in widths.iter().enumerate().take(first_leaf + 1) {
                prop_assert_eq!(w, 1usize << l);
            }
        }

        #[test]
        fn uniquified_layers_are_distinct_and_equal_sized((g, mode) in arb_small_graph()) {
            let perm = degree_ordering(&g, mode);
            let mut layer = Layer::root(&g);
            while !g.is_independent(layer.nodes[0]) && layer.nodes.iter().all(|&s| !g.is_independent(s)) {
                let (next, _) = expand_layer(&g, &layer, &perm, EdgeRule::LexFirst, true).unwrap();
                for w in next.nodes.windows(2) {
                    prop_assert!(w[0] < w[1]);
                }
                for s in &next.nodes {
                    prop_assert_eq!(s.len(), g.n() - next.depth);
                }
                layer = next;
            }
        }
    }
}
