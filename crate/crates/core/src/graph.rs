//! Undirected simple graphs on at most 64 vertices, stored as one adjacency
//! bitmask per vertex.

use std::fmt;

use crate::error::{precondition, range, Error, Result};
use crate::rng;

pub const MAX_VERTICES: usize = 64;

/// A subset of `0..64`, one bit per vertex.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// `{0, 1, ..., n - 1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
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
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(self) -> Members {
        Members(self.0)
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

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Members;

    fn into_iter(self) -> Members {
        self.iter()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Members {}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adjacency: Vec<VertexSet>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(range(format!(
                "vertex count {n} outside 1..={MAX_VERTICES}"
            )));
        }
        Ok(Graph {
            n,
            adjacency: vec![VertexSet::EMPTY; n],
            m: 0,
        })
    }

    /// Builds a graph from 0-based edges. Self-loops, out-of-range endpoints
    /// and repeated edges are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Cycle `0-1-...-(n-1)-0`, `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(range("a cycle needs at least 3 vertices"));
        }
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((0, n - 1));
        Graph::from_edges(n, &edges)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(range(format!(
                "edge ({u}, {v}) has an endpoint outside 0..{}",
                self.n
            )));
        }
        if u == v {
            return Err(range(format!("self-loop at vertex {u}")));
        }
        if self.adjacency[u].contains(v) {
            return Err(range(format!("repeated edge ({u}, {v})")));
        }
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
        self.m += 1;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].contains(v)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adjacency[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Graph with vertex `v` renamed to `mapping[v]`.
    pub fn relabel(&self, mapping: &[usize]) -> Result<Graph> {
        if mapping.len() != self.n {
            return Err(range("relabeling must cover every vertex"));
        }
        let edges: Vec<_> = self
            .edges()
            .map(|(u, v)| (mapping[u], mapping[v]))
            .collect();
        Graph::from_edges(self.n, &edges)
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter()
            .all(|v| self.adjacency[v].intersection(s).is_empty())
    }

    /// Number of edges with both endpoints in `s`.
    pub fn induced_edge_count(&self, s: VertexSet) -> usize {
        let twice: usize = s
            .iter()
            .map(|v| self.adjacency[v].intersection(s).len())
            .sum();
        twice / 2
    }

    /// Degree of `v` in the subgraph induced by `s`.
    pub fn induced_degree(&self, s: VertexSet, v: usize) -> Result<usize> {
        if !s.contains(v) {
            return Err(precondition(format!("vertex {v} is not in the set")));
        }
        Ok(self.adjacency[v].intersection(s).len())
    }

    /// 64-bit FNV-1a digest of the vertex count and edge list.
    pub fn fingerprint(&self) -> u64 {
        const PRIME: u64 = 0x0000_0100_0000_01B3;
        let mut h: u64 = 0xCBF2_9CE4_8422_2325;
        let mut feed = |x: u64| {
            for byte in x.to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(PRIME);
            }
        };
        feed(self.n as u64);
        for a in &self.adjacency {
            feed(a.bits());
        }
        h
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.m)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

pub fn max_edges(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Uniform G(n, m): `m` distinct pairs drawn without replacement from the
/// `n(n-1)/2` possible edges, listed lexicographically, by a partial
/// Fisher-Yates shuffle driven by [`rng::below`].
pub fn random_graph(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if n == 0 || n > MAX_VERTICES {
        return Err(range(format!(
            "vertex count {n} outside 1..={MAX_VERTICES}"
        )));
    }
    let total = max_edges(n);
    if m > total {
        return Err(range(format!(
            "edge count {m} exceeds {total}, the maximum for {n} vertices"
        )));
    }
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(total);
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    let mut rng = rng::rng_from_seed(seed);
    for i in 0..m {
        let j = i + rng::below(&mut rng, (total - i) as u64) as usize;
        pairs.swap(i, j);
    }
    let mut g = Graph::empty(n)?;
    for &(u, v) in &pairs[..m] {
        g.add_edge(u, v)?;
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum OrderingMode {
    /// The input labeling.
    #[default]
    Arbitrary,
    AscendingDegree,
    DescendingDegree,
}

impl OrderingMode {
    pub const ALL: [OrderingMode; 3] = [
        OrderingMode::Arbitrary,
        OrderingMode::AscendingDegree,
        OrderingMode::DescendingDegree,
    ];

    /// Short token used in variant labels.
    pub fn token(self) -> &'static str {
        match self {
            OrderingMode::Arbitrary => "arbitrary",
            OrderingMode::AscendingDegree => "asc",
            OrderingMode::DescendingDegree => "desc",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OrderingMode::Arbitrary => "arbitrary",
            OrderingMode::AscendingDegree => "ascending",
            OrderingMode::DescendingDegree => "descending",
        }
    }
}

impl std::str::FromStr for OrderingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "arbitrary" | "arb" | "identity" => Ok(OrderingMode::Arbitrary),
            "asc" | "ascending" => Ok(OrderingMode::AscendingDegree),
            "desc" | "descending" => Ok(OrderingMode::DescendingDegree),
            _ => Err(range(format!(
                "unknown ordering '{s}' (expected arbitrary, asc or desc)"
            ))),
        }
    }
}

/// A vertex order and its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            order: (0..n).collect(),
            rank: (0..n).collect(),
        }
    }

    pub fn from_order(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut rank = vec![usize::MAX; n];
        for (pos, &v) in order.iter().enumerate() {
            if v >= n || rank[v] != usize::MAX {
                return Err(range("order is not a permutation of 0..n"));
            }
            rank[v] = pos;
        }
        Ok(Permutation { order, rank })
    }

    /// Vertices from first to last.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Position of vertex `v`.
    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.order.iter().enumerate().all(|(i, &v)| i == v)
    }
}

/// Sorts vertices by degree with ties broken by vertex index.
pub fn degree_ordering(g: &Graph, mode: OrderingMode) -> Permutation {
    let mut order: Vec<usize> = (0..g.n()).collect();
    match mode {
        OrderingMode::Arbitrary => {}
        OrderingMode::AscendingDegree => order.sort_by_key(|&v| (g.degree(v), v)),
        OrderingMode::DescendingDegree => {
            order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v))
        }
    }
    Permutation::from_order(order).expect("sorted vertex list is a permutation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn random_graph_extremes() {
        let g = random_graph(4, 0, 99).unwrap();
        assert_eq!(g.m(), 0);
        assert_eq!(g, Graph::empty(4).unwrap());
        let k4 = random_graph(4, 6, 12345).unwrap();
        assert_eq!(k4, Graph::complete(4).unwrap());
    }

    #[test]
    fn random_graph_is_deterministic() {
        let a = random_graph(24, 100, 42).unwrap();
        let b = random_graph(24, 100, 42).unwrap();
        assert_eq!(a.edges().collect::<Vec<_>>(), b.edges().collect::<Vec<_>>());
        assert_ne!(a, random_graph(24, 100, 43).unwrap());
    }

    #[test]
    fn random_graph_range_errors() {
        assert!(matches!(random_graph(4, 7, 0), Err(Error::Range(_))));
        assert!(matches!(random_graph(0, 0, 0), Err(Error::Range(_))));
        assert!(matches!(random_graph(65, 0, 0), Err(Error::Range(_))));
        assert_eq!(random_graph(64, max_edges(64), 1).unwrap().m(), 2016);
    }

    #[test]
    fn random_graph_is_uniform_over_small_space() {
        // n = 5, m = 3: C(10, 3) = 120 equally likely graphs.
        let draws = 60_000u64;
        let mut counts = std::collections::HashMap::new();
        for seed in 0..draws {
            let g = random_graph(5, 3, rng::mix64(seed)).unwrap();
            *counts.entry(g.edges().collect::<Vec<_>>()).or_insert(0u64) += 1;
        }
        assert_eq!(counts.len(), 120);
        for (_, c) in counts {
            let freq = c as f64 / draws as f64;
            assert!((freq - 1.0 / 120.0).abs() < 0.01, "frequency {freq}");
            // tighter than the contract: about 6 standard deviations
            assert!((freq - 1.0 / 120.0).abs() < 0.0023, "frequency {freq}");
        }
    }

    #[test]
    fn degree_orderings() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let desc = degree_ordering(&star, OrderingMode::DescendingDegree);
        assert_eq!(desc.order(), &[0, 1, 2, 3]);
        let asc = degree_ordering(&star, OrderingMode::AscendingDegree);
        assert_eq!(asc.order(), &[1, 2, 3, 0]);

        let edgeless = Graph::empty(5).unwrap();
        for mode in OrderingMode::ALL {
            assert!(degree_ordering(&edgeless, mode).is_identity());
        }

        let path = Graph::path(3).unwrap();
        let desc = degree_ordering(&path, OrderingMode::DescendingDegree);
        assert_eq!(desc.order(), &[1, 0, 2]);
        assert!(degree_ordering(&path, OrderingMode::Arbitrary).is_identity());
    }

    #[test]
    fn independence_checks() {
        let k2 = Graph::complete(2).unwrap();
        assert!(k2.is_independent(VertexSet::EMPTY));
        assert!(!k2.is_independent(set(&[0, 1])));
        let c5 = Graph::cycle(5).unwrap();
        assert!(c5.is_independent(set(&[0, 2])));
        assert!(!c5.is_independent(set(&[0, 4])));
    }

    #[test]
    fn induced_counts() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(k4.induced_edge_count(k4.vertices()), 6);
        let path = Graph::path(3).unwrap();
        assert_eq!(path.induced_edge_count(path.vertices()), 2);
        assert_eq!(path.induced_edge_count(set(&[0, 2])), 0);

        assert_eq!(path.induced_degree(set(&[0, 1]), 1).unwrap(), 1);
        let k3 = Graph::complete(3).unwrap();
        for v in 0..3 {
            assert_eq!(k3.induced_degree(k3.vertices(), v).unwrap(), 2);
        }
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(g.induced_degree(g.vertices(), 2).unwrap(), 0);
        assert!(matches!(
            path.induced_degree(set(&[0]), 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..=20).prop_flat_map(|n| {
            (Just(n), 0..=max_edges(n), any::<u64>())
                .prop_map(|(n, m, seed)| random_graph(n, m, seed).unwrap())
        })
    }

    proptest! {
        #[test]
        fn generated_graphs_are_simple(g in arb_graph()) {
            let mut half_degrees = 0;
            for v in 0..g.n() {
                prop_assert!(!g.neighbors(v).contains(v));
                for u in g.neighbors(v) {
                    prop_assert!(g.neighbors(u).contains(v));
                }
                half_degrees += g.degree(v);
            }
            prop_assert_eq!(half_degrees, 2 * g.m());
            prop_assert!(g.m() <= max_edges(g.n()));
        }

        #[test]
        fn induced_quantities_agree(g in arb_graph(), bits in any::<u64>()) {
            let s = VertexSet::from_bits(bits).intersection(g.vertices());
            let degree_sum: usize = s.iter().map(|v| g.induced_degree(s, v).unwrap()).sum();
            prop_assert_eq!(g.induced_edge_count(s) * 2, degree_sum);
            prop_assert_eq!(g.is_independent(s), g.induced_edge_count(s) == 0);
        }

        #[test]
        fn orderings_are_bijections(g in arb_graph()) {
            for mode in OrderingMode::ALL {
                let p = degree_ordering(&g, mode);
                prop_assert_eq!(p.len(), g.n());
                for (pos, &v) in p.order().iter().enumerate() {
                    prop_assert_eq!(p.rank(v), pos);
                }
                for v in 0..g.n() {
                    prop_assert_eq!(p.order()[p.rank(v)], v);
                }
            }
        }
    }
}
