//! Exact independence numbers and maximal independent set enumeration.
//!
//! Nothing here touches the split-by-edges machinery; these routines are the
//! ground truth the tree searches are checked against.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Vertex cap for exhaustive subset enumeration.
pub const ENUMERATION_CAP: usize = 20;
/// Vertex cap for maximal set enumeration.
pub const MAXIMAL_SETS_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub alpha: usize,
    pub witness: VertexSet,
    /// Search nodes visited.
    pub nodes: u64,
}

/// Sorts by cardinality, then by bit pattern.
pub fn canonical_sort(sets: &mut [VertexSet]) {
    sets.sort_by_key(|s| (s.len(), s.bits()));
}

struct BranchAndBound<'a> {
    g: &'a Graph,
    best: usize,
    witness: VertexSet,
    nodes: u64,
}

impl BranchAndBound<'_> {
    /// Greedy clique cover size of `rem`; an upper bound on its independence
    /// number.
    fn clique_cover(&self, mut rem: VertexSet) -> usize {
        let mut cliques = 0;
        while let Some(v) = rem.first() {
            rem.remove(v);
            let mut candidates = self.g.neighbors(v).intersection(rem);
            while let Some(w) = candidates.first() {
                rem.remove(w);
                candidates = candidates.intersection(self.g.neighbors(w));
            }
            cliques += 1;
        }
        cliques
    }

    fn search(&mut self, mut rem: VertexSet, mut chosen: VertexSet) {
        self.nodes += 1;
        // vertices of degree 0 or 1 belong to some maximum set
        loop {
            let low = rem
                .iter()
                .find(|&v| self.g.neighbors(v).intersection(rem).len() <= 1);
            match low {
                Some(v) => {
                    chosen.insert(v);
                    rem = rem.difference(self.g.neighbors(v).with(v));
                }
                None => break,
            }
        }
        if rem.is_empty() {
            if chosen.len() > self.best {
                self.best = chosen.len();
                self.witness = chosen;
            }
            return;
        }
        if chosen.len() + self.clique_cover(rem) <= self.best {
            return;
        }
        let pivot = rem
            .iter()
            .max_by_key(|&v| {
                (
                    self.g.neighbors(v).intersection(rem).len(),
                    std::cmp::Reverse(v),
                )
            })
            .expect("rem is nonempty");
        self.search(
            rem.difference(self.g.neighbors(pivot).with(pivot)),
            chosen.with(pivot),
        );
        self.search(rem.without(pivot), chosen);
    }
}

/// Independence number by branch and bound: branch on a maximum-degree
/// vertex, prune with a greedy clique cover.
pub fn alpha_exact(g: &Graph) -> OracleResult {
    let mut bb = BranchAndBound {
        g,
        best: 0,
        witness: VertexSet::EMPTY,
        nodes: 0,
    };
    bb.search(g.vertices(), VertexSet::EMPTY);
    OracleResult {
        alpha: bb.best,
        witness: bb.witness,
        nodes: bb.nodes,
    }
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.n() > cap {
        Err(Error::Capacity { n: g.n(), cap })
    } else {
        Ok(())
    }
}

/// All independent sets, by walking every subset of the vertex set.
fn independent_subsets(g: &Graph) -> impl Iterator<Item = VertexSet> + '_ {
    let n = g.n();
    (0u64..1 << n)
        .map(VertexSet::from_bits)
        .filter(move |&s| s.iter().all(|v| g.neighbors(v).intersection(s).is_empty()))
}

/// Independence number by checking every subset.
pub fn alpha_by_enumeration(g: &Graph) -> Result<OracleResult> {
    check_cap(g, ENUMERATION_CAP)?;
    let mut best = VertexSet::EMPTY;
    let mut nodes = 0;
    for s in independent_subsets(g) {
        nodes += 1;
        if s.len() > best.len() {
            best = s;
        }
    }
    Ok(OracleResult {
        alpha: best.len(),
        witness: best,
        nodes,
    })
}

/// Every maximum independent set, by checking every subset. Canonical order.
pub fn maximum_sets_by_enumeration(g: &Graph) -> Result<Vec<VertexSet>> {
    check_cap(g, ENUMERATION_CAP)?;
    let mut best = 0;
    let mut sets = Vec::new();
    for s in independent_subsets(g) {
        match s.len().cmp(&best) {
            std::cmp::Ordering::Greater => {
                best = s.len();
                sets.clear();
                sets.push(s);
            }
            std::cmp::Ordering::Equal => sets.push(s),
            std::cmp::Ordering::Less => {}
        }
    }
    canonical_sort(&mut sets);
    Ok(sets)
}

/// Maximal independent sets, i.e. maximal cliques of the complement, by
/// Bron-Kerbosch with pivoting. Canonical order.
pub fn enumerate_maximal_sets(g: &Graph) -> Result<Vec<VertexSet>> {
    check_cap(g, MAXIMAL_SETS_CAP)?;
    let all = g.vertices();
    let non_neighbors: Vec<VertexSet> = (0..g.n())
        .map(|v| all.difference(g.neighbors(v)).without(v))
        .collect();
    let mut out = Vec::new();
    bron_kerbosch(
        &non_neighbors,
        VertexSet::EMPTY,
        all,
        VertexSet::EMPTY,
        &mut out,
    );
    canonical_sort(&mut out);
    Ok(out)
}

fn bron_kerbosch(
    adj: &[VertexSet],
    r: VertexSet,
    mut p: VertexSet,
    mut x: VertexSet,
    out: &mut Vec<VertexSet>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = p
        .union(x)
        .iter()
        .max_by_key(|&u| adj[u].intersection(p).len())
        .expect("p is nonempty");
    for v in p.difference(adj[pivot]) {
        bron_kerbosch(
            adj,
            r.with(v),
            p.intersection(adj[v]),
            x.intersection(adj[v]),
            out,
        );
        p.remove(v);
        x.insert(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{max_edges, random_graph};
    use crate::rng;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    fn k33() -> Graph {
        let edges: Vec<_> = (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect();
        Graph::from_edges(6, &edges).unwrap()
    }

    #[test]
    fn known_independence_numbers() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(alpha_by_enumeration(&c5).unwrap().alpha, 2);
        assert_eq!(alpha_exact(&c5).alpha, 2);

        assert_eq!(alpha_by_enumeration(&petersen()).unwrap().alpha, 4);
        assert_eq!(alpha_exact(&petersen()).alpha, 4);

        let r = alpha_exact(&k33());
        assert_eq!(r.alpha, 3);
        assert!(r.witness == set(&[0, 1, 2]) || r.witness == set(&[3, 4, 5]));
        assert_eq!(alpha_by_enumeration(&k33()).unwrap().alpha, 3);
        assert_eq!(
            maximum_sets_by_enumeration(&k33()).unwrap(),
            vec![set(&[0, 1, 2]), set(&[3, 4, 5])]
        );
    }

    #[test]
    fn maximal_sets_small_cases() {
        let path = Graph::path(3).unwrap();
        assert_eq!(
            enumerate_maximal_sets(&path).unwrap(),
            vec![set(&[1]), set(&[0, 2])]
        );
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(
            enumerate_maximal_sets(&k3).unwrap(),
            vec![set(&[0]), set(&[1]), set(&[2])]
        );
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(
            enumerate_maximal_sets(&c4).unwrap(),
            vec![set(&[0, 2]), set(&[1, 3])]
        );
        assert_eq!(
            enumerate_maximal_sets(&Graph::empty(3).unwrap()).unwrap(),
            vec![set(&[0, 1, 2])]
        );
        // the Petersen graph has exactly five maximum independent sets
        let sets = enumerate_maximal_sets(&petersen()).unwrap();
        assert_eq!(sets.iter().filter(|s| s.len() == 4).count(), 5);
    }

    #[test]
    fn caps() {
        let g = Graph::empty(17).unwrap();
        assert_eq!(
            enumerate_maximal_sets(&g),
            Err(Error::Capacity { n: 17, cap: 16 })
        );
        let g = Graph::empty(21).unwrap();
        assert!(alpha_by_enumeration(&g).is_err());
        assert_eq!(alpha_exact(&g).alpha, 21);
    }

    #[test]
    fn branch_and_bound_matches_enumeration() {
        for i in 0..500u64 {
            let n = 1 + (i % 16) as usize;
            let m = (rng::mix64(i) % (max_edges(n) as u64 + 1)) as usize;
            let g = random_graph(n, m, i).unwrap();
            let bb = alpha_exact(&g);
            let en = alpha_by_enumeration(&g).unwrap();
            assert_eq!(bb.alpha, en.alpha, "{g:?}");
            assert!(g.is_independent(bb.witness));
            assert_eq!(bb.witness.len(), bb.alpha);
        }
    }

    #[test]
    fn maximal_sets_are_independent_and_maximal() {
        for i in 0..200u64 {
            let n = 1 + (i % 12) as usize;
            let m = (rng::mix64(i ^ 77) % (max_edges(n) as u64 + 1)) as usize;
            let g = random_graph(n, m, i).unwrap();
            let sets = enumerate_maximal_sets(&g).unwrap();
            for &s in &sets {
                assert!(g.is_independent(s));
                for v in g.vertices().difference(s) {
                    assert!(!g.is_independent(s.with(v)));
                }
            }
            let mut dedup = sets.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), sets.len());
            let max = sets.iter().map(|s| s.len()).max().unwrap();
            assert_eq!(max, alpha_exact(&g).alpha);
        }
    }

    #[test]
    fn alpha_is_invariant_under_relabeling() {
        let mut r = rng::rng_from_seed(3);
        for i in 0..100u64 {
            let g = random_graph(20, 20 + (i as usize * 3) % 150, i).unwrap();
            let mut mapping: Vec<usize> = (0..20).collect();
            for j in (1..20).rev() {
                mapping.swap(j, rng::below(&mut r, j as u64 + 1) as usize);
            }
            assert_eq!(
                alpha_exact(&g).alpha,
                alpha_exact(&g.relabel(&mapping).unwrap()).alpha
            );
        }
    }

    #[test]
    fn handles_sixty_four_vertices() {
        let g = random_graph(64, 500, 11).unwrap();
        let r = alpha_exact(&g);
        assert!(g.is_independent(r.witness));
        assert_eq!(r.witness.len(), r.alpha);
    }
}
