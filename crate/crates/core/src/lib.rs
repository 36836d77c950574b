//! Split-by-edges trees for maximum independent set search.
//!
//! A split-by-edges tree of a graph has the full vertex set at its root and
//! splits every non-independent node on one of its internal edges `uv` into
//! `N - u` and `N - v`. The crate provides the tree machinery ([`tree`]), an
//! exact layer-by-layer search and a greedy depth-first descent ([`search`]),
//! an independent exact oracle ([`oracle`]), and a sweep harness that measures
//! descent success rates on random graphs ([`experiments`]).

pub mod cli;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod format;
pub mod graph;
pub mod oracle;
pub mod rng;
pub mod search;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{degree_ordering, random_graph, Graph, OrderingMode, Permutation, VertexSet};
pub use search::{
    choose_branch, dfs_descend, lbl_search, BranchPolicy, SearchConfig, SearchResult, Side,
};
pub use tree::{build_full_tree, expand_layer, find_split_edge, split_node, stability, EdgeRule};
