//! Modular decomposition and what hangs off it: transitive orientations of
//! comparability graphs, automorphism groups of permutation graphs, and an
//! encoding of arbitrary graphs into comparability graphs of dimension at
//! most four with an explicit realizer.

mod dim4;
mod groups;
mod orient;
mod tree;

use perm_oracle::OracleError;
use thiserror::Error;

pub use dim4::{
    encode_cx, encode_dim4, four_chains, four_chains_with_sides, incidence_graph, is_cycle, realizer_check,
    DimFourGadget, GadgetRecord, Realizer, VertexRole,
};
pub use groups::{bipperm_shape_check, modular_tree_group, modular_tree_group_with_cap, prime_node_reports, PrimeNodeReport};
pub use orient::{
    all_transitive_orientations, count_transitive_orientations, is_comparability_graph, is_permutation_graph,
    orientation_action_semiregular_check, transitive_orient, Orientation,
};
pub use tree::{ModularNode, ModularTree, NodeKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComparabilityError {
    #[error("graph has no vertices")]
    Empty,
    #[error("prime node has automorphism group {group} of order {order}; permutation graphs only allow 1, Z2 and Z2^2")]
    NotPermutation { group: String, order: String },
    #[error("not a comparability graph")]
    NotComparability,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("the {n}-cycle is excluded: the encoding needs a connected graph that is not a cycle")]
    CycleInput { n: usize },
    #[error("graph is disconnected; the encoding needs a connected graph that is not a cycle")]
    Disconnected,
    #[error("graph has {n} vertices; at least 2 are needed")]
    TooSmall { n: usize },
    #[error("graph on {n} vertices is too large for exhaustive enumeration")]
    TooLarge { n: usize },
    #[error("invalid realizer: {0}")]
    InvalidChain(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
