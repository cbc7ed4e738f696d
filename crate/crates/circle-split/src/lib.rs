//! Split decomposition of connected graphs and automorphism groups of
//! circle graphs assembled over the split tree.
//!
//! Prime nodes get their groups from the permutation oracle; degenerate
//! nodes (cliques and stars) and the tree structure are handled
//! symbolically. Whether the input is a circle graph is not checked, but a
//! prime node whose group cannot occur in a circle graph is reported.

mod groups;
mod split;
mod tree;

use perm_oracle::OracleError;
use thiserror::Error;

pub use groups::{circle_group, circle_group_with_cap, validate_circle_prime_node, StabilizerAnalysis};
pub use split::{find_split, Split};
pub use tree::{Center, NodeKind, SplitNode, SplitTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircleError {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is disconnected; split it into components first")]
    Disconnected,
    #[error("prime node has automorphism group {group} of order {order}, impossible in a circle graph")]
    NodeGroupOutsideClass { group: String, order: String },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
