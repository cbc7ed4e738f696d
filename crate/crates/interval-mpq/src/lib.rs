//! Interval graphs: clique orderings, MPQ-trees, and automorphism groups read
//! off the tree, plus constructions moving between interval graphs and trees
//! with isomorphic automorphism groups.

mod cliques;
mod construct;
mod groups;
mod mpq;
mod trees;
mod unit;

use perm_oracle::OracleError;
use thiserror::Error;

pub use cliques::{chordal_maximal_cliques, is_consecutive, maximal_cliques_interval, CliqueOrdering};
pub use construct::{interval_to_tree, tree_to_interval, y_gadget};
pub use groups::{interval_group, mpq_automorphism_data, MpqAutGroupData};
pub use mpq::{build_mpq, MpqNode, MpqTree};
pub use trees::{forest_group, tree_centers, tree_group};
pub use unit::{caterpillar_group_shape, classify_unit_interval, is_prime_interval_check, UnitClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("graph is not an interval graph")]
    NotInterval,
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is disconnected; split it into components first")]
    Disconnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
