//! Brute-force automorphism groups of small colored graphs.
//!
//! This crate shares no code with the decomposition crates and is the ground
//! truth they are tested against. Search is individualization–refinement
//! backtracking; orders come from basic orbit lengths along the first path,
//! or from a Schreier–Sims chain for groups given only by generators.

mod chain;
mod error;
mod group;
pub mod perm;
mod registry;
mod search;

use graph_core::Graph;

pub use error::OracleError;
pub use group::{PermGroup, PermGroupRecord, SmallGroup, ENUMERATION_LIMIT};
pub use perm::Permutation;
pub use registry::IsoRegistry;

pub const DEFAULT_CAP: usize = 16;

/// Color-preserving automorphism group with the default degree cap.
pub fn automorphism_group(g: &Graph) -> Result<PermGroup, OracleError> {
    automorphism_group_with_cap(g, DEFAULT_CAP)
}

pub fn automorphism_group_with_cap(g: &Graph, cap: usize) -> Result<PermGroup, OracleError> {
    check_cap(g, cap)?;
    let r = search::automorphisms(g);
    Ok(PermGroup::with_order(g.n(), r.generators, r.order))
}

/// An isomorphism `g1 -> g2` respecting colors, as the image of each vertex of `g1`.
pub fn isomorphic_graphs(g1: &Graph, g2: &Graph) -> Result<Option<Permutation>, OracleError> {
    isomorphic_graphs_with_cap(g1, g2, DEFAULT_CAP)
}

pub fn isomorphic_graphs_with_cap(g1: &Graph, g2: &Graph, cap: usize) -> Result<Option<Permutation>, OracleError> {
    check_cap(g1, cap)?;
    check_cap(g2, cap)?;
    Ok(search::isomorphism(g1, g2))
}

fn check_cap(g: &Graph, cap: usize) -> Result<(), OracleError> {
    if g.n() > cap {
        Err(OracleError::CapExceeded { n: g.n(), cap })
    } else {
        Ok(())
    }
}
