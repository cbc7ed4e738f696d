//! Undirected simple graphs on dense vertex ids, with optional vertex colors.
//!
//! Every other crate in the workspace consumes [`Graph`]. Vertices are `0..n`,
//! adjacency is symmetric and irreflexive, and colors default to `0`.

mod error;
mod graph;
mod io;
pub mod generate;

pub use error::GraphError;
pub use graph::{Graph, TwinPartition};
pub use io::{parse_edge_list, to_dot, to_edge_list};
