//! Library side of the `autg` binary: class dispatch, oracle cross-checks
//! and the subcommands, each returning text and an exit code so tests can
//! drive them without spawning a process.

mod commands;
mod dispatch;

use std::path::PathBuf;

use circle_split::CircleError;
use comparability_modular::ComparabilityError;
use graph_core::{Graph, GraphError};
use interval_mpq::IntervalError;
use perm_oracle::{OracleError, DEFAULT_CAP};
use thiserror::Error;

pub use commands::{
    cmd_aut, cmd_aut_batch, cmd_convert, cmd_count_to, cmd_dim4, cmd_oracle, exhaustive_orientation_count, AutOptions,
    ConvertMode, Output, RunReport, DIM4_DEFAULT_CAP,
};
pub use dispatch::{assemble_components, compute, Class, Computed};

pub const EXIT_OTHER: i32 = 1;
pub const EXIT_CLASS_MISMATCH: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_CAP: i32 = 4;
pub const EXIT_MISMATCH: i32 = 5;

pub const CAP_ENV: &str = "AUTG_ORACLE_CAP";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: GraphError },
    #[error("{0}")]
    ClassMismatch(String),
    #[error("graph has {n} vertices, above the oracle cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("exhaustive check needs at most {limit} edges, graph has {m}")]
    ExhaustiveLimit { m: usize, limit: usize },
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Other(_) => EXIT_OTHER,
            CliError::Parse { .. } => EXIT_PARSE,
            CliError::ClassMismatch(_) => EXIT_CLASS_MISMATCH,
            CliError::CapExceeded { .. } | CliError::ExhaustiveLimit { .. } => EXIT_CAP,
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::CapExceeded { n, cap } => CliError::CapExceeded { n, cap },
        }
    }
}

impl From<IntervalError> for CliError {
    fn from(e: IntervalError) -> Self {
        match e {
            IntervalError::NotInterval | IntervalError::NotATree => CliError::ClassMismatch(e.to_string()),
            IntervalError::Oracle(o) => o.into(),
            IntervalError::Empty | IntervalError::Disconnected => CliError::Other(e.to_string()),
        }
    }
}

impl From<CircleError> for CliError {
    fn from(e: CircleError) -> Self {
        match e {
            CircleError::NodeGroupOutsideClass { .. } => CliError::ClassMismatch(e.to_string()),
            CircleError::Oracle(o) => o.into(),
            CircleError::Empty | CircleError::Disconnected => CliError::Other(e.to_string()),
        }
    }
}

impl From<ComparabilityError> for CliError {
    fn from(e: ComparabilityError) -> Self {
        match e {
            ComparabilityError::NotPermutation { .. }
            | ComparabilityError::NotComparability
            | ComparabilityError::NotBipartite
            | ComparabilityError::CycleInput { .. }
            | ComparabilityError::Disconnected
            | ComparabilityError::TooSmall { .. } => CliError::ClassMismatch(e.to_string()),
            ComparabilityError::Oracle(o) => o.into(),
            _ => CliError::Other(e.to_string()),
        }
    }
}

/// Flag, then environment value, then `default`.
pub fn resolve_cap(flag: Option<usize>, env: Option<&str>, default: usize) -> Result<usize, CliError> {
    match (flag, env) {
        (Some(c), _) => Ok(c),
        (None, Some(s)) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Other(format!("{CAP_ENV} must be a non-negative integer, got {s:?}"))),
        (None, None) => Ok(default),
    }
}

/// [`resolve_cap`] reading the process environment, with the oracle's default.
pub fn cap_from_env(flag: Option<usize>) -> Result<usize, CliError> {
    cap_from_env_or(flag, DEFAULT_CAP)
}

pub fn cap_from_env_or(flag: Option<usize>, default: usize) -> Result<usize, CliError> {
    resolve_cap(flag, std::env::var(CAP_ENV).ok().as_deref(), default)
}

pub fn read_graph(path: &std::path::Path) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    graph_core::parse_edge_list(&text).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
}
