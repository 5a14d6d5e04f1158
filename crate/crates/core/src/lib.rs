//! Exact-arithmetic engine for regular partitions of finite irreducible
//! root systems and regular decompositions of `sl(n+1)`.
//!
//! Everything here is integer or rational arithmetic; there is no floating
//! point anywhere. The crate is organized around four subsystems:
//!
//! - [`rootsys`] — construction of the root systems `A`–`G` as integer
//!   coefficient vectors over the simple roots, with closure, negation and
//!   sum queries on root subsets.
//! - [`weyl`] — Cartan matrices, simple reflections, Weyl group enumeration
//!   and canonical forms of block partitions under block renumbering,
//!   global sign swap and Weyl action.
//! - [`regpart`] — regular partitions (every block and every pairwise union
//!   of blocks closed), their labeled multigraph encoding, canonical
//!   constructors from integer partitions, unique reconstruction from
//!   graphs, and exhaustive backtracking enumeration with closure pruning.
//! - [`liealg`] — the traceless-matrix realization of `sl(n+1)` over exact
//!   rationals, a commutator-closure verifier for regular decompositions,
//!   and the constructive `(k+1,k)` / `(k,k)` families.
//!
//! Serialization of all of the above (JSON for partitions, graphs and
//! decompositions, CSV for enumeration reports) lives in [`json`].

pub mod json;
pub mod liealg;
pub mod regpart;
pub mod rootsys;
pub mod weyl;

pub use regpart::{BlockPartition, IntPartition, PartitionGraph};
pub use rootsys::{Root, RootSet, RootSystem, RootSystemType};
pub use weyl::Equivalences;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}: {reason}")]
    InvalidRank {
        family: char,
        rank: usize,
        reason: String,
    },

    #[error("{0:?} is not a root of the system")]
    NotARoot(Vec<i64>),

    #[error("invalid root index {index} for a system with {len} roots")]
    InvalidRootIndex { index: usize, len: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("{what} too large: {size} exceeds the capacity limit {limit}")]
    CapacityExceeded {
        what: String,
        size: u64,
        limit: u64,
    },

    #[error(
        "node budget of {budget} visited nodes exceeded \
         ({classes_found} classes found before the cutoff)"
    )]
    NodeBudgetExceeded { budget: u64, classes_found: usize },

    #[error("serialization error: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
