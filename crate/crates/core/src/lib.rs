//! Maximizing the size of a k-truss by merging node pairs under a budget.
//!
//! The crate is `no_std` (with `alloc`). Enabling the `parallel` feature
//! pulls in `std` and evaluates independent candidates on the rayon pool;
//! results are identical with or without it.
//!
//! Module map:
//!
//! - [`graph`]: simple undirected graphs with vertex identification (merging).
//! - [`decomposition`]: truss and core decomposition, plus fast evaluation of
//!   the k-truss size after a single merger.
//! - [`pruning`]: inside/outside node classification and lossless pruning of
//!   outside nodes down to those with maximal inside neighborhoods.
//! - [`candidates`]: heuristic scoring of inside-outside and inside-inside
//!   mergers.
//! - [`batman`]: the full greedy loop with adaptive candidate distribution.
//! - [`baselines`]: naive greedy, random / most-new-edges / most-new-triangles
//!   baselines, exhaustive oracles and hardness fixtures.
//! - [`metrics`]: robustness measures, random graph models and the studies
//!   relating them to truss size.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod baselines;
pub mod batman;
pub mod candidates;
pub mod decomposition;
mod error;
pub mod graph;
pub mod metrics;
mod par;
pub mod pruning;

pub use batman::{
    adaptive_update, batman, objective, run, MergeKind, MergeStep, MergerPlan, Method,
    ObjectiveValue, RunConfig,
};
pub use candidates::{CandidateMerger, ConstraintFilter, Heuristics};
pub use decomposition::{
    core_decompose, post_merger_truss_size, truss_decompose, CoreDecomposition,
    TrussDecomposition,
};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, NodeId};
pub use pruning::{partition_nodes, prune_outside_maximal, NodePartition};
