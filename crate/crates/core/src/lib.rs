//! Exact clustering of permutations under the Ulam metric.
//!
//! [`kcenter`] and [`kmedian`] hold the solvers, [`reductions`] the instance
//! generators, and [`oracles`] brute-force references used for testing.

pub mod error;
pub mod kcenter;
pub mod kmedian;
pub mod oracles;
pub mod par;
pub mod perm;
pub mod reductions;

pub use error::{Error, Result};
pub use perm::{
    apply_move, distance_at_most, lcs_length, permutation_graph, ulam_distance, Instance, Permutation,
    PermutationGraph, Symbol, SymbolTable,
};
