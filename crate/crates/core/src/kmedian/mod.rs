//! Exact k-median for the Ulam metric: move enumeration plus a kernel.

pub mod components;
pub mod kernel;
pub mod pairscheme;
pub mod solve;
pub mod substrings;
pub mod xp;

pub use components::{connectivity_components, ConnectivityPartition};
pub use kernel::{kernelize, lift_medians, Contraction, KernelReport};
pub use pairscheme::{decode as pair_scheme_decode, encode as pair_scheme_encode, PairSchemeString};
pub use solve::{solve_kmedian, solve_kmedian_with, KMedianOutcome};
pub use substrings::{longest_common_substring, maximal_common_substrings};
pub use xp::{xp_solve, xp_solve_with, xp_work_estimate, MedianSolution, MedianVerdict, XpConfig, XpOutcome};
