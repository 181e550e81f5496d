//! Exact k-center solver for the Ulam metric, parameterized by `k` and `d`.

pub mod blocks;
pub mod coloring;
pub mod cover;
pub mod guide;
pub mod search;

pub use blocks::{compute_blocks, normalize_blocks, Block};
pub use coloring::{
    coloring_family, Color, Coloring, ColoringFamily, ColoringFamilyConfig, ColoringPair, FamilyMode,
};
pub use cover::minimal_vertex_covers;
pub use guide::{guide_set, pick_witness_symbol, progress_candidates};
pub use search::{solve_kcenter, CenterSolution, CenterVerdict, KCenterOutcome, SearchState, SearchStats};
