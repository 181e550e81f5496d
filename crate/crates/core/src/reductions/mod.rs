//! Instance generators: hardness constructions and planted random instances.

pub mod closest_string;
pub mod graph;
pub mod mcc;
pub mod planted;
pub mod vc;

pub use closest_string::gen_center_from_closest_string;
pub use graph::{min_vertex_cover, SimpleGraph};
pub use mcc::{gen_median_from_multicolored_clique, mcc_certificate, mcc_sigma_from_clique, MccParams};
pub use planted::{gen_planted, PlantedMode};
pub use vc::{center_solution_from_cover, gen_center_from_vertex_cover, subdivide_2};
