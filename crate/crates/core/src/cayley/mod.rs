//! Group presentations, Cayley-graph balls, homogeneity checks and the
//! coset reduction of walks on virtually Abelian groups.

pub mod ball;
pub mod coset;
pub mod homogeneity;
pub mod models;
pub mod parse;

pub use ball::{build_ball, build_ball_with, CayleyBall, Edge, Vertex, DEFAULT_RADIUS_CAP};
pub use coset::{builtin_coset, coset_reduce, direct_symbol, CosetSpec, CosetStructure, GroupKernel};
pub use homogeneity::{check_homogeneity, Check, HomogeneityReport};
pub use models::{Elem, Model};
pub use parse::{parse_presentation, Letter, Presentation, Word};
