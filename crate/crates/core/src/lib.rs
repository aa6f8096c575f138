//! Quantum walks of free fields on lattices.
//!
//! The crate evaluates Weyl and Dirac walk symbols on the line, the square
//! lattice and the body-centered cubic lattice, evolves spinor fields on
//! periodic lattices, and checks the consequences that follow from the
//! closed forms: dispersion, drift and diffusion, the nonlinear Lorentz
//! group, the photon built from two Weyl fields, and the Cayley-graph
//! machinery that produces the lattices in the first place.

pub mod analysis;
pub mod cayley;
pub mod cli;
pub mod engine;
pub mod error;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod lorentz;
pub mod maxwell;
pub mod walks;

pub use error::{Error, Result};
pub use lattice::{Lattice, WaveVector};
pub use walks::{Branch, Chirality, Family, Mass, WalkSpec};

/// Artifact version embedded in every output header.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
