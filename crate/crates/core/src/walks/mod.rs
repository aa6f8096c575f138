//! Weyl and Dirac walk symbols, their position-space kernels, and the
//! unitarity and isotropy verifiers.

mod isotropy;
mod kernel;
mod scalar;
mod symbol;
pub mod trig;

pub use isotropy::{binary_rotation_rep, check_isotropy, IsotropyReport, IsotropyRep, RepElement};
pub use kernel::{
    check_unitarity_conditions, position_kernel, Condition, KernelEntry, TransitionKernel,
    UnitarityReport,
};
pub use scalar::{scalar_walk_solutions, ScalarSolutions, DEFAULT_SCALAR_CAP};
pub use symbol::{
    continuum_hamiltonian, dirac_symbol, dispersion, helicity_vector, interpolating_hamiltonian,
    omega, omega_derivatives, symbol, symbol_matrix, weyl_symbol, OmegaDerivatives, WalkSymbol,
};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Weyl,
    Dirac,
}

/// Chirality branch ± of the Weyl solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    Plus,
    Minus,
}

impl Chirality {
    pub fn sign(self) -> f64 {
        match self {
            Chirality::Plus => 1.0,
            Chirality::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Chirality::Plus => Chirality::Minus,
            Chirality::Minus => Chirality::Plus,
        }
    }
}

/// Transpose branch: B is the transpose of A in the canonical basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    A,
    B,
}

/// Mass parameter m ∈ [−1, 1]; the hopping weight is n = √(1 − m²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Mass(f64);

impl Mass {
    pub fn new(m: f64) -> Result<Self> {
        if !m.is_finite() || m.abs() > 1.0 {
            return Err(Error::MassOutOfRange(m));
        }
        Ok(Mass(m))
    }

    pub const ZERO: Mass = Mass(0.0);

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn n(self) -> f64 {
        (1.0 - self.0 * self.0).max(0.0).sqrt()
    }
}

impl TryFrom<f64> for Mass {
    type Error = Error;
    fn try_from(m: f64) -> Result<Self> {
        Mass::new(m)
    }
}

impl From<Mass> for f64 {
    fn from(m: Mass) -> f64 {
        m.0
    }
}

/// Selects the walk and hence every closed-form formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalkSpec {
    pub family: Family,
    pub dim: usize,
    pub chirality: Chirality,
    pub branch: Branch,
    pub mass: Mass,
}

impl WalkSpec {
    pub fn weyl(dim: usize, chirality: Chirality, branch: Branch) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { family: Family::Weyl, dim, chirality, branch, mass: Mass::ZERO })
    }

    pub fn dirac(dim: usize, chirality: Chirality, branch: Branch, m: f64) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { family: Family::Dirac, dim, chirality, branch, mass: Mass::new(m)? })
    }

    /// Weyl walk, + chirality, A branch.
    pub fn weyl_plus(dim: usize) -> Self {
        Self::weyl(dim, Chirality::Plus, Branch::A).expect("valid dimension")
    }

    pub fn with_mass(mut self, m: f64) -> Result<Self> {
        self.mass = Mass::new(m)?;
        Ok(self)
    }

    pub fn components(&self) -> usize {
        match (self.family, self.dim) {
            (Family::Weyl, _) | (Family::Dirac, 1) => 2,
            (Family::Dirac, _) => 4,
        }
    }

    pub fn lattice(&self) -> Lattice {
        Lattice::for_dim(self.dim).expect("dimension validated at construction")
    }

    pub fn m(&self) -> f64 {
        match self.family {
            Family::Weyl => 0.0,
            Family::Dirac => self.mass.value(),
        }
    }

    pub fn n(&self) -> f64 {
        match self.family {
            Family::Weyl => 1.0,
            Family::Dirac => self.mass.n(),
        }
    }

    /// The massless walk sharing this spec's Weyl content.
    pub fn weyl_part(&self) -> Self {
        Self { family: Family::Weyl, mass: Mass::ZERO, ..*self }
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if (1..=3).contains(&dim) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("walk dimension {dim} not in 1..=3")))
    }
}

impl fmt::Display for WalkSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            Family::Weyl => "weyl",
            Family::Dirac => "dirac",
        };
        let ch = match self.chirality {
            Chirality::Plus => "+",
            Chirality::Minus => "-",
        };
        let br = match self.branch {
            Branch::A => "",
            Branch::B => "T",
        };
        write!(f, "{fam}{}d{ch}{br}", self.dim)
    }
}

/// Parses `weyl3d+`, `weyl3d-T`, `dirac1d`, `dirac3d-`: family, dimension,
/// optional chirality (default +), optional `T` for the transposed branch.
/// Dirac masses are set separately with [`WalkSpec::with_mass`].
impl FromStr for WalkSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unrecognized walk '{s}'"));
        let lower = s.trim();
        let (family, rest) = if let Some(r) = lower.strip_prefix("weyl") {
            (Family::Weyl, r)
        } else if let Some(r) = lower.strip_prefix("dirac") {
            (Family::Dirac, r)
        } else {
            return Err(bad());
        };
        let mut chars = rest.chars();
        let dim = chars.next().and_then(|c| c.to_digit(10)).ok_or_else(bad)? as usize;
        if chars.next() != Some('d') {
            return Err(bad());
        }
        let tail: String = chars.collect();
        let (chirality, tail) = match tail.chars().next() {
            Some('+') => (Chirality::Plus, &tail[1..]),
            Some('-') => (Chirality::Minus, &tail[1..]),
            _ => (Chirality::Plus, tail.as_str()),
        };
        let branch = match tail {
            "" | "A" | "a" => Branch::A,
            "T" | "B" | "b" => Branch::B,
            _ => return Err(bad()),
        };
        check_dim(dim)?;
        Ok(Self { family, dim, chirality, branch, mass: Mass::ZERO })
    }
}
