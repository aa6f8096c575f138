//! Photon as a pair of Weyl walks: modified dispersion ω(κ) = 2|n_{κ/2}|,
//! the κ-dependent speed of light, polarization frames and the spin-1
//! evolution of the transverse field.
//!
//! Photon wave-vectors κ are in walk units: the Weyl symbol is evaluated
//! at Cartesian k = √3 κ, so the limiting speed is 1 and ω → |κ|.

pub mod fock;
pub mod units;

pub use fock::{check_anticommutators, fock_commutator_check, FockCheckConfig, FockReport, Species};
pub use units::{Anchor, PlanckUnits, C_LIGHT, HBAR};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, WaveVector};
use crate::linalg::{angle3, c, cross, dot, norm3, pauli, scale3, Vec3};
use crate::walks::{helicity_vector, omega, omega_derivatives, symbol_matrix, Family, WalkSpec};
use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

fn require_weyl3(spec: &WalkSpec) -> Result<()> {
    if spec.family != Family::Weyl {
        return Err(Error::FamilyMismatch { expected: "Weyl" });
    }
    if spec.dim != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: spec.dim });
    }
    Ok(())
}

/// Cartesian walk wave-vector at κ/2, checked to lie in the zone.
fn half(kappa: &WaveVector, spec: &WalkSpec) -> Result<WaveVector> {
    require_weyl3(spec)?;
    if kappa.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: kappa.dim() });
    }
    let h = kappa.scale(3f64.sqrt() / 2.0);
    if !Lattice::Bcc.bz_contains(&h)? {
        return Err(Error::OutOfZone);
    }
    Ok(h)
}

/// n_k = (ω/sin ω) v(k), so |n_k| = ω(k).
pub fn helicity_n(k: &WaveVector, spec: &WalkSpec) -> Result<Vec3> {
    let w = omega(k, spec)?;
    let v = helicity_vector(k, spec);
    let s = norm3(&v);
    Ok(if s == 0.0 { [0.0; 3] } else { scale3(&v, w / s) })
}

/// ω(κ) = 2|n_{κ/2}|.
pub fn photon_dispersion(kappa: &WaveVector, spec: &WalkSpec) -> Result<f64> {
    Ok(2.0 * omega(&half(kappa, spec)?, spec)?)
}

/// 2n_{κ/2}, which tends to κ at small κ.
pub fn photon_helicity(kappa: &WaveVector, spec: &WalkSpec) -> Result<Vec3> {
    Ok(scale3(&helicity_n(&half(kappa, spec)?, spec)?, 2.0))
}

/// ∇_κ ω(κ).
pub fn photon_group_velocity(kappa: &WaveVector, spec: &WalkSpec) -> Result<Vec3> {
    let h = half(kappa, spec)?;
    Ok(scale3(&omega_derivatives(&h, spec)?.grad, 3f64.sqrt()))
}

/// |∇ω| at κ = magnitude · direction; equals 1 at κ = 0.
pub fn vacuum_speed(magnitude: f64, direction: &Vec3, spec: &WalkSpec) -> Result<f64> {
    let n = norm3(direction);
    if n == 0.0 {
        return Err(Error::InvalidArgument("zero direction".into()));
    }
    if magnitude == 0.0 {
        require_weyl3(spec)?;
        return Ok(1.0);
    }
    let d = scale3(direction, magnitude / n);
    Ok(norm3(&photon_group_velocity(&WaveVector::d3(d[0], d[1], d[2]), spec)?))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PolarizationFrame {
    pub kappa: WaveVector,
    pub n_hat: Vec3,
    pub u1: Vec3,
    pub u2: Vec3,
    /// Angle between 2n_{κ/2} and κ.
    pub tilt_n: f64,
    /// Angle between ∇ω and κ.
    pub tilt_velocity: f64,
}

impl PolarizationFrame {
    /// Largest violation of u^i·n̂ = 0, u¹·u² = 0, |u^i| = 1.
    pub fn orthonormality_residual(&self) -> f64 {
        [
            dot(&self.u1, &self.n_hat).abs(),
            dot(&self.u2, &self.n_hat).abs(),
            dot(&self.u1, &self.u2).abs(),
            (norm3(&self.u1) - 1.0).abs(),
            (norm3(&self.u2) - 1.0).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn handedness(&self) -> f64 {
        dot(&cross(&self.u1, &self.u2), &self.n_hat)
    }
}

pub fn polarization_frame(kappa: &WaveVector, spec: &WalkSpec) -> Result<PolarizationFrame> {
    let h = half(kappa, spec)?;
    let n = helicity_n(&h, spec)?;
    let nn = norm3(&n);
    if nn == 0.0 {
        return Err(Error::SingularPoint(0.0));
    }
    let n_hat = scale3(&n, 1.0 / nn);
    let axis = (0..3)
        .min_by(|&a, &b| n_hat[a].abs().total_cmp(&n_hat[b].abs()))
        .unwrap_or(0);
    let mut e = [0.0; 3];
    e[axis] = 1.0;
    let t = cross(&n_hat, &e);
    let u1 = scale3(&t, 1.0 / norm3(&t));
    let u2 = cross(&n_hat, &u1);
    let kv = kappa.padded();
    let grad = photon_group_velocity(kappa, spec)?;
    Ok(PolarizationFrame {
        kappa: *kappa,
        n_hat,
        u1,
        u2,
        tilt_n: angle3(&n, &kv),
        tilt_velocity: angle3(&grad, &kv),
    })
}

/// G^i(t) = φ(t)ᵀ σ^i ψ(t) for ψ(t) = W^t ψ₀, φ(t) = (W*)^t φ₀ with W the
/// Weyl symbol at κ/2.
#[derive(Debug, Clone, Serialize)]
pub struct TransverseEvolution {
    pub n_hat: Vec3,
    #[serde(skip)]
    pub fields: Vec<[Complex64; 3]>,
    /// Signed rotation angle per step about n̂.
    pub angle_per_step: f64,
    /// max_t |n̂·G(t)|.
    pub longitudinal: f64,
}

/// Evolves a transverse pair amplitude for `steps` steps. ψ₀ is the +1
/// eigenvector of n̂·σ and φ₀ = (ψ₀₂, −ψ₀₁), which makes n̂·G(0) = 0.
pub fn transverse_evolution(kappa: &WaveVector, spec: &WalkSpec, steps: usize) -> Result<TransverseEvolution> {
    let frame = polarization_frame(kappa, spec)?;
    let h = half(kappa, spec)?;
    let w = symbol_matrix(&h, spec)?;
    let wc = w.map(|z| z.conj());
    let nsig = crate::linalg::sigma_dot(&frame.n_hat);
    let eig = (nsig.clone() + crate::linalg::identity(2)).column(0).into_owned();
    let eig = if eig.norm() < 1e-8 {
        (nsig + crate::linalg::identity(2)).column(1).into_owned()
    } else {
        eig
    };
    let psi0 = &eig / c(eig.norm(), 0.0);
    let phi0 = DVector::from_vec(vec![psi0[1], -psi0[0]]);
    let sig = [pauli(0), pauli(1), pauli(2)];
    let (mut psi, mut phi) = (psi0, phi0);
    let mut fields = Vec::with_capacity(steps + 1);
    for t in 0..=steps {
        if t > 0 {
            psi = &w * psi;
            phi = &wc * phi;
        }
        let g: [Complex64; 3] = std::array::from_fn(|i| (phi.transpose() * &sig[i] * &psi)[(0, 0)]);
        fields.push(g);
    }
    let project = |g: &[Complex64; 3], u: &Vec3| g[0] * u[0] + g[1] * u[1] + g[2] * u[2];
    let longitudinal = fields.iter().map(|g| project(g, &frame.n_hat).norm()).fold(0.0, f64::max);
    let angle_per_step = if steps == 0 {
        0.0
    } else {
        let circ = |g: &[Complex64; 3], s: f64| project(g, &frame.u1) - Complex64::i() * s * project(g, &frame.u2);
        let (p0, m0) = (circ(&fields[0], 1.0), circ(&fields[0], -1.0));
        if p0.norm() >= m0.norm() {
            (circ(&fields[1], 1.0) / p0).arg()
        } else {
            -(circ(&fields[1], -1.0) / m0).arg()
        }
    };
    Ok(TransverseEvolution { n_hat: frame.n_hat, fields, angle_per_step, longitudinal })
}
