use super::{FieldState, Fourier};
use crate::error::Result;
use crate::lattice::{unravel, WaveVector};
use crate::linalg::Vec3;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Observables {
    /// Cartesian mean and variance of position per axis.
    pub position_mean: Vec3,
    pub position_var: Vec3,
    /// Mean of the zone-wrapped Cartesian momentum.
    pub momentum_mean: Vec3,
    #[serde(skip)]
    pub marginal: Vec<f64>,
}

/// Momentum probability per grid fiber, summing to the squared norm.
pub fn momentum_distribution(state: &FieldState) -> Vec<f64> {
    let hat = Fourier::new(state.n(), state.dim()).forward(state.amplitudes(), state.components());
    let scale = 1.0 / state.sites() as f64;
    hat.chunks(state.components())
        .map(|f| f.iter().map(|z| z.norm_sqr()).sum::<f64>() * scale)
        .collect()
}

pub fn observables(state: &FieldState) -> Result<Observables> {
    let (n, d) = (state.n(), state.dim());
    let lattice = state.lattice();
    let marginal = state.marginal();
    let total: f64 = marginal.iter().sum();
    let mut m1 = [0.0; 3];
    let mut m2 = [0.0; 3];
    for (idx, p) in marginal.iter().enumerate() {
        let a = unravel(idx, n, d);
        let af: Vec<f64> = a[..d].iter().map(|&x| x as f64).collect();
        let x = lattice.to_cartesian_f(&af);
        for i in 0..3 {
            m1[i] += p * x[i];
            m2[i] += p * x[i] * x[i];
        }
    }
    let mut mean = [0.0; 3];
    let mut var = [0.0; 3];
    for i in 0..3 {
        mean[i] = m1[i] / total;
        var[i] = m2[i] / total - mean[i] * mean[i];
    }
    let pk = momentum_distribution(state);
    let mut km = [0.0; 3];
    for (idx, p) in pk.iter().enumerate() {
        let k: WaveVector = lattice.bz_wrap(&lattice.grid_point(&unravel(idx, n, d)[..d], n))?;
        for (i, kv) in k.padded().iter().enumerate() {
            km[i] += p * kv / total;
        }
    }
    Ok(Observables { position_mean: mean, position_var: var, momentum_mean: km, marginal })
}
