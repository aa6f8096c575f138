//! Evolution of spinor fields on periodic lattices.
//!
//! Conventions: ψ̂(k) = Σ_g e^{−ik·g} ψ(g), one step is ψ̂ ↦ A_k ψ̂, and in
//! position space ψ'(g) = Σ_h A_h ψ(g − h). A single-term kernel {h: I}
//! therefore translates the field by +h, and a plane wave e^{ik₀·x} moves
//! with velocity +∇ω(k₀).

mod fft;
mod observe;
mod packet;

pub use fft::Fourier;
pub use observe::{momentum_distribution, observables, Observables};
pub use packet::{make_packet, positive_projector, HermiteTerm, PacketParams, Projection};

use crate::error::{Error, Result};
use crate::lattice::{unravel, Lattice};
use crate::linalg::{c, identity, mat_pow, CMat};
use crate::walks::{omega, symbol_matrix, TransitionKernel, WalkSpec};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// s-component amplitudes on Z_N^d, site-major with axis 0 slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    lattice: Lattice,
    n: usize,
    s: usize,
    amps: Vec<Complex64>,
    /// Steps taken, in units of t_*.
    pub t: u64,
}

impl FieldState {
    pub fn new(lattice: Lattice, n: usize, s: usize, amps: Vec<Complex64>) -> Result<Self> {
        let expected = n.pow(lattice.dim() as u32) * s;
        if amps.len() != expected {
            return Err(Error::ShapeMismatch(format!(
                "{} amplitudes, expected {expected}",
                amps.len()
            )));
        }
        if n < 2 || s == 0 {
            return Err(Error::InvalidArgument("lattice needs N >= 2 and s >= 1".into()));
        }
        Ok(Self { lattice, n, s, amps, t: 0 })
    }

    /// Rescales to unit norm.
    pub fn normalized(mut self) -> Result<Self> {
        let nrm = self.norm();
        if nrm == 0.0 || !nrm.is_finite() {
            return Err(Error::InvalidArgument("state has zero norm".into()));
        }
        self.amps.iter_mut().for_each(|z| *z /= nrm);
        Ok(self)
    }

    /// Amplitude `spinor` on a single site.
    pub fn single_site(lattice: Lattice, n: usize, site: &[usize], spinor: &[Complex64]) -> Result<Self> {
        let s = spinor.len();
        let mut amps = vec![Complex64::new(0.0, 0.0); n.pow(lattice.dim() as u32) * s];
        let idx = ravel(site, n);
        amps[idx * s..(idx + 1) * s].copy_from_slice(spinor);
        FieldState::new(lattice, n, s, amps)?.normalized()
    }

    /// Plane wave at grid momentum index `m` with spinor `spinor`.
    pub fn plane_wave(lattice: Lattice, n: usize, m: &[usize], spinor: &[Complex64]) -> Result<Self> {
        let d = lattice.dim();
        let s = spinor.len();
        let sites = n.pow(d as u32);
        let mut amps = Vec::with_capacity(sites * s);
        for idx in 0..sites {
            let a = unravel(idx, n, d);
            let ph: f64 = (0..d).map(|i| (m[i] * a[i]) as f64).sum::<f64>() * 2.0 * std::f64::consts::PI
                / n as f64;
            let e = Complex64::from_polar(1.0, ph);
            amps.extend(spinor.iter().map(|z| z * e));
        }
        FieldState::new(lattice, n, s, amps)?.normalized()
    }

    /// Gaussian-random normalized state from a seed.
    pub fn random(lattice: Lattice, n: usize, s: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = n.pow(lattice.dim() as u32) * s;
        let amps = (0..len).map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)).collect();
        FieldState::new(lattice, n, s, amps)?.normalized()
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }
    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn components(&self) -> usize {
        self.s
    }
    pub fn sites(&self) -> usize {
        self.n.pow(self.dim() as u32)
    }
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Σ|ψ|² summed sequentially, so the value does not depend on threads.
    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Probability per site, summed over components.
    pub fn marginal(&self) -> Vec<f64> {
        self.amps.chunks(self.s).map(|ch| ch.iter().map(|z| z.norm_sqr()).sum()).collect()
    }

    pub fn same_shape(&self, o: &FieldState) -> bool {
        self.lattice == o.lattice && self.n == o.n && self.s == o.s
    }

    fn with_amps(&self, amps: Vec<Complex64>, dt: u64) -> FieldState {
        FieldState { lattice: self.lattice, n: self.n, s: self.s, amps, t: self.t + dt }
    }

    fn check_spec(&self, spec: &WalkSpec) -> Result<()> {
        if self.lattice != spec.lattice() {
            return Err(Error::ShapeMismatch(format!(
                "state on {:?}, walk on {:?}",
                self.lattice,
                spec.lattice()
            )));
        }
        if self.s != spec.components() {
            return Err(Error::DimensionMismatch { expected: spec.components(), got: self.s });
        }
        Ok(())
    }

    /// Applies a per-fiber matrix in momentum space.
    pub fn map_fibers<F>(&self, dt: u64, f: F) -> Result<FieldState>
    where
        F: Fn(&crate::lattice::WaveVector) -> Result<CMat> + Sync,
    {
        let (n, d, s) = (self.n, self.dim(), self.s);
        let fourier = Fourier::new(n, d);
        let mut hat = fourier.forward(&self.amps, s);
        let lattice = self.lattice;
        hat.par_chunks_mut(s).enumerate().try_for_each(|(idx, fiber)| -> Result<()> {
            let k = lattice.grid_point(&unravel(idx, n, d)[..d], n);
            let m = f(&k)?;
            let v = nalgebra::DVector::from_column_slice(fiber);
            fiber.copy_from_slice((m * v).as_slice());
            Ok(())
        })?;
        Ok(self.with_amps(fourier.inverse(&hat, s), dt))
    }
}

/// Row-major flat index of a site.
pub fn ravel(site: &[usize], n: usize) -> usize {
    site.iter().fold(0, |acc, &a| acc * n + a)
}

/// U^n through its two spectral projectors: U + U† = 2cos ω I gives
/// U^n = (sin nω / sin ω) U − (sin (n−1)ω / sin ω) I.
pub fn symbol_power(u: &CMat, w: f64, n: u64) -> CMat {
    let s = w.sin();
    if s.abs() < 1e-12 {
        return mat_pow(u, n);
    }
    let nf = n as f64;
    let a = (nf * w).sin() / s;
    let b = ((nf - 1.0) * w).sin() / s;
    u * c(a, 0.0) - identity(u.nrows()) * c(b, 0.0)
}

/// n steps in momentum space.
pub fn step_momentum(state: &FieldState, spec: &WalkSpec, n_steps: u64) -> Result<FieldState> {
    state.check_spec(spec)?;
    if n_steps == 0 {
        return Ok(state.clone());
    }
    state.map_fibers(n_steps, |k| {
        let u = symbol_matrix(k, spec)?;
        Ok(symbol_power(&u, omega(k, spec)?, n_steps))
    })
}

/// n steps in momentum space for an arbitrary kernel (repeated squaring).
pub fn step_momentum_kernel(state: &FieldState, kernel: &TransitionKernel, n_steps: u64) -> Result<FieldState> {
    if state.lattice != kernel.lattice || state.s != kernel.components {
        return Err(Error::ShapeMismatch("kernel does not match state".into()));
    }
    state.map_fibers(n_steps, |k| Ok(mat_pow(&kernel.symbol(k)?, n_steps)))
}

/// One step of ψ'(g) = Σ_h A_h ψ(g − h) with periodic wraparound.
pub fn step_position(state: &FieldState, kernel: &TransitionKernel) -> Result<FieldState> {
    if state.lattice != kernel.lattice || state.s != kernel.components {
        return Err(Error::ShapeMismatch("kernel does not match state".into()));
    }
    let r = kernel.radius();
    if (state.n as i64) <= 2 * r {
        return Err(Error::SupportExceedsLattice { displacement: r, needed: 2 * r });
    }
    let (n, d, s) = (state.n, state.dim(), state.s);
    let ni = n as i64;
    let mut out = vec![Complex64::new(0.0, 0.0); state.amps.len()];
    out.par_chunks_mut(s).enumerate().for_each(|(idx, target)| {
        let g = unravel(idx, n, d);
        for e in &kernel.entries {
            let mut src = 0usize;
            for (axis, &ga) in g.iter().enumerate().take(d) {
                let a = (ga as i64 - e.displacement[axis]).rem_euclid(ni) as usize;
                src = src * n + a;
            }
            let psi = &state.amps[src * s..(src + 1) * s];
            for (i, t) in target.iter_mut().enumerate() {
                for (j, p) in psi.iter().enumerate() {
                    *t += e.matrix[(i, j)] * p;
                }
            }
        }
    });
    Ok(state.with_amps(out, 1))
}

/// ⟨a|b⟩.
pub fn inner(a: &FieldState, b: &FieldState) -> Result<Complex64> {
    if !a.same_shape(b) {
        return Err(Error::ShapeMismatch("states differ in shape".into()));
    }
    Ok(a.amps.iter().zip(&b.amps).map(|(x, y)| x.conj() * y).sum())
}

/// max_i |a_i − b_i|.
pub fn max_deviation(a: &FieldState, b: &FieldState) -> Result<f64> {
    if !a.same_shape(b) {
        return Err(Error::ShapeMismatch("states differ in shape".into()));
    }
    Ok(a.amps.iter().zip(&b.amps).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ONE;
    use crate::walks::{position_kernel, KernelEntry};

    #[test]
    fn zero_steps_is_identity() {
        let spec = WalkSpec::weyl_plus(3);
        let st = FieldState::random(Lattice::Bcc, 4, 2, 1).unwrap();
        assert_eq!(step_momentum(&st, &spec, 0).unwrap(), st);
    }

    #[test]
    fn translation_by_plus_h() {
        let k = TransitionKernel::new(
            Lattice::Line,
            1,
            vec![KernelEntry { displacement: [2, 0, 0], matrix: identity(1) }],
        )
        .unwrap();
        let st = FieldState::single_site(Lattice::Line, 8, &[3], &[ONE]).unwrap();
        let out = step_position(&st, &k).unwrap();
        assert!((out.amplitudes()[5] - ONE).norm() < 1e-15);
        let viam = step_momentum_kernel(&st, &k, 1).unwrap();
        assert!(max_deviation(&out, &viam).unwrap() < 1e-14);
    }

    #[test]
    fn position_matches_momentum() {
        let spec = WalkSpec::weyl_plus(3);
        let kern = position_kernel(&spec);
        let st = FieldState::random(Lattice::Bcc, 6, 2, 9).unwrap();
        let p = step_position(&step_position(&st, &kern).unwrap(), &kern).unwrap();
        let m = step_momentum(&st, &spec, 2).unwrap();
        assert!(max_deviation(&p, &m).unwrap() < 1e-12);
        assert_eq!(p.t, 2);
    }

    #[test]
    fn small_lattice_rejected() {
        let kern = position_kernel(&WalkSpec::weyl_plus(1));
        let st = FieldState::random(Lattice::Line, 2, 2, 0).unwrap();
        assert!(step_position(&st, &kern).is_err());
    }
}
