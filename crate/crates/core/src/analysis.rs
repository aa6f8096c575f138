//! Drift and diffusion of the dispersion relation, the dispersive
//! Schrödinger and continuum reference evolutions, and state comparison.

use crate::engine::{
    momentum_distribution, observables, positive_projector, step_momentum, symbol_power, FieldState,
};
use crate::error::{Error, Result};
use crate::lattice::{unravel, WaveVector};
use crate::linalg::{c, dot, exp_involutive, CMat, Vec3};
use crate::walks::{continuum_hamiltonian, omega, omega_derivatives, symbol_matrix, WalkSpec};
use num_complex::Complex64;
use serde::Serialize;

/// Step of the central finite differences used as the derivative oracle.
pub const FD_STEP: f64 = 1e-5;

/// ∇ω(k), analytic.
pub fn group_velocity(k: &WaveVector, spec: &WalkSpec) -> Result<Vec3> {
    Ok(omega_derivatives(k, spec)?.grad)
}

/// Hessian of ω(k), analytic.
pub fn diffusion_tensor(k: &WaveVector, spec: &WalkSpec) -> Result<[[f64; 3]; 3]> {
    Ok(omega_derivatives(k, spec)?.hess)
}

fn shifted(k: &WaveVector, axis: usize, h: f64) -> WaveVector {
    let mut v = k.padded();
    v[axis] += h;
    WaveVector::from_padded(k.dim(), v)
}

/// ∇ω by central differences.
pub fn group_velocity_fd(k: &WaveVector, spec: &WalkSpec, h: f64) -> Result<Vec3> {
    let mut g = [0.0; 3];
    for (a, ga) in g.iter_mut().enumerate().take(k.dim()) {
        *ga = (omega(&shifted(k, a, h), spec)? - omega(&shifted(k, a, -h), spec)?) / (2.0 * h);
    }
    Ok(g)
}

/// Hessian of ω by central differences.
pub fn diffusion_tensor_fd(k: &WaveVector, spec: &WalkSpec, h: f64) -> Result<[[f64; 3]; 3]> {
    let d = k.dim();
    let mut out = [[0.0; 3]; 3];
    let w0 = omega(k, spec)?;
    for a in 0..d {
        for b in 0..d {
            out[a][b] = if a == b {
                (omega(&shifted(k, a, h), spec)? - 2.0 * w0 + omega(&shifted(k, a, -h), spec)?) / (h * h)
            } else {
                let pp = omega(&shifted(&shifted(k, a, h), b, h), spec)?;
                let pm = omega(&shifted(&shifted(k, a, h), b, -h), spec)?;
                let mp = omega(&shifted(&shifted(k, a, -h), b, h), spec)?;
                let mm = omega(&shifted(&shifted(k, a, -h), b, -h), spec)?;
                (pp - pm - mp + mm) / (4.0 * h * h)
            };
        }
    }
    Ok(out)
}

/// Second-order expansion of one band around k₀.
#[derive(Debug, Clone, Serialize)]
pub struct PacketModel {
    pub k0: WaveVector,
    /// +1 for the e^{−iω} band, −1 for e^{+iω}.
    pub branch_sign: f64,
    pub omega0: f64,
    pub v: Vec3,
    pub d: [[f64; 3]; 3],
}

impl PacketModel {
    pub fn from_walk(k0: &WaveVector, spec: &WalkSpec, branch_sign: f64) -> Result<Self> {
        let der = omega_derivatives(k0, spec)?;
        Ok(Self { k0: *k0, branch_sign, omega0: der.omega, v: der.grad, d: der.hess })
    }

    /// ω₀ + v·q + ½ qᵀDq.
    pub fn phase(&self, q: &Vec3) -> f64 {
        let mut quad = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                quad += q[a] * self.d[a][b] * q[b];
            }
        }
        self.omega0 + dot(&self.v, q) + 0.5 * quad
    }
}

/// Output of the Schrödinger reference with its bandwidth diagnostic.
#[derive(Debug, Clone)]
pub struct SchrodingerOutput {
    pub state: FieldState,
    /// Momentum probability within `BAND_WINDOW` of k₀.
    pub in_band: f64,
    pub warning: Option<String>,
}

pub const BAND_WINDOW: f64 = 0.5;
pub const BAND_FRACTION: f64 = 0.99;

/// Momentum probability within `window` of k₀ (zone-wrapped distance).
pub fn band_fraction(state: &FieldState, k0: &WaveVector, window: f64) -> Result<f64> {
    let (n, d) = (state.n(), state.dim());
    let lat = state.lattice();
    let pk = momentum_distribution(state);
    let mut acc = 0.0;
    for (idx, p) in pk.iter().enumerate() {
        let k = lat.grid_point(&unravel(idx, n, d)[..d], n);
        if lat.bz_wrap(&k.sub(k0))?.norm() <= window {
            acc += p;
        }
    }
    Ok(acc / state.norm_sqr())
}

/// Exact Fourier-space integration of the second-order model:
/// each fiber q acquires exp(−i·sign·n[ω₀ + v·(q−k₀) + ½(q−k₀)ᵀD(q−k₀)]).
pub fn schrodinger_evolve(initial: &FieldState, model: &PacketModel, n_steps: u64) -> Result<SchrodingerOutput> {
    let lat = initial.lattice();
    let s = initial.components();
    let nf = n_steps as f64;
    let state = initial.map_fibers(n_steps, |k| {
        let q = lat.bz_wrap(&k.sub(&model.k0))?.padded();
        let ph = Complex64::from_polar(1.0, -model.branch_sign * nf * model.phase(&q));
        Ok(CMat::identity(s, s) * ph)
    })?;
    let in_band = band_fraction(initial, &model.k0, BAND_WINDOW)?;
    let warning = (in_band < BAND_FRACTION).then(|| {
        format!("only {in_band:.4} of the momentum mass lies within {BAND_WINDOW} of k0")
    });
    Ok(SchrodingerOutput { state, in_band, warning })
}

/// Each fiber evolved by exp(−i n H₀(k)) with k wrapped into the zone.
pub fn continuum_reference(initial: &FieldState, spec: &WalkSpec, n_steps: u64) -> Result<FieldState> {
    let lat = initial.lattice();
    initial.map_fibers(n_steps, |k| {
        let (h, e) = continuum_hamiltonian(&lat.bz_wrap(k)?, spec)?;
        Ok(exp_involutive(&h, e, n_steps as f64))
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Comparison {
    pub fidelity: f64,
    pub l2: f64,
    pub l1: f64,
}

/// |⟨a|b⟩|, ‖a − b‖ and Σ|p_a − p_b| over site marginals.
pub fn compare(a: &FieldState, b: &FieldState) -> Result<Comparison> {
    if !a.same_shape(b) {
        return Err(Error::ShapeMismatch("states differ in shape".into()));
    }
    let fidelity = crate::engine::inner(a, b)?.norm().min(1.0);
    let l2 = a
        .amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let l1 = a.marginal().iter().zip(b.marginal()).map(|(p, q)| (p - q).abs()).sum();
    Ok(Comparison { fidelity, l2, l1 })
}

/// Reference dynamics used alongside a walk trajectory.
#[derive(Debug, Clone)]
pub enum Reference {
    None,
    Schrodinger(PacketModel),
    Continuum,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrajectoryRow {
    pub step: u64,
    pub mean: Vec3,
    pub var: Vec3,
    pub fidelity: Option<f64>,
    pub l1: Option<f64>,
}

/// Observables at steps 0, stride, 2·stride, … ≤ `steps`, each evolved
/// directly from the initial state.
pub fn trajectory(
    initial: &FieldState,
    spec: &WalkSpec,
    steps: u64,
    stride: u64,
    reference: &Reference,
) -> Result<Vec<TrajectoryRow>> {
    let stride = stride.max(1);
    let mut rows = Vec::new();
    let mut t = 0;
    loop {
        let walk = step_momentum(initial, spec, t)?;
        let ob = observables(&walk)?;
        let cmp = match reference {
            Reference::None => None,
            Reference::Schrodinger(m) => Some(compare(&walk, &schrodinger_evolve(initial, m, t)?.state)?),
            Reference::Continuum => Some(compare(&walk, &continuum_reference(initial, spec, t)?)?),
        };
        rows.push(TrajectoryRow {
            step: t,
            mean: ob.position_mean,
            var: ob.position_var,
            fidelity: cmp.map(|c| c.fidelity),
            l1: cmp.map(|c| c.l1),
        });
        if t >= steps {
            break;
        }
        t = (t + stride).min(steps);
    }
    Ok(rows)
}

fn leading_eigvec(p: &CMat) -> nalgebra::DVector<Complex64> {
    let mut best = 0;
    let mut bn = -1.0;
    for j in 0..p.ncols() {
        let n = p.column(j).norm();
        if n > bn {
            bn = n;
            best = j;
        }
    }
    let v = p.column(best).into_owned();
    let nrm = v.norm();
    v / c(nrm, 0.0)
}

/// Per-step eigenphase mismatch between the walk fiber propagator and the
/// continuum propagator, measured on each one's positive-frequency mode
/// after `n_steps` steps.
pub fn phase_error_per_step(k: &WaveVector, spec: &WalkSpec, n_steps: u64) -> Result<f64> {
    let u = symbol_matrix(k, spec)?;
    let w = omega(k, spec)?;
    let pw = positive_projector(k, spec)?.ok_or(Error::SingularPoint(0.0))?;
    let chi = leading_eigvec(&pw);
    let walk = chi.adjoint() * symbol_power(&u, w, n_steps) * &chi;

    let (h, e) = continuum_hamiltonian(k, spec)?;
    if e == 0.0 {
        return Err(Error::SingularPoint(0.0));
    }
    let s = h.nrows();
    let pc = (CMat::identity(s, s) * c(e, 0.0) + &h) * c(0.5 / e, 0.0);
    let chic = leading_eigvec(&pc);
    let cont = chic.adjoint() * exp_involutive(&h, e, n_steps as f64) * &chic;
    let diff = walk[(0, 0)] * cont[(0, 0)].conj();
    Ok(diff.arg().abs() / n_steps as f64)
}

/// Ordinary least squares y ≈ slope·x + intercept.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Least-squares slope of log y against log x.
pub fn fit_exponent(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    linear_fit(&lx, &ly).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{make_packet, PacketParams};
    use crate::walks::{Branch, Chirality};
    use std::f64::consts::PI;

    fn dirac1d(m: f64) -> WalkSpec {
        WalkSpec::dirac(1, Chirality::Plus, Branch::A, m).unwrap()
    }

    #[test]
    fn caption_drift_values() {
        let v = group_velocity(&WaveVector::d1(3.0 * PI / 10.0), &dirac1d(0.6)).unwrap()[0];
        assert!((v - 0.73).abs() < 0.01, "{v}");
        let v = group_velocity(&WaveVector::d1(0.1), &dirac1d(0.4)).unwrap()[0];
        assert!((v - 0.22).abs() < 0.01, "{v}");
    }

    #[test]
    fn diffusion_closed_form() {
        let (m, k): (f64, f64) = (0.4, 0.1);
        let n = (1.0 - m * m).sqrt();
        let cc = k.cos();
        let expect = n * cc * (1.0 - n * n) * (1.0 - n * n * cc * cc).powf(-1.5);
        let d = diffusion_tensor(&WaveVector::d1(k), &dirac1d(m)).unwrap()[0][0];
        assert!((d - expect).abs() < 1e-12);
    }

    #[test]
    fn rest_velocity_vanishes() {
        let v = group_velocity(&WaveVector::d1(0.0), &dirac1d(0.5)).unwrap();
        assert!(v[0].abs() < 1e-15);
        assert!(group_velocity(&WaveVector::zero(3), &WalkSpec::weyl_plus(3)).is_err());
    }

    #[test]
    fn finite_differences_agree() {
        let spec = WalkSpec::dirac(3, Chirality::Minus, Branch::B, 0.3).unwrap();
        let k = WaveVector::d3(0.4, -0.9, 1.3);
        let g = group_velocity(&k, &spec).unwrap();
        let gf = group_velocity_fd(&k, &spec, FD_STEP).unwrap();
        let h = diffusion_tensor(&k, &spec).unwrap();
        let hf = diffusion_tensor_fd(&k, &spec, 1e-4).unwrap();
        for a in 0..3 {
            assert!((g[a] - gf[a]).abs() < 1e-9);
            for b in 0..3 {
                assert!((h[a][b] - hf[a][b]).abs() < 1e-6);
                assert_eq!(h[a][b], h[b][a]);
            }
        }
    }

    #[test]
    fn compare_identity_and_orthogonal() {
        let spec = dirac1d(0.4);
        let a = make_packet(
            &PacketParams::gaussian(WaveVector::d1(0.1), 10.0, vec![128.0], vec![c(1.0, 0.0), c(0.0, 0.0)]),
            256,
            &spec,
        )
        .unwrap();
        let r = compare(&a, &a).unwrap();
        assert!((r.fidelity - 1.0).abs() < 1e-12 && r.l2 < 1e-15 && r.l1 < 1e-15);
        let b = make_packet(
            &PacketParams::gaussian(WaveVector::d1(0.1), 10.0, vec![128.0], vec![c(0.0, 0.0), c(1.0, 0.0)]),
            256,
            &spec,
        )
        .unwrap();
        assert!(compare(&a, &b).unwrap().fidelity < 1e-15);
    }

    #[test]
    fn schrodinger_center_phase() {
        let spec = dirac1d(0.4);
        let k0 = WaveVector::d1(2.0 * PI * 4.0 / 256.0);
        let model = PacketModel::from_walk(&k0, &spec, 1.0).unwrap();
        let st = FieldState::plane_wave(spec.lattice(), 256, &[4], &[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let out = schrodinger_evolve(&st, &model, 7).unwrap().state;
        let ratio = out.amplitudes()[0] / st.amplitudes()[0];
        assert!((ratio - Complex64::from_polar(1.0, -7.0 * model.omega0)).norm() < 1e-12);
    }

    #[test]
    fn massive_rest_phase_error() {
        let m: f64 = 0.1;
        let e = phase_error_per_step(&WaveVector::d1(0.0), &dirac1d(m), 1).unwrap();
        assert!((e - (m.asin() - m)).abs() < 1e-12);
        assert!((e - m.powi(3) / 6.0).abs() < 1e-5);
    }
}
