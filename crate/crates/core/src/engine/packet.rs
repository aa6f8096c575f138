use super::FieldState;
use crate::error::{Error, Result};
use crate::lattice::{unravel, WaveVector};
use crate::linalg::{c, dot, identity, CMat};
use crate::walks::{omega, symbol_matrix, WalkSpec};
use num_complex::Complex64;

/// Spinor treatment at preparation time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Projection {
    #[default]
    None,
    /// Replace the spinor by its projection on the e^{−iω} eigenspace at k₀.
    Center,
    /// Project every momentum fiber on its own e^{−iω} eigenspace, rescaled
    /// so that the momentum distribution of the envelope is unchanged.
    PerFiber,
}

/// One term c·Π_i H_{n_i}(x_i / (√2 σ̂)) of the Hermite envelope.
#[derive(Debug, Clone, Copy)]
pub struct HermiteTerm {
    pub orders: [u32; 3],
    pub coef: Complex64,
}

#[derive(Debug, Clone)]
pub struct PacketParams {
    pub k0: WaveVector,
    /// Position spread σ̂ of |ψ|², in sites.
    pub sigma: f64,
    /// Center in lattice coordinates.
    pub x0: Vec<f64>,
    pub spinor: Vec<Complex64>,
    pub hermite: Vec<HermiteTerm>,
    pub projection: Projection,
}

impl PacketParams {
    pub fn gaussian(k0: WaveVector, sigma: f64, x0: Vec<f64>, spinor: Vec<Complex64>) -> Self {
        Self {
            k0,
            sigma,
            x0,
            spinor,
            hermite: vec![HermiteTerm { orders: [0; 3], coef: c(1.0, 0.0) }],
            projection: Projection::None,
        }
    }
}

/// Physicists' Hermite polynomial H_n(x).
pub fn hermite(n: u32, x: f64) -> f64 {
    let (mut h0, mut h1) = (1.0, 2.0 * x);
    if n == 0 {
        return h0;
    }
    for k in 1..n {
        let h2 = 2.0 * x * h1 - 2.0 * k as f64 * h0;
        h0 = h1;
        h1 = h2;
    }
    h1
}

/// P₊ = (U − e^{iω}I)/(e^{−iω} − e^{iω}), the projector on the e^{−iω}
/// eigenspace; None where the two eigenvalues coincide.
pub fn positive_projector(k: &WaveVector, spec: &WalkSpec) -> Result<Option<CMat>> {
    let u = symbol_matrix(k, spec)?;
    let w = omega(k, spec)?;
    if w.sin().abs() < 1e-12 {
        return Ok(None);
    }
    let ep = Complex64::from_polar(1.0, w);
    let p = (u - identity(spec.components()) * ep) / (ep.conj() - ep);
    Ok(Some(p))
}

/// Gaussian (times Hermite) packet ψ(x) ∝ χ Σ c H(Δx) e^{−|Δx|²/(4σ̂²)} e^{ik₀·Δx}.
pub fn make_packet(p: &PacketParams, n: usize, spec: &WalkSpec) -> Result<FieldState> {
    let lattice = spec.lattice();
    let d = lattice.dim();
    let s = spec.components();
    if p.sigma < 2.0 || !p.sigma.is_finite() {
        return Err(Error::InvalidArgument(format!("sigma {} below 2 sites", p.sigma)));
    }
    if p.sigma > n as f64 / 8.0 {
        return Err(Error::InvalidArgument(format!("packet wider than lattice: sigma {} > N/8", p.sigma)));
    }
    if p.spinor.len() != s {
        return Err(Error::DimensionMismatch { expected: s, got: p.spinor.len() });
    }
    if p.x0.len() != d {
        return Err(Error::DimensionMismatch { expected: d, got: p.x0.len() });
    }
    if p.k0.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: p.k0.dim() });
    }
    let mut spinor = nalgebra::DVector::from_column_slice(&p.spinor);
    if p.projection == Projection::Center {
        if let Some(pp) = positive_projector(&p.k0, spec)? {
            spinor = pp * spinor;
        }
    }
    let sn = spinor.norm();
    if sn == 0.0 {
        return Err(Error::InvalidArgument("spinor has zero norm".into()));
    }
    spinor /= c(sn, 0.0);
    let k0 = p.k0.padded();
    let sites = n.pow(d as u32);
    let nf = n as f64;
    let mut amps = Vec::with_capacity(sites * s);
    for idx in 0..sites {
        let a = unravel(idx, n, d);
        let mut rel = [0.0; 3];
        for i in 0..d {
            let delta = a[i] as f64 - p.x0[i];
            rel[i] = delta - nf * (delta / nf).round();
        }
        let dx = lattice.to_cartesian_f(&rel[..d]);
        let r2 = dot(&dx, &dx);
        let env = (-r2 / (4.0 * p.sigma * p.sigma)).exp();
        let xi = 1.0 / (2f64.sqrt() * p.sigma);
        let poly: Complex64 = p
            .hermite
            .iter()
            .map(|t| t.coef * (0..3).map(|i| hermite(t.orders[i], dx[i] * xi)).product::<f64>())
            .sum();
        let amp = poly * env * Complex64::from_polar(1.0, dot(&k0, &dx));
        amps.extend(spinor.iter().map(|z| z * amp));
    }
    let mut st = FieldState::new(lattice, n, s, amps)?.normalized()?;
    if p.projection == Projection::PerFiber {
        // The spinor factors out of every fiber, so |P(k)χ| fixes the rescaling.
        st = st.map_fibers(0, |k| {
            let Some(pp) = positive_projector(k, spec)? else { return Ok(identity(s)) };
            let w = (&pp * &spinor).norm();
            Ok(if w > 1e-12 { pp / c(w, 0.0) } else { pp })
        })?;
        st = st.normalized()?;
    }
    Ok(st)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::observables;
    use crate::walks::{Branch, Chirality};

    fn dirac1d() -> WalkSpec {
        WalkSpec::dirac(1, Chirality::Plus, Branch::A, 0.4).unwrap()
    }

    #[test]
    fn hermite_values() {
        assert_eq!(hermite(0, 0.3), 1.0);
        assert_eq!(hermite(2, 1.5), 4.0 * 2.25 - 2.0);
        assert_eq!(hermite(3, 1.0), 8.0 - 12.0);
    }

    #[test]
    fn gaussian_moments() {
        let spec = dirac1d();
        let p = PacketParams::gaussian(WaveVector::d1(0.1), 20.0, vec![512.0], vec![c(1.0, 0.0), c(0.0, 0.0)]);
        let st = make_packet(&p, 1024, &spec).unwrap();
        assert!((st.norm() - 1.0).abs() < 1e-12);
        let ob = observables(&st).unwrap();
        assert!((ob.position_mean[0] - 512.0).abs() < 0.1);
        assert!((ob.position_var[0].sqrt() - 20.0).abs() < 1.0);
        assert!((ob.momentum_mean[0] - 0.1).abs() < 2.0 * std::f64::consts::PI / 1024.0);
    }

    #[test]
    fn projection_selects_positive_band() {
        let spec = dirac1d();
        let mut p = PacketParams::gaussian(WaveVector::d1(0.1), 20.0, vec![512.0], vec![c(1.0, 0.0), c(1.0, 0.0)]);
        p.projection = Projection::PerFiber;
        let st = make_packet(&p, 1024, &spec).unwrap();
        let again = st
            .map_fibers(0, |k| Ok(positive_projector(k, &spec)?.unwrap_or_else(|| identity(2))))
            .unwrap();
        assert!(crate::engine::max_deviation(&st, &again).unwrap() < 1e-12);
    }

    #[test]
    fn rejects_wide_or_narrow_packets() {
        let spec = dirac1d();
        let sp = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let wide = PacketParams::gaussian(WaveVector::d1(0.0), 200.0, vec![0.0], sp.clone());
        assert!(make_packet(&wide, 1024, &spec).is_err());
        let narrow = PacketParams::gaussian(WaveVector::d1(0.0), 1.0, vec![0.0], sp);
        assert!(make_packet(&narrow, 1024, &spec).is_err());
    }
}
