use super::trig::{self, content};
use super::{Branch, Chirality, Family, WalkSpec};
use crate::error::{Error, Result};
use crate::lattice::WaveVector;
use crate::linalg::{block2, c, identity, norm3, sigma_dot, CMat, Vec3, I};
use serde::Serialize;

/// Symbol at one wave-vector together with its Weyl content.
#[derive(Debug, Clone, Serialize)]
pub struct WalkSymbol {
    pub k: WaveVector,
    #[serde(skip)]
    pub matrix: CMat,
    pub u: f64,
    /// ñ as written in the component formulas (chirality-dependent).
    pub n_tilde: Vec3,
}

fn check(k: &WaveVector, spec: &WalkSpec, family: Family) -> Result<()> {
    if spec.family != family {
        return Err(Error::FamilyMismatch {
            expected: match family {
                Family::Weyl => "Weyl",
                Family::Dirac => "Dirac",
            },
        });
    }
    if k.dim() != spec.dim {
        return Err(Error::DimensionMismatch { expected: spec.dim, got: k.dim() });
    }
    Ok(())
}

/// u and ñ straight from the component formulas.
///
/// d = 3: c_i = cos(k_i/√3), s_i = sin(k_i/√3) and
///   u± = c_x c_y c_z ± s_x s_y s_z,
///   ñ± = (s_x c_y c_z ∓ c_x s_y s_z, c_x s_y c_z ± s_x c_y s_z, c_x c_y s_z ∓ s_x s_y c_z).
/// d = 2: u = c_x c_y, ñ = (s_x c_y, c_x s_y, ± s_x s_y) with θ = k/√2.
/// d = 1: u = cos k, ñ = (± sin k, 0, 0). In the σ_x eigenbasis this is
/// diag(e^{∓ik}, e^{±ik}).
pub fn weyl_content(k: &WaveVector, chirality: Chirality) -> (f64, Vec3) {
    let p = chirality.sign();
    let v = k.padded();
    match k.dim() {
        1 => (v[0].cos(), [p * v[0].sin(), 0.0, 0.0]),
        2 => {
            let s = 1.0 / 2f64.sqrt();
            let (sx, cx) = (v[0] * s).sin_cos();
            let (sy, cy) = (v[1] * s).sin_cos();
            (cx * cy, [sx * cy, cx * sy, p * sx * sy])
        }
        _ => {
            let s = 1.0 / 3f64.sqrt();
            let (sx, cx) = (v[0] * s).sin_cos();
            let (sy, cy) = (v[1] * s).sin_cos();
            let (sz, cz) = (v[2] * s).sin_cos();
            (
                cx * cy * cz + p * sx * sy * sz,
                [
                    sx * cy * cz - p * cx * sy * sz,
                    cx * sy * cz + p * sx * cy * sz,
                    cx * cy * sz - p * sx * sy * cz,
                ],
            )
        }
    }
}

/// Helicity vector v of the Weyl block, A = u I − i v·σ.
///
/// The d = 3 − branch is written with σᵀ and the B branch is a transpose;
/// each flips the sign of the y component.
pub fn helicity_vector(k: &WaveVector, spec: &WalkSpec) -> Vec3 {
    let (_, nt) = weyl_content(k, spec.chirality);
    let mut flip = spec.dim == 3 && spec.chirality == Chirality::Minus;
    if spec.branch == Branch::B {
        flip = !flip;
    }
    if flip {
        [nt[0], -nt[1], nt[2]]
    } else {
        nt
    }
}

fn weyl_matrix(u: f64, v: &Vec3) -> CMat {
    identity(2) * c(u, 0.0) - sigma_dot(v) * I
}

pub fn weyl_symbol(k: &WaveVector, spec: &WalkSpec) -> Result<WalkSymbol> {
    check(k, spec, Family::Weyl)?;
    let (u, n_tilde) = weyl_content(k, spec.chirality);
    let matrix = weyl_matrix(u, &helicity_vector(k, spec));
    Ok(WalkSymbol { k: *k, matrix, u, n_tilde })
}

/// [[n A, i m I], [i m I, n A†]] for d = 2, 3 and the one-dimensional block
/// [[n e^{±ik}, i m], [i m, n e^{∓ik}]] for d = 1.
pub fn dirac_symbol(k: &WaveVector, spec: &WalkSpec) -> Result<WalkSymbol> {
    check(k, spec, Family::Dirac)?;
    let (n, m) = (spec.n(), spec.m());
    let (u, n_tilde) = weyl_content(k, spec.chirality);
    let matrix = if spec.dim == 1 {
        let e = c(0.0, spec.chirality.sign() * k.as_slice()[0]).exp();
        CMat::from_row_slice(2, 2, &[e * n, c(0.0, m), c(0.0, m), e.conj() * n])
    } else {
        let a = weyl_matrix(u, &helicity_vector(k, spec));
        let im = identity(2) * c(0.0, m);
        block2(&(&a * c(n, 0.0)), &im, &im, &(a.adjoint() * c(n, 0.0)))
    };
    Ok(WalkSymbol { k: *k, matrix, u, n_tilde })
}

pub fn symbol(k: &WaveVector, spec: &WalkSpec) -> Result<WalkSymbol> {
    match spec.family {
        Family::Weyl => weyl_symbol(k, spec),
        Family::Dirac => dirac_symbol(k, spec),
    }
}

/// Matrix part of [`symbol`].
pub fn symbol_matrix(k: &WaveVector, spec: &WalkSpec) -> Result<CMat> {
    Ok(symbol(k, spec)?.matrix)
}

/// ω ∈ [0, π] with eigenvalues e^{∓iω}.
///
/// atan2 keeps full relative accuracy near both ends of the band.
pub fn omega(k: &WaveVector, spec: &WalkSpec) -> Result<f64> {
    if k.dim() != spec.dim {
        return Err(Error::DimensionMismatch { expected: spec.dim, got: k.dim() });
    }
    let (u, nt) = weyl_content(k, spec.chirality);
    let w = norm3(&nt);
    Ok(match spec.family {
        Family::Weyl => w.atan2(u),
        Family::Dirac => {
            let n = spec.n();
            spec.m().hypot(n * w).atan2(n * u)
        }
    })
}

/// One ω per pair of bands e^{∓iω}: one entry for s = 2, two for s = 4.
pub fn dispersion(k: &WaveVector, spec: &WalkSpec) -> Result<Vec<f64>> {
    let w = omega(k, spec)?;
    Ok(vec![w; spec.components() / 2])
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct OmegaDerivatives {
    pub omega: f64,
    pub grad: Vec3,
    pub hess: [[f64; 3]; 3],
}

/// Analytic gradient and Hessian of ω = arccos(n u).
///
/// ∇ω = −n∇u / sin ω and
/// ∇∇ω = −n∇∇u / sin ω − cos ω (n∇u)(n∇u)ᵀ / sin³ω.
pub fn omega_derivatives(k: &WaveVector, spec: &WalkSpec) -> Result<OmegaDerivatives> {
    let w = omega(k, spec)?;
    let s = w.sin();
    if s.abs() < 1e-9 {
        return Err(Error::SingularPoint(s.abs()));
    }
    let n = spec.n();
    let ct = content(spec.dim, spec.chirality);
    let jet = trig::eval(&ct.u, &k.padded(), spec.dim);
    let g = crate::linalg::scale3(&jet.grad, n);
    let mut grad = [0.0; 3];
    let mut hess = [[0.0; 3]; 3];
    for a in 0..spec.dim {
        grad[a] = -g[a] / s;
        for b in 0..spec.dim {
            hess[a][b] = -n * jet.hess[a][b] / s - w.cos() * g[a] * g[b] / (s * s * s);
        }
    }
    Ok(OmegaDerivatives { omega: w, grad, hess })
}

/// ω / sin ω with its small-ω series.
pub(crate) fn omega_over_sin(w: f64) -> f64 {
    if w.abs() < 1e-4 {
        1.0 + w * w / 6.0
    } else {
        w / w.sin()
    }
}

/// H with exp(−iH) = symbol: H = (ω / sin ω)·(i/2)(U − U†).
pub fn interpolating_hamiltonian(k: &WaveVector, spec: &WalkSpec) -> Result<CMat> {
    let u = symbol_matrix(k, spec)?;
    let w = omega(k, spec)?;
    if std::f64::consts::PI - w < 1e-9 {
        return Err(Error::BranchSingularity);
    }
    let herm = (&u - u.adjoint()) * c(0.0, 0.5);
    Ok(herm * c(omega_over_sin(w), 0.0))
}

/// Relativistic-limit Hamiltonian H₀(k) and E with H₀² = E² I.
///
/// Weyl: the linear part of v·σ. Dirac (d ≥ 2): [[W, −m], [−m, −W]] with
/// W the Weyl H₀. Dirac d = 1: [[∓k, −m], [−m, ±k]].
pub fn continuum_hamiltonian(k: &WaveVector, spec: &WalkSpec) -> Result<(CMat, f64)> {
    if k.dim() != spec.dim {
        return Err(Error::DimensionMismatch { expected: spec.dim, got: k.dim() });
    }
    let m = spec.m();
    let kk = k.padded();
    if spec.family == Family::Dirac && spec.dim == 1 {
        let q = spec.chirality.sign() * kk[0];
        let h = CMat::from_row_slice(2, 2, &[c(-q, 0.0), c(-m, 0.0), c(-m, 0.0), c(q, 0.0)]);
        return Ok((h, q.hypot(m)));
    }
    let ct = content(spec.dim, spec.chirality);
    let zero = [0.0; 3];
    let mut w = [0.0; 3];
    for (row, terms) in ct.v.iter().enumerate() {
        let g = trig::eval(terms, &zero, spec.dim).grad;
        w[row] = crate::linalg::dot(&g, &kk);
    }
    if spec.branch == Branch::B {
        w[1] = -w[1];
    }
    let weyl = sigma_dot(&w);
    let e_w = norm3(&w);
    match spec.family {
        Family::Weyl => Ok((weyl, e_w)),
        Family::Dirac => {
            let mm = identity(2) * c(-m, 0.0);
            Ok((block2(&weyl, &mm, &mm, &(-weyl.clone())), e_w.hypot(m)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{exp_involutive, frob, pauli, unitarity_residual};

    fn all_specs() -> Vec<WalkSpec> {
        let mut v = Vec::new();
        for d in 1..=3 {
            for ch in [Chirality::Plus, Chirality::Minus] {
                for br in [Branch::A, Branch::B] {
                    v.push(WalkSpec::weyl(d, ch, br).unwrap());
                    v.push(WalkSpec::dirac(d, ch, br, 0.3).unwrap());
                }
            }
        }
        v
    }

    fn kvec(d: usize, seed: f64) -> WaveVector {
        let k = [0.7 * seed.sin() + 0.2, 1.3 * (2.0 * seed).cos(), -0.9 * seed];
        WaveVector::from_padded(d, k)
    }

    /// With γ⁰ = [[0, I], [I, 0]] and γ^i = [[0, −σ_i], [σ_i, 0]] the form
    /// n u I − i n γ⁰ γ·v + i m γ⁰ equals the block symbol.
    #[test]
    fn gamma_form_matches_block() {
        let z = crate::linalg::zeros(2);
        let id = identity(2);
        let g0 = block2(&z, &id, &id, &z);
        for d in 2..=3 {
            for ch in [Chirality::Plus, Chirality::Minus] {
                let s = WalkSpec::dirac(d, ch, Branch::A, -0.35).unwrap();
                let k = kvec(d, 1.7);
                let sym = dirac_symbol(&k, &s).unwrap();
                let v = helicity_vector(&k, &s);
                let mut g = identity(4) * c(s.n() * sym.u, 0.0) + &g0 * c(0.0, s.m());
                for (i, vi) in v.iter().enumerate() {
                    let sg = pauli(i);
                    let gi = block2(&z, &(-&sg), &sg, &z);
                    g -= &g0 * gi * c(0.0, s.n() * vi);
                }
                assert!(frob(&(g - &sym.matrix)) < 1e-13);
            }
        }
    }

    #[test]
    fn origin_is_identity() {
        let s = WalkSpec::weyl_plus(3);
        let sym = weyl_symbol(&WaveVector::zero(3), &s).unwrap();
        assert!(frob(&(sym.matrix - identity(2))) < 1e-15);
        assert_eq!(sym.u, 1.0);
    }

    #[test]
    fn axis_closed_form() {
        let s = WalkSpec::weyl_plus(3);
        let kap = 1.1;
        let sym = weyl_symbol(&WaveVector::d3(kap, 0.0, 0.0), &s).unwrap();
        let a = kap / 3f64.sqrt();
        let expect = identity(2) * c(a.cos(), 0.0) - pauli(0) * c(0.0, a.sin());
        assert!(frob(&(sym.matrix - expect)) < 1e-15);
    }

    #[test]
    fn unitary_everywhere() {
        for spec in all_specs() {
            for i in 0..50 {
                let k = kvec(spec.dim, i as f64 * 0.37);
                let u = symbol_matrix(&k, &spec).unwrap();
                assert!(unitarity_residual(&u) < 1e-13, "{spec}");
                let tr = (u.clone() + u.adjoint()) * c(0.5, 0.0);
                let cw = omega(&k, &spec).unwrap().cos();
                assert!(frob(&(tr - identity(u.nrows()) * c(cw, 0.0))) < 1e-13, "{spec}");
            }
        }
    }

    #[test]
    fn full_mass_is_flat() {
        let spec = WalkSpec::dirac(3, Chirality::Plus, Branch::A, 1.0).unwrap();
        let u = symbol_matrix(&WaveVector::d3(0.4, 1.0, -2.0), &spec).unwrap();
        let off = identity(2) * I;
        let z = CMat::zeros(2, 2);
        assert!(frob(&(u - block2(&z, &off, &off, &z))) < 1e-15);
        let w = omega(&WaveVector::d3(0.4, 1.0, -2.0), &spec).unwrap();
        assert!((w - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn dirac_rest_frequency() {
        let spec = WalkSpec::dirac(3, Chirality::Plus, Branch::A, 0.6).unwrap();
        let w = omega(&WaveVector::zero(3), &spec).unwrap();
        assert!((w - 0.8f64.acos()).abs() < 1e-15);
    }

    #[test]
    fn hamiltonian_exponentiates_to_symbol() {
        for spec in all_specs() {
            let k = kvec(spec.dim, 0.9);
            let h = interpolating_hamiltonian(&k, &spec).unwrap();
            let e = (h * c(0.0, -1.0)).exp();
            assert!(frob(&(e - symbol_matrix(&k, &spec).unwrap())) < 1e-10, "{spec}");
        }
        let h = interpolating_hamiltonian(&WaveVector::zero(3), &WalkSpec::weyl_plus(3)).unwrap();
        assert!(frob(&h) < 1e-15);
    }

    #[test]
    fn continuum_squares_to_scalar() {
        for spec in all_specs() {
            let k = kvec(spec.dim, 0.4);
            let (h, e) = continuum_hamiltonian(&k, &spec).unwrap();
            assert!(frob(&(&h * &h - identity(h.nrows()) * c(e * e, 0.0))) < 1e-13, "{spec}");
            let small = k.scale(1e-4);
            let (h0, e0) = continuum_hamiltonian(&small, &spec).unwrap();
            let walk = symbol_matrix(&small, &spec).unwrap();
            let cont = exp_involutive(&h0, e0, 1.0);
            let tol = if spec.family == Family::Dirac { 0.05 } else { 1e-7 };
            assert!(frob(&(walk - cont)) < tol, "{spec}");
        }
    }
}
