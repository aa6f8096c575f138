//! Four-vector n(k), the f-map k ↦ f(k)n(k) onto momentum space and the
//! nonlinear boosts and rotations obtained by conjugating linear ones.

use crate::error::{Error, Result};
use crate::lattice::{Lattice, WaveVector};
use crate::linalg::{add3, dot, norm3, rotation, scale3, to_vector3, Vec3};
use crate::walks::trig::{self, content};
use crate::walks::{helicity_vector, omega, Branch, Family, WalkSpec};
use nalgebra::{Matrix3, Vector3};
use serde::Serialize;
use std::f64::consts::PI;

/// (sin ω, ñ): time and space components of n(k).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FourVectorN {
    pub time: f64,
    pub space: Vec3,
}

impl FourVectorN {
    /// time² − |space|².
    pub fn minkowski_sqr(&self) -> f64 {
        self.time * self.time - dot(&self.space, &self.space)
    }
}

/// Four-momentum p = (p₀, p).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FourMomentum {
    pub time: f64,
    pub space: Vec3,
}

/// Boost velocity with |β| < 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Boost(Vec3);

impl Boost {
    pub fn new(beta: Vec3) -> Result<Self> {
        if !(norm3(&beta) < 1.0) {
            return Err(Error::InvalidArgument(format!("|beta| = {} must be below 1", norm3(&beta))));
        }
        Ok(Self(beta))
    }

    pub fn from_rapidity(direction: &Vec3, eta: f64) -> Result<Self> {
        let n = norm3(direction);
        if n == 0.0 {
            return Err(Error::InvalidArgument("zero boost direction".into()));
        }
        Self::new(scale3(direction, eta.tanh() / n))
    }

    pub fn velocity(&self) -> Vec3 {
        self.0
    }

    pub fn rapidity(&self) -> f64 {
        norm3(&self.0).atanh()
    }

    /// Active linear boost of a four-momentum.
    pub fn apply(&self, p: &FourMomentum) -> FourMomentum {
        let b = norm3(&self.0);
        if b == 0.0 {
            return *p;
        }
        let g = 1.0 / (1.0 - b * b).sqrt();
        let bh = scale3(&self.0, 1.0 / b);
        let par = dot(&bh, &p.space);
        FourMomentum {
            time: g * (p.time + dot(&self.0, &p.space)),
            space: add3(&p.space, &scale3(&bh, (g - 1.0) * par + g * b * p.time)),
        }
    }
}

/// Weight f in p = f(k)·n(k), written as a function of ω.
#[derive(Debug, Clone, Copy)]
pub enum FMap {
    /// ϖ/sin ω with ϖ = ω below π/2 and π − ω above, so p₀ = |p| = ϖ.
    Default,
    /// f = 1.
    Unit,
    /// f = 1/|cos ω|, so |p| = |tan ω|.
    Secant,
    Custom {
        f: fn(f64) -> f64,
        /// f'(ω)/sin ω.
        df_over_sin: fn(f64) -> f64,
        radius: f64,
    },
}

fn x_over_sin(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 + x * x / 6.0
    } else {
        x / x.sin()
    }
}

/// (sin x − x cos x)/sin³x.
fn g_series(x: f64) -> f64 {
    if x.abs() < 1e-3 {
        1.0 / 3.0 + 2.0 * x * x / 15.0
    } else {
        let s = x.sin();
        (s - x * x.cos()) / (s * s * s)
    }
}

impl FMap {
    pub fn f(&self, w: f64) -> f64 {
        match self {
            FMap::Default => x_over_sin(if w <= PI / 2.0 { w } else { PI - w }),
            FMap::Unit => 1.0,
            FMap::Secant => 1.0 / w.cos().abs(),
            FMap::Custom { f, .. } => f(w),
        }
    }

    pub fn df_over_sin(&self, w: f64) -> f64 {
        match self {
            FMap::Default => {
                if w <= PI / 2.0 {
                    g_series(w)
                } else {
                    -g_series(PI - w)
                }
            }
            FMap::Unit => 0.0,
            FMap::Secant => {
                let c = w.cos();
                c.signum() / (c * c)
            }
            FMap::Custom { df_over_sin, .. } => df_over_sin(w),
        }
    }

    /// Supremum of |p| over the image.
    pub fn image_radius(&self) -> f64 {
        match self {
            FMap::Default => PI / 2.0,
            FMap::Unit => 1.0,
            FMap::Secant => f64::INFINITY,
            FMap::Custom { radius, .. } => *radius,
        }
    }
}

/// Region centers in Cartesian k.
pub fn region_centers() -> [WaveVector; 4] {
    let a = 3f64.sqrt() * PI;
    [
        WaveVector::zero(3),
        WaveVector::d3(a / 2.0, a / 2.0, a / 2.0),
        WaveVector::d3(-a / 2.0, -a / 2.0, -a / 2.0),
        WaveVector::d3(-a, 0.0, 0.0),
    ]
}

const TIE_TOL: f64 = 1e-12;

/// Nearest center under the zone-wrapped distance; ties go to the lower index.
pub fn classify_region(k: &WaveVector) -> Result<usize> {
    if k.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: k.dim() });
    }
    let mut best = (0, f64::INFINITY);
    for (i, c) in region_centers().iter().enumerate() {
        let d = Lattice::Bcc.bz_wrap(&k.sub(c))?.norm();
        if d < best.1 - TIE_TOL {
            best = (i, d);
        }
    }
    Ok(best.0)
}

/// n(k) = (sin ω, ñ). For Dirac walks ñ carries the factor n = √(1−m²)
/// and n_μ n^μ = m².
pub fn n_of_k(k: &WaveVector, spec: &WalkSpec) -> Result<FourVectorN> {
    let w = omega(k, spec)?;
    Ok(FourVectorN { time: w.sin(), space: scale3(&helicity_vector(k, spec), spec.n()) })
}

fn require_weyl3(spec: &WalkSpec) -> Result<()> {
    if spec.family != Family::Weyl {
        return Err(Error::FamilyMismatch { expected: "Weyl" });
    }
    if spec.dim != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: spec.dim });
    }
    Ok(())
}

/// u, ∇u, v and ∂v_i/∂k_j.
fn content_jet(k: &Vec3, spec: &WalkSpec) -> (f64, Vec3, Vec3, Matrix3<f64>) {
    let ct = content(spec.dim, spec.chirality);
    let ju = trig::eval(&ct.u, k, spec.dim);
    let mut v = [0.0; 3];
    let mut jac = Matrix3::zeros();
    for (row, terms) in ct.v.iter().enumerate() {
        let j = trig::eval(terms, k, spec.dim);
        let s = if row == 1 && spec.branch == Branch::B { -1.0 } else { 1.0 };
        v[row] = s * j.value;
        for col in 0..3 {
            jac[(row, col)] = s * j.grad[col];
        }
    }
    (ju.value, ju.grad, v, jac)
}

/// p = f(k)·n(k).
pub fn dmap(k: &WaveVector, f: &FMap, spec: &WalkSpec) -> Result<FourMomentum> {
    require_weyl3(spec)?;
    let w = omega(k, spec)?;
    let fw = f.f(w);
    if !fw.is_finite() {
        return Err(Error::SingularPoint(w));
    }
    let v = helicity_vector(k, spec);
    Ok(FourMomentum { time: fw * w.sin(), space: scale3(&v, fw) })
}

/// Spatial part of dmap and its Jacobian ∂p/∂k = f ∂v + v ⊗ (f'/sin ω)(−∇u).
fn dmap_jet(k: &Vec3, f: &FMap, spec: &WalkSpec) -> (Vec3, Matrix3<f64>) {
    let (u, gu, v, dv) = content_jet(k, spec);
    let w = norm3(&v).atan2(u);
    let fw = f.f(w);
    let h = f.df_over_sin(w);
    let grad_term = to_vector3(&v) * (to_vector3(&gu) * -h).transpose();
    (scale3(&v, fw), dv * fw + grad_term)
}

const MAX_NEWTON: usize = 100;
const ACCEPT: f64 = 1e-10;

/// Solves dmap(k) = p for k in the given region by damped Newton iteration
/// on the spatial components, seeded from the linearization at the center.
pub fn dmap_invert(p: &FourMomentum, region: usize, f: &FMap, spec: &WalkSpec) -> Result<WaveVector> {
    require_weyl3(spec)?;
    if region > 3 {
        return Err(Error::InvalidArgument(format!("region {region} not in 0..=3")));
    }
    let target = to_vector3(&p.space);
    if target.norm() > f.image_radius() {
        return Err(Error::OutOfImage { residual: target.norm() - f.image_radius() });
    }
    let center = region_centers()[region].padded();
    let (_, j0) = dmap_jet(&center, f, spec);
    let seed = j0
        .try_inverse()
        .map(|ji| ji * target)
        .ok_or(Error::OutOfImage { residual: target.norm() })?;
    let mut k = to_vector3(&center) + seed;
    let resid = |k: &Vector3<f64>| -> Vector3<f64> {
        let (ps, _) = dmap_jet(&[k[0], k[1], k[2]], f, spec);
        to_vector3(&ps) - target
    };
    let mut r = resid(&k);
    for _ in 0..MAX_NEWTON {
        if r.norm() <= 1e-15 * (1.0 + target.norm()) {
            break;
        }
        let (_, jac) = dmap_jet(&[k[0], k[1], k[2]], f, spec);
        let Some(step) = jac.lu().solve(&(-r)) else { break };
        let mut alpha = 1.0;
        let mut accepted = false;
        while alpha > 1e-6 {
            let kn = k + step * alpha;
            let rn = resid(&kn);
            if rn.norm() < r.norm() {
                k = kn;
                r = rn;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    if !(r.norm() <= ACCEPT) {
        return Err(Error::OutOfImage { residual: r.norm() });
    }
    let out = Lattice::Bcc.bz_wrap(&WaveVector::d3(k[0], k[1], k[2]))?;
    let got = classify_region(&out)?;
    if got != region {
        return Err(Error::RegionViolation { expected: region, got });
    }
    Ok(out)
}

fn escape(e: Error, parameter: f64) -> Error {
    match e {
        Error::OutOfImage { .. } | Error::RegionViolation { .. } => Error::OrbitEscape { parameter },
        other => other,
    }
}

fn transform(k: &WaveVector, f: &FMap, spec: &WalkSpec, parameter: f64, map: impl Fn(&FourMomentum) -> FourMomentum) -> Result<WaveVector> {
    let region = classify_region(k)?;
    let p = dmap(k, f, spec)?;
    let q = map(&p);
    if norm3(&q.space) > f.image_radius() {
        return Err(Error::OrbitEscape { parameter });
    }
    dmap_invert(&q, region, f, spec).map_err(|e| escape(e, parameter))
}

/// D⁻¹ ∘ Λ_β ∘ D within the region of k.
pub fn nonlinear_boost(k: &WaveVector, beta: &Boost, f: &FMap, spec: &WalkSpec) -> Result<WaveVector> {
    transform(k, f, spec, beta.rapidity(), |p| beta.apply(p))
}

/// D⁻¹ ∘ R ∘ D with R the rotation of the spatial momentum.
pub fn nonlinear_rotation(k: &WaveVector, axis: &Vec3, angle: f64, f: &FMap, spec: &WalkSpec) -> Result<WaveVector> {
    let r = rotation(axis, angle);
    transform(k, f, spec, angle, |p| {
        let s = r * to_vector3(&p.space);
        FourMomentum { time: p.time, space: [s[0], s[1], s[2]] }
    })
}

#[derive(Debug, Clone, Copy)]
pub enum OrbitFamily {
    /// Angles 2πj/(S−1), j = 0..S.
    Rotation { axis: Vec3, samples: usize },
    /// Rapidities η_max·j/(S−1) along `direction`.
    Boost { direction: Vec3, eta_max: f64, samples: usize },
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct OrbitPoint {
    pub parameter: f64,
    pub k: WaveVector,
    pub omega: f64,
    pub region: usize,
    /// Set on the final row when the orbit left the region image;
    /// k then repeats the last reachable point.
    pub escaped: bool,
}

fn grid(samples: usize, top: f64) -> Vec<f64> {
    match samples {
        0 => vec![],
        1 => vec![0.0],
        s => (0..s).map(|j| top * j as f64 / (s - 1) as f64).collect(),
    }
}

/// Orbit of k₀; stops at the first escape, which is recorded as a flagged row.
pub fn orbit(k0: &WaveVector, family: &OrbitFamily, f: &FMap, spec: &WalkSpec) -> Result<Vec<OrbitPoint>> {
    let params = match family {
        OrbitFamily::Rotation { samples, .. } => grid(*samples, 2.0 * PI),
        OrbitFamily::Boost { eta_max, samples, .. } => grid(*samples, *eta_max),
    };
    let region = classify_region(k0)?;
    let results: Vec<Result<WaveVector>> = {
        use rayon::prelude::*;
        params
            .par_iter()
            .map(|&t| match family {
                OrbitFamily::Rotation { axis, .. } => nonlinear_rotation(k0, axis, t, f, spec),
                OrbitFamily::Boost { direction, .. } => {
                    nonlinear_boost(k0, &Boost::from_rapidity(direction, t)?, f, spec)
                }
            })
            .collect()
    };
    let mut out = Vec::with_capacity(params.len());
    let mut last = *k0;
    for (t, r) in params.iter().zip(results) {
        match r {
            Ok(k) => {
                out.push(OrbitPoint { parameter: *t, k, omega: omega(&k, spec)?, region, escaped: false });
                last = k;
            }
            Err(Error::OrbitEscape { .. }) => {
                out.push(OrbitPoint { parameter: *t, k: last, omega: omega(&last, spec)?, region, escaped: true });
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
