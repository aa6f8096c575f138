//! Lattices, Brillouin zones and momentum grids.
//!
//! Positions are integer coordinates in a generator basis; wave-vectors are
//! Cartesian. For the body-centered cubic lattice the basis is
//! {h1, h2, h3} with h1 = (1,1,1)/√3, h2 = (1,−1,−1)/√3, h3 = (−1,1,−1)/√3
//! and h4 = −h1 − h2 − h3 = (−1,−1,1)/√3.

use crate::error::{Error, Result};
use crate::linalg::Vec3;
use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const ZONE_TOL: f64 = 1e-12;

/// Cartesian wave-vector in units of the inverse lattice spacing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveVector {
    dim: usize,
    k: Vec3,
}

impl WaveVector {
    pub fn new(components: &[f64]) -> Result<Self> {
        let dim = components.len();
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidArgument(format!("wave-vector dimension {dim}")));
        }
        if components.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("non-finite wave-vector".into()));
        }
        let mut k = [0.0; 3];
        k[..dim].copy_from_slice(components);
        Ok(Self { dim, k })
    }

    pub fn d1(x: f64) -> Self {
        Self { dim: 1, k: [x, 0.0, 0.0] }
    }

    pub fn d2(x: f64, y: f64) -> Self {
        Self { dim: 2, k: [x, y, 0.0] }
    }

    pub fn d3(x: f64, y: f64, z: f64) -> Self {
        Self { dim: 3, k: [x, y, z] }
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, k: [0.0; 3] }
    }

    /// Embeds a padded Cartesian triple in dimension `dim`.
    pub fn from_padded(dim: usize, k: Vec3) -> Self {
        let mut v = [0.0; 3];
        v[..dim].copy_from_slice(&k[..dim]);
        Self { dim, k: v }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.k[..self.dim]
    }

    /// Components padded with zeros to three entries.
    pub fn padded(&self) -> Vec3 {
        self.k
    }

    pub fn norm(&self) -> f64 {
        self.as_slice().iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_padded(self.dim, crate::linalg::scale3(&self.k, s))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_padded(self.dim, crate::linalg::add3(&self.k, &o.k))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_padded(self.dim, crate::linalg::sub3(&self.k, &o.k))
    }

    pub fn distance(&self, o: &Self) -> f64 {
        self.sub(o).norm()
    }
}

/// The lattices carrying the walks, plus plain Z^d for reduced kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lattice {
    /// Z with unit spacing.
    Line,
    /// Z² with generators (1,1)/√2 and (1,−1)/√2.
    Square,
    /// Body-centered cubic, generators h1..h4 of length 1.
    Bcc,
    /// Z^d with the standard basis.
    Cubic(usize),
}

impl Lattice {
    pub fn for_dim(d: usize) -> Result<Self> {
        match d {
            1 => Ok(Lattice::Line),
            2 => Ok(Lattice::Square),
            3 => Ok(Lattice::Bcc),
            _ => Err(Error::InvalidArgument(format!("no walk lattice in dimension {d}"))),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Lattice::Line => 1,
            Lattice::Square => 2,
            Lattice::Bcc => 3,
            Lattice::Cubic(d) => *d,
        }
    }

    /// Cartesian basis vectors, one per coordinate.
    pub fn basis(&self) -> Vec<Vec3> {
        let r2 = 1.0 / 2f64.sqrt();
        let r3 = 1.0 / 3f64.sqrt();
        match self {
            Lattice::Line => vec![[1.0, 0.0, 0.0]],
            Lattice::Square => vec![[r2, r2, 0.0], [r2, -r2, 0.0]],
            Lattice::Bcc => vec![[r3, r3, r3], [r3, -r3, -r3], [-r3, r3, -r3]],
            Lattice::Cubic(d) => (0..*d)
                .map(|i| {
                    let mut v = [0.0; 3];
                    v[i] = 1.0;
                    v
                })
                .collect(),
        }
    }

    /// Positive generators S₊ in integer coordinates.
    pub fn generators(&self) -> Vec<[i64; 3]> {
        match self {
            Lattice::Bcc => vec![[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]],
            other => (0..other.dim())
                .map(|i| {
                    let mut v = [0; 3];
                    v[i] = 1;
                    v
                })
                .collect(),
        }
    }

    /// Reciprocal vectors with b_i · h_j = 2π δ_ij.
    pub fn reciprocal(&self) -> Vec<Vec3> {
        let d = self.dim();
        let basis = self.basis();
        let mut h = Matrix3::identity();
        for (j, v) in basis.iter().enumerate() {
            for i in 0..d {
                h[(i, j)] = v[i];
            }
        }
        let inv = h.try_inverse().expect("lattice basis is invertible");
        (0..d)
            .map(|i| {
                let mut b = [0.0; 3];
                for (c, slot) in b.iter_mut().enumerate().take(d) {
                    *slot = 2.0 * PI * inv[(i, c)];
                }
                b
            })
            .collect()
    }

    pub fn to_cartesian(&self, coords: &[i64]) -> Vec3 {
        let mut x = [0.0; 3];
        for (a, v) in coords.iter().zip(self.basis()) {
            for i in 0..3 {
                x[i] += *a as f64 * v[i];
            }
        }
        x
    }

    pub fn to_cartesian_f(&self, coords: &[f64]) -> Vec3 {
        let mut x = [0.0; 3];
        for (a, v) in coords.iter().zip(self.basis()) {
            for i in 0..3 {
                x[i] += a * v[i];
            }
        }
        x
    }

    /// Real-valued lattice coordinates of a Cartesian point.
    pub fn coords_of(&self, x: &Vec3) -> Vec3 {
        let mut a = [0.0; 3];
        for (i, b) in self.reciprocal().iter().enumerate() {
            a[i] = crate::linalg::dot(b, x) / (2.0 * PI);
        }
        a
    }

    /// Integer coordinates of a Cartesian lattice point, if it is one.
    pub fn integer_coords(&self, x: &Vec3) -> Option<[i64; 3]> {
        let a = self.coords_of(x);
        let mut out = [0i64; 3];
        for i in 0..3 {
            let r = a[i].round();
            if (a[i] - r).abs() > 1e-9 {
                return None;
            }
            out[i] = r as i64;
        }
        Some(out)
    }

    fn check_dim(&self, k: &WaveVector) -> Result<()> {
        if k.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: k.dim() });
        }
        Ok(())
    }

    /// Closed-zone membership.
    pub fn bz_contains(&self, k: &WaveVector) -> Result<bool> {
        self.check_dim(k)?;
        let v = k.padded();
        let inside = |x: f64, bound: f64| x.abs() <= bound * (1.0 + ZONE_TOL) + ZONE_TOL;
        Ok(match self {
            Lattice::Line | Lattice::Cubic(_) => v[..self.dim()].iter().all(|x| inside(*x, PI)),
            Lattice::Square => {
                let b = 2f64.sqrt() * PI;
                inside(v[0] + v[1], b) && inside(v[0] - v[1], b)
            }
            Lattice::Bcc => {
                let b = 3f64.sqrt() * PI;
                [(0, 1), (0, 2), (1, 2)]
                    .iter()
                    .all(|&(i, j)| inside(v[i] + v[j], b) && inside(v[i] - v[j], b))
            }
        })
    }

    /// Representative of k modulo the reciprocal lattice inside the zone.
    pub fn bz_wrap(&self, k: &WaveVector) -> Result<WaveVector> {
        if self.bz_contains(k)? {
            return Ok(*k);
        }
        let v = k.padded();
        let d = self.dim();
        let out = match self {
            Lattice::Line | Lattice::Cubic(_) => {
                let mut w = v;
                for x in w.iter_mut().take(d) {
                    *x -= 2.0 * PI * (*x / (2.0 * PI)).round();
                }
                w
            }
            Lattice::Square => {
                let s = 2f64.sqrt() * PI;
                let p = nearest_dn(&v[..2], s);
                [v[0] - p[0], v[1] - p[1], 0.0]
            }
            Lattice::Bcc => {
                let s = 3f64.sqrt() * PI;
                let p = nearest_dn(&v, s);
                [v[0] - p[0], v[1] - p[1], v[2] - p[2]]
            }
        };
        Ok(WaveVector::from_padded(d, out))
    }

    /// Cartesian wave-vector of grid index `m` on an N-point-per-axis grid.
    pub fn grid_point(&self, m: &[usize], n: usize) -> WaveVector {
        let mut k = [0.0; 3];
        for (mi, b) in m.iter().zip(self.reciprocal()) {
            let f = *mi as f64 / n as f64;
            for i in 0..3 {
                k[i] += f * b[i];
            }
        }
        WaveVector::from_padded(self.dim(), k)
    }

    /// Uniform samples of the zone from one seed: uniform fractional
    /// reciprocal coordinates, then wrapped.
    pub fn sample_zone(&self, count: usize, seed: u64) -> Result<Vec<WaveVector>> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let recip = self.reciprocal();
        (0..count)
            .map(|_| {
                let mut k = [0.0; 3];
                for b in &recip {
                    let f: f64 = rng.gen();
                    for i in 0..3 {
                        k[i] += f * b[i];
                    }
                }
                self.bz_wrap(&WaveVector::from_padded(self.dim(), k))
            })
            .collect()
    }

    /// Zone volume (2π)^d / cell volume.
    pub fn zone_volume(&self) -> f64 {
        let d = self.dim();
        let mut h = Matrix3::identity();
        for (j, v) in self.basis().iter().enumerate() {
            for i in 0..d {
                h[(i, j)] = v[i];
            }
        }
        (2.0 * PI).powi(d as i32) / h.determinant().abs()
    }
}

/// Nearest point of s·D_n (integer vectors with even sum, scaled by s).
fn nearest_dn(x: &[f64], s: f64) -> Vec3 {
    let n = x.len();
    let y: Vec<f64> = x.iter().map(|v| v / s).collect();
    let mut f: Vec<f64> = y.iter().map(|v| v.round()).collect();
    let parity = f.iter().sum::<f64>().rem_euclid(2.0);
    if parity > 0.5 {
        let mut worst = 0;
        let mut gap = -1.0;
        for i in 0..n {
            let g = (y[i] - f[i]).abs();
            if g > gap {
                gap = g;
                worst = i;
            }
        }
        f[worst] += if y[worst] >= f[worst] { 1.0 } else { -1.0 };
    }
    let mut p = [0.0; 3];
    for i in 0..n {
        p[i] = f[i] * s;
    }
    p
}

/// The N^d wave-vectors dual to the periodic position lattice Z_N^d.
#[derive(Debug, Clone)]
pub struct MomentumGrid {
    pub lattice: Lattice,
    pub n: usize,
    pub points: Vec<WaveVector>,
}

/// Row-major multi-index of a flat grid index (axis 0 slowest).
pub fn unravel(mut idx: usize, n: usize, dim: usize) -> [usize; 3] {
    let mut m = [0usize; 3];
    for axis in (0..dim).rev() {
        m[axis] = idx % n;
        idx /= n;
    }
    m
}

pub fn momentum_grid(n: usize, lattice: Lattice) -> Result<MomentumGrid> {
    if n < 2 {
        return Err(Error::InvalidArgument("grid needs N >= 2".into()));
    }
    let d = lattice.dim();
    let total = n.pow(d as u32);
    let points = (0..total)
        .map(|i| lattice.grid_point(&unravel(i, n, d)[..d], n))
        .collect();
    Ok(MomentumGrid { lattice, n, points })
}
