//! Small dense complex matrices and 3-vectors.

use nalgebra::{DMatrix, Matrix3, Vector3};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;
pub type Vec3 = [f64; 3];

pub const I: Complex64 = Complex64::new(0.0, 1.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(s: usize) -> CMat {
    CMat::identity(s, s)
}

pub fn zeros(s: usize) -> CMat {
    CMat::zeros(s, s)
}

/// Pauli matrix σ_x, σ_y, σ_z for `axis` 0, 1, 2.
pub fn pauli(axis: usize) -> CMat {
    match axis {
        0 => CMat::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
        1 => CMat::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]),
        2 => CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
        _ => panic!("pauli axis {axis} out of range"),
    }
}

/// v·σ for a real 3-vector.
pub fn sigma_dot(v: &Vec3) -> CMat {
    CMat::from_row_slice(
        2,
        2,
        &[c(v[2], 0.0), c(v[0], -v[1]), c(v[0], v[1]), c(-v[2], 0.0)],
    )
}

/// Real 3-vector v with M = v·σ + (trace part), read off a 2×2 matrix.
pub fn pauli_components(m: &CMat) -> Vec3 {
    let x = 0.5 * (m[(0, 1)] + m[(1, 0)]).re;
    let y = 0.5 * (m[(1, 0)] - m[(0, 1)]).im;
    let z = 0.5 * (m[(0, 0)] - m[(1, 1)]).re;
    [x, y, z]
}

/// [[a, b], [c, d]] from equally sized square blocks.
pub fn block2(a: &CMat, b: &CMat, cm: &CMat, d: &CMat) -> CMat {
    let s = a.nrows();
    let mut m = CMat::zeros(2 * s, 2 * s);
    m.view_mut((0, 0), (s, s)).copy_from(a);
    m.view_mut((0, s), (s, s)).copy_from(b);
    m.view_mut((s, 0), (s, s)).copy_from(cm);
    m.view_mut((s, s), (s, s)).copy_from(d);
    m
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn frob(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// max(‖U†U − I‖, ‖UU† − I‖) in Frobenius norm.
pub fn unitarity_residual(u: &CMat) -> f64 {
    let id = identity(u.nrows());
    let a = frob(&(u.adjoint() * u - &id));
    let b = frob(&(u * u.adjoint() - &id));
    a.max(b)
}

pub fn hermiticity_residual(h: &CMat) -> f64 {
    frob(&(h - h.adjoint()))
}

/// exp(−i t H) for a Hermitian H with H² = e² I.
pub fn exp_involutive(h: &CMat, e: f64, t: f64) -> CMat {
    let s = h.nrows();
    let (cs, sn) = ((t * e).cos(), (t * e).sin());
    let sinc = if e.abs() < 1e-300 { t } else { sn / e };
    identity(s) * c(cs, 0.0) - h * c(0.0, sinc)
}

/// Integer power by repeated squaring.
pub fn mat_pow(m: &CMat, mut n: u64) -> CMat {
    let mut acc = identity(m.nrows());
    let mut base = m.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = &acc * &base;
        }
        n >>= 1;
        if n > 0 {
            base = &base * &base;
        }
    }
    acc
}

#[inline]
pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub fn norm3(a: &Vec3) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
pub fn scale3(a: &Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

#[inline]
pub fn add3(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn sub3(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Angle between two nonzero vectors, robust near 0 and π.
pub fn angle3(a: &Vec3, b: &Vec3) -> f64 {
    norm3(&cross(a, b)).atan2(dot(a, b))
}

pub fn mat3(m: &Matrix3<f64>) -> [[f64; 3]; 3] {
    [
        [m[(0, 0)], m[(0, 1)], m[(0, 2)]],
        [m[(1, 0)], m[(1, 1)], m[(1, 2)]],
        [m[(2, 0)], m[(2, 1)], m[(2, 2)]],
    ]
}

pub fn to_vector3(a: &Vec3) -> Vector3<f64> {
    Vector3::new(a[0], a[1], a[2])
}

/// Rotation by `angle` about the unit vector `axis` (Rodrigues).
pub fn rotation(axis: &Vec3, angle: f64) -> Matrix3<f64> {
    let n = norm3(axis);
    if n == 0.0 {
        return Matrix3::identity();
    }
    let a = scale3(axis, 1.0 / n);
    let k = Matrix3::new(0.0, -a[2], a[1], a[2], 0.0, -a[0], -a[1], a[0], 0.0);
    Matrix3::identity() + k * angle.sin() + k * k * (1.0 - angle.cos())
}

/// Spin-1 generators (J_k)_{ab} = −i ε_{kab}.
pub fn spin1(axis: usize) -> CMat {
    let mut m = CMat::zeros(3, 3);
    for a in 0..3 {
        for b in 0..3 {
            let e = levi_civita(axis, a, b);
            if e != 0 {
                m[(a, b)] = c(0.0, -(e as f64));
            }
        }
    }
    m
}

fn levi_civita(i: usize, j: usize, k: usize) -> i32 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}
