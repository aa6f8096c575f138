//! Trigonometric-product form of the Weyl content u(k), v(k).
//!
//! Each quantity is a signed sum of products of cos θ_i / sin θ_i with
//! θ = k/√d. The same tables drive analytic derivatives and the symbolic
//! expansion into exponentials that yields the position kernel.

use crate::linalg::{c, Vec3};
use crate::walks::Chirality;
use num_complex::Complex64;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    One,
    Cos,
    Sin,
}

#[derive(Debug, Clone, Copy)]
pub struct Term {
    pub coef: f64,
    pub f: [Factor; 3],
}

/// u and the σ-basis helicity vector v of A = u I − i v·σ (branch A).
#[derive(Debug, Clone)]
pub struct Content {
    pub dim: usize,
    pub u: Vec<Term>,
    pub v: [Vec<Term>; 3],
}

const fn t(coef: f64, f: [Factor; 3]) -> Term {
    Term { coef, f }
}

use Factor::{Cos as C, One as O, Sin as S};

pub fn content(dim: usize, chirality: Chirality) -> Content {
    let p = chirality.sign();
    match dim {
        1 => Content { dim, u: vec![t(1.0, [C, O, O])], v: [vec![t(p, [S, O, O])], vec![], vec![]] },
        2 => Content {
            dim,
            u: vec![t(1.0, [C, C, O])],
            v: [vec![t(1.0, [S, C, O])], vec![t(1.0, [C, S, O])], vec![t(p, [S, S, O])]],
        },
        // The − branch carries σᵀ, i.e. the y row changes sign.
        3 => Content {
            dim,
            u: vec![t(1.0, [C, C, C]), t(p, [S, S, S])],
            v: [
                vec![t(1.0, [S, C, C]), t(-p, [C, S, S])],
                vec![t(p, [C, S, C]), t(1.0, [S, C, S])],
                vec![t(1.0, [C, C, S]), t(-p, [S, S, C])],
            ],
        },
        _ => panic!("dimension {dim} has no walk content"),
    }
}

/// (value, first derivative, second derivative) of a factor at θ.
#[inline]
fn jet(f: Factor, cs: (f64, f64)) -> (f64, f64, f64) {
    let (co, si) = cs;
    match f {
        Factor::One => (1.0, 0.0, 0.0),
        Factor::Cos => (co, -si, -co),
        Factor::Sin => (si, co, -si),
    }
}

/// Value, gradient and Hessian of a term sum with respect to Cartesian k.
#[derive(Debug, Clone, Copy, Default)]
pub struct Jet {
    pub value: f64,
    pub grad: Vec3,
    pub hess: [[f64; 3]; 3],
}

pub fn theta_scale(dim: usize) -> f64 {
    1.0 / (dim as f64).sqrt()
}

pub fn eval(terms: &[Term], k: &Vec3, dim: usize) -> Jet {
    let sc = theta_scale(dim);
    let cs: Vec<(f64, f64)> = (0..3).map(|i| ((k[i] * sc).cos(), (k[i] * sc).sin())).collect();
    let mut out = Jet::default();
    for term in terms {
        let j: Vec<(f64, f64, f64)> = (0..3).map(|i| jet(term.f[i], cs[i])).collect();
        let val = j[0].0 * j[1].0 * j[2].0;
        out.value += term.coef * val;
        for a in 0..dim {
            let mut g = term.coef * sc;
            for (i, ji) in j.iter().enumerate() {
                g *= if i == a { ji.1 } else { ji.0 };
            }
            out.grad[a] += g;
            for b in 0..dim {
                let mut h = term.coef * sc * sc;
                for (i, ji) in j.iter().enumerate() {
                    h *= match (i == a, i == b) {
                        (true, true) => ji.2,
                        (true, false) | (false, true) => ji.1,
                        (false, false) => ji.0,
                    };
                }
                out.hess[a][b] += h;
            }
        }
    }
    out
}

pub fn value(terms: &[Term], k: &Vec3, dim: usize) -> f64 {
    let sc = theta_scale(dim);
    terms
        .iter()
        .map(|term| {
            let mut v = term.coef;
            for i in 0..3 {
                v *= match term.f[i] {
                    Factor::One => 1.0,
                    Factor::Cos => (k[i] * sc).cos(),
                    Factor::Sin => (k[i] * sc).sin(),
                };
            }
            v
        })
        .sum()
}

/// Σ_ε c_ε e^{iε·θ} with integer frequency vectors ε.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrigPoly(pub BTreeMap<[i32; 3], Complex64>);

impl TrigPoly {
    pub fn constant(z: Complex64) -> Self {
        let mut m = BTreeMap::new();
        if z != Complex64::new(0.0, 0.0) {
            m.insert([0, 0, 0], z);
        }
        TrigPoly(m)
    }

    pub fn from_terms(terms: &[Term]) -> Self {
        let mut acc = TrigPoly::default();
        for term in terms {
            let mut p = TrigPoly::constant(c(term.coef, 0.0));
            for axis in 0..3 {
                p = p.mul(&factor_poly(term.f[axis], axis));
            }
            acc = acc.add(&p);
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut m = self.0.clone();
        for (e, z) in &o.0 {
            *m.entry(*e).or_insert(Complex64::new(0.0, 0.0)) += z;
        }
        m.retain(|_, z| *z != Complex64::new(0.0, 0.0));
        TrigPoly(m)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut m: BTreeMap<_, _> = self.0.iter().map(|(e, z)| (*e, z * s)).collect();
        m.retain(|_, z| *z != Complex64::new(0.0, 0.0));
        TrigPoly(m)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut m: BTreeMap<[i32; 3], Complex64> = BTreeMap::new();
        for (e1, z1) in &self.0 {
            for (e2, z2) in &o.0 {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                *m.entry(e).or_insert(Complex64::new(0.0, 0.0)) += z1 * z2;
            }
        }
        m.retain(|_, z| *z != Complex64::new(0.0, 0.0));
        TrigPoly(m)
    }

    /// Complex conjugate as a function of real θ.
    pub fn conj(&self) -> Self {
        TrigPoly(self.0.iter().map(|(e, z)| ([-e[0], -e[1], -e[2]], z.conj())).collect())
    }

    pub fn eval(&self, theta: &Vec3) -> Complex64 {
        self.0
            .iter()
            .map(|(e, z)| {
                let ph = e[0] as f64 * theta[0] + e[1] as f64 * theta[1] + e[2] as f64 * theta[2];
                z * Complex64::from_polar(1.0, ph)
            })
            .sum()
    }
}

fn factor_poly(f: Factor, axis: usize) -> TrigPoly {
    let mut plus = [0; 3];
    plus[axis] = 1;
    let minus = [-plus[0], -plus[1], -plus[2]];
    let mut m = BTreeMap::new();
    match f {
        Factor::One => {
            m.insert([0, 0, 0], c(1.0, 0.0));
        }
        Factor::Cos => {
            m.insert(plus, c(0.5, 0.0));
            m.insert(minus, c(0.5, 0.0));
        }
        Factor::Sin => {
            m.insert(plus, c(0.0, -0.5));
            m.insert(minus, c(0.0, 0.5));
        }
    }
    TrigPoly(m)
}
