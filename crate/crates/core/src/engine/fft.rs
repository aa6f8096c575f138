//! Multi-dimensional FFT over the component-interleaved state layout.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

pub struct Fourier {
    n: usize,
    dim: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Fourier {
    pub fn new(n: usize, dim: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self { n, dim, forward: planner.plan_fft_forward(n), inverse: planner.plan_fft_inverse(n) }
    }

    /// ψ̂(k) = Σ_g e^{−ik·g} ψ(g) for each of the `s` interleaved components.
    pub fn forward(&self, amps: &[Complex64], s: usize) -> Vec<Complex64> {
        self.transform(amps, s, false)
    }

    /// Inverse of [`Fourier::forward`], including the 1/N^d factor.
    pub fn inverse(&self, amps: &[Complex64], s: usize) -> Vec<Complex64> {
        let mut out = self.transform(amps, s, true);
        let scale = 1.0 / (self.n.pow(self.dim as u32) as f64);
        out.iter_mut().for_each(|z| *z *= scale);
        out
    }

    fn transform(&self, amps: &[Complex64], s: usize, inverse: bool) -> Vec<Complex64> {
        let n = self.n;
        let sites = n.pow(self.dim as u32);
        let plan = if inverse { &self.inverse } else { &self.forward };
        let mut out = amps.to_vec();
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        let mut scratch = vec![Complex64::new(0.0, 0.0); plan.get_inplace_scratch_len()];
        for axis in 0..self.dim {
            let stride = n.pow((self.dim - 1 - axis) as u32);
            for comp in 0..s {
                for base in 0..sites {
                    if (base / stride) % n != 0 {
                        continue;
                    }
                    for (j, z) in line.iter_mut().enumerate() {
                        *z = out[(base + j * stride) * s + comp];
                    }
                    plan.process_with_scratch(&mut line, &mut scratch);
                    for (j, z) in line.iter().enumerate() {
                        out[(base + j * stride) * s + comp] = *z;
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn matches_direct_dft() {
        let (n, dim, s) = (4, 2, 2);
        let amps: Vec<Complex64> =
            (0..n * n * s).map(|i| Complex64::new((i as f64).sin(), (i as f64 * 0.3).cos())).collect();
        let f = Fourier::new(n, dim).forward(&amps, s);
        for m0 in 0..n {
            for m1 in 0..n {
                for c in 0..s {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for a0 in 0..n {
                        for a1 in 0..n {
                            let ph = -2.0 * PI * ((m0 * a0 + m1 * a1) as f64) / n as f64;
                            acc += amps[(a0 * n + a1) * s + c] * Complex64::from_polar(1.0, ph);
                        }
                    }
                    assert!((acc - f[(m0 * n + m1) * s + c]).norm() < 1e-12);
                }
            }
        }
        let back = Fourier::new(n, dim).inverse(&f, s);
        for (a, b) in back.iter().zip(&amps) {
            assert!((a - b).norm() < 1e-14);
        }
    }
}
