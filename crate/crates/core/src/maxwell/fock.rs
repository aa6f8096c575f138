//! Fermionic Fock-space oracle for the pair operators
//! ε^i = (1/√2) Σ_q f_q Σ_ab (u^i·σ)_ab φ_{q,a} ψ_{q,b}.
//!
//! Basis states are occupation bitmasks; ladder operators carry the
//! Jordan–Wigner sign (−1)^(occupied modes below). Expectations are taken
//! by applying operators to sparse kets, so no mode count beyond 64 is
//! ever materialized as a dense space.

use crate::error::{Error, Result};
use crate::linalg::{sigma_dot, Vec3};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;

/// Largest mode count for the explicit full-space anticommutator check.
pub const FULL_SPACE_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Species {
    Phi,
    Psi,
}

#[derive(Debug, Clone)]
pub struct FockCheckConfig {
    /// Modes per species, two spin states per momentum.
    pub modes_per_species: usize,
    /// Momenta in the smearing region; uses 2·n_k modes of each species.
    pub n_k: usize,
    /// Occupied (species, mode) pairs of the test state.
    pub occupied: Vec<(Species, usize)>,
    pub polarization: [Vec3; 2],
}

impl FockCheckConfig {
    pub fn new(modes_per_species: usize, n_k: usize) -> Self {
        Self { modes_per_species, n_k, occupied: vec![], polarization: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]] }
    }

    pub fn with_occupied(mut self, occupied: Vec<(Species, usize)>) -> Self {
        self.occupied = occupied;
        self
    }

    pub fn total_modes(&self) -> usize {
        2 * self.modes_per_species
    }

    fn index(&self, s: Species, mode: usize) -> usize {
        match s {
            Species::Phi => mode,
            Species::Psi => self.modes_per_species + mode,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.total_modes() > 64 {
            return Err(Error::CapExceeded { size: self.total_modes(), cap: 64 });
        }
        if self.n_k == 0 || 2 * self.n_k > self.modes_per_species {
            return Err(Error::InvalidArgument(format!(
                "n_k = {} needs 2·n_k ≤ {} modes per species",
                self.n_k, self.modes_per_species
            )));
        }
        for &(_, m) in &self.occupied {
            if m >= self.modes_per_species {
                return Err(Error::InvalidArgument(format!("mode {m} out of range")));
            }
        }
        Ok(())
    }
}

type Ket = BTreeMap<u64, Complex64>;

fn sign_below(b: u64, j: usize) -> f64 {
    if (b & ((1u64 << j) - 1)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn annihilate(j: usize, b: u64) -> Option<(u64, f64)> {
    (b >> j & 1 == 1).then(|| (b ^ (1 << j), sign_below(b, j)))
}

fn create(j: usize, b: u64) -> Option<(u64, f64)> {
    (b >> j & 1 == 0).then(|| (b | (1 << j), sign_below(b, j)))
}

/// Σ coef · op₁ op₂ |ket⟩ where op₂ acts first.
fn apply_pairs(ket: &Ket, terms: &[(Complex64, [(bool, usize); 2])]) -> Ket {
    let mut out = Ket::new();
    for (&b, &amp) in ket {
        for (coef, ops) in terms {
            let step = |(dag, j): (bool, usize), b: u64| if dag { create(j, b) } else { annihilate(j, b) };
            let Some((b1, s1)) = step(ops[1], b) else { continue };
            let Some((b2, s2)) = step(ops[0], b1) else { continue };
            *out.entry(b2).or_default() += amp * coef * (s1 * s2);
        }
    }
    out.retain(|_, v| *v != Complex64::default());
    out
}

fn inner(a: &Ket, b: &Ket) -> Complex64 {
    a.iter().filter_map(|(k, x)| b.get(k).map(|y| x.conj() * y)).sum()
}

/// Terms of ε^i (dag = false) or ε^i† (dag = true).
fn pair_terms(cfg: &FockCheckConfig, u: &Vec3, dag: bool) -> Vec<(Complex64, [(bool, usize); 2])> {
    let t = sigma_dot(u);
    let f = 1.0 / (cfg.n_k as f64).sqrt();
    let norm = f / 2f64.sqrt();
    let mut out = vec![];
    for q in 0..cfg.n_k {
        for a in 0..2 {
            for b in 0..2 {
                let phi = cfg.index(Species::Phi, 2 * q + a);
                let psi = cfg.index(Species::Psi, 2 * q + b);
                let coef = t[(a, b)] * norm;
                if dag {
                    // (φψ)† = ψ†φ†
                    out.push((coef.conj(), [(true, psi), (true, phi)]));
                } else {
                    out.push((coef, [(false, phi), (false, psi)]));
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct FockReport {
    /// |⟨[ε^i, ε^j†]⟩ − δ_ij|.
    pub deviation: [[f64; 2]; 2],
    pub max_deviation: f64,
    pub total_modes: usize,
}

/// ⟨s|[ε^i, ε^j†]|s⟩ − δ_ij on the configured occupation state.
pub fn fock_commutator_check(cfg: &FockCheckConfig) -> Result<FockReport> {
    cfg.validate()?;
    let mut b0 = 0u64;
    for &(s, m) in &cfg.occupied {
        b0 |= 1 << cfg.index(s, m);
    }
    let state: Ket = [(b0, Complex64::new(1.0, 0.0))].into_iter().collect();
    let eps: Vec<Ket> = cfg.polarization.iter().map(|u| apply_pairs(&state, &pair_terms(cfg, u, false))).collect();
    let eps_dag: Vec<Ket> = cfg.polarization.iter().map(|u| apply_pairs(&state, &pair_terms(cfg, u, true))).collect();
    let mut deviation = [[0.0; 2]; 2];
    let mut max_deviation: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            // ⟨ε^i ε^j†⟩ = ⟨ε^i† s | ε^j† s⟩, ⟨ε^j† ε^i⟩ = ⟨ε^j s | ε^i s⟩
            let val = inner(&eps_dag[i], &eps_dag[j]) - inner(&eps[j], &eps[i]);
            let d = (val - if i == j { 1.0 } else { 0.0 }).norm();
            deviation[i][j] = d;
            max_deviation = max_deviation.max(d);
        }
    }
    Ok(FockReport { deviation, max_deviation, total_modes: cfg.total_modes() })
}

/// Checks {a_i, a_j†} = δ_ij on every basis state of the full space with
/// integer signs. Returns the number of (i, j, state) triples checked.
pub fn check_anticommutators(total_modes: usize) -> Result<u64> {
    if total_modes > FULL_SPACE_CAP {
        return Err(Error::CapExceeded { size: total_modes, cap: FULL_SPACE_CAP });
    }
    let dim = 1u64 << total_modes;
    let mut checked = 0;
    for b in 0..dim {
        for i in 0..total_modes {
            for j in 0..total_modes {
                // a_i a_j† |b⟩ + a_j† a_i |b⟩ as a signed map onto one state
                let mut acc: BTreeMap<u64, i32> = BTreeMap::new();
                if let Some((b1, s1)) = create(j, b) {
                    if let Some((b2, s2)) = annihilate(i, b1) {
                        *acc.entry(b2).or_default() += (s1 * s2) as i32;
                    }
                }
                if let Some((b1, s1)) = annihilate(i, b) {
                    if let Some((b2, s2)) = create(j, b1) {
                        *acc.entry(b2).or_default() += (s1 * s2) as i32;
                    }
                }
                acc.retain(|_, v| *v != 0);
                let ok = if i == j { acc.len() == 1 && acc.get(&b) == Some(&1) } else { acc.is_empty() };
                if !ok {
                    return Err(Error::InvalidArgument(format!("anticommutator fails at i={i}, j={j}, state={b:#b}")));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}
