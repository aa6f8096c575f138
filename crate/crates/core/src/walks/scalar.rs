use super::kernel::{check_unitarity_conditions, KernelEntry, TransitionKernel};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::CMat;
use num_complex::Complex64;
use serde::Serialize;
use std::collections::HashMap;

pub const DEFAULT_SCALAR_CAP: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct ScalarSolutions {
    /// Displacements h for which A = e^{iφ} T_h solves the conditions.
    pub single_term: Vec<[i64; 3]>,
    /// Nonzero patterns no pair-counting argument excluded.
    pub undecided: Vec<Vec<[i64; 3]>>,
    pub patterns_examined: usize,
}

impl ScalarSolutions {
    pub fn only_trivial(&self) -> bool {
        self.undecided.is_empty() && !self.single_term.is_empty()
    }
}

/// Enumerates the s = 1 solutions of the unitarity conditions on `support`.
///
/// For each nonzero pattern P the cross condition at difference h'' reads
/// Σ_{h'−h=h''} conj(a_h) a_{h'} = 0; a difference realized by exactly one
/// pair forces a product of two nonzero numbers to vanish, so P is
/// infeasible. Single-element patterns are checked against all conditions
/// with a unimodular coefficient.
pub fn scalar_walk_solutions(support: &[[i64; 3]], cap: usize) -> Result<ScalarSolutions> {
    let n = support.len();
    if n > cap || n >= 63 {
        return Err(Error::SupportTooLarge { size: n, cap });
    }
    let mut out = ScalarSolutions { single_term: vec![], undecided: vec![], patterns_examined: 0 };
    for mask in 1u64..(1u64 << n) {
        out.patterns_examined += 1;
        let pat: Vec<[i64; 3]> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| support[i]).collect();
        if pat.len() == 1 {
            let phase = Complex64::from_polar(1.0, 0.7);
            let k = TransitionKernel::new(
                Lattice::Cubic(3),
                1,
                vec![KernelEntry { displacement: pat[0], matrix: CMat::from_element(1, 1, phase) }],
            )?;
            if check_unitarity_conditions(&k).pass {
                out.single_term.push(pat[0]);
            }
            continue;
        }
        let mut counts: HashMap<[i64; 3], usize> = HashMap::new();
        for a in &pat {
            for b in &pat {
                if a != b {
                    *counts.entry([b[0] - a[0], b[1] - a[1], b[2] - a[2]]).or_default() += 1;
                }
            }
        }
        if !counts.values().any(|&c| c == 1) {
            out.undecided.push(pat);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_support() {
        let s = scalar_walk_solutions(&[[-1, 0, 0], [0, 0, 0], [1, 0, 0]], DEFAULT_SCALAR_CAP).unwrap();
        assert_eq!(s.single_term.len(), 3);
        assert!(s.only_trivial());
        assert_eq!(s.patterns_examined, 7);
    }

    #[test]
    fn empty_support_has_no_solution() {
        let s = scalar_walk_solutions(&[], DEFAULT_SCALAR_CAP).unwrap();
        assert!(s.single_term.is_empty() && !s.only_trivial());
    }

    #[test]
    fn cap_is_enforced() {
        let big: Vec<[i64; 3]> = (0..25).map(|i| [i, 0, 0]).collect();
        assert!(matches!(
            scalar_walk_solutions(&big, DEFAULT_SCALAR_CAP),
            Err(Error::SupportTooLarge { .. })
        ));
    }
}
