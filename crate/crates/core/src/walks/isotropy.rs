use super::kernel::TransitionKernel;
use crate::error::{Error, Result};
use crate::linalg::{frob, identity, kron, pauli, unitarity_residual, CMat, I};
use serde::Serialize;

/// One element l of the isotropy group: a permutation of S₊ and U_l.
#[derive(Debug, Clone)]
pub struct RepElement {
    /// `perm[i] = j` means l(h_i) = h_j; inverses follow, l(h⁻¹) = l(h)⁻¹.
    pub perm: Vec<usize>,
    pub u: CMat,
}

#[derive(Debug, Clone)]
pub struct IsotropyRep {
    pub s_plus: Vec<[i64; 3]>,
    pub elements: Vec<RepElement>,
}

/// Binary rotations about the coordinate axes acting on h1..h4 with
/// {I, iσ_x, iσ_y, iσ_z}.
pub fn binary_rotation_rep() -> IsotropyRep {
    let el = |perm: [usize; 4], u: CMat| RepElement { perm: perm.to_vec(), u };
    IsotropyRep {
        s_plus: crate::lattice::Lattice::Bcc.generators(),
        elements: vec![
            el([0, 1, 2, 3], identity(2)),
            el([1, 0, 3, 2], pauli(0) * I),
            el([2, 3, 0, 1], pauli(1) * I),
            el([3, 2, 1, 0], pauli(2) * I),
        ],
    }
}

impl IsotropyRep {
    pub fn identity_only(s_plus: Vec<[i64; 3]>) -> Self {
        let n = s_plus.len();
        IsotropyRep { s_plus, elements: vec![RepElement { perm: (0..n).collect(), u: identity(2) }] }
    }

    fn image(&self, perm: &[usize], h: &[i64; 3]) -> Option<[i64; 3]> {
        if *h == [0, 0, 0] {
            return Some(*h);
        }
        let neg = |v: &[i64; 3]| [-v[0], -v[1], -v[2]];
        for (i, g) in self.s_plus.iter().enumerate() {
            if g == h {
                return Some(self.s_plus[perm[i]]);
            }
            if neg(g) == *h {
                return Some(neg(&self.s_plus[perm[i]]));
            }
        }
        None
    }

    /// Whether the permutations act transitively on S₊.
    pub fn is_transitive(&self) -> bool {
        let n = self.s_plus.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for e in &self.elements {
                let j = e.perm[i];
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    /// Largest deviation from a projective representation: each product
    /// U_a U_b must equal a phase times U_c for the composed permutation.
    pub fn closure_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in &self.elements {
            for b in &self.elements {
                let perm: Vec<usize> = b.perm.iter().map(|&i| a.perm[i]).collect();
                let Some(cel) = self.elements.iter().find(|e| e.perm == perm) else {
                    return f64::INFINITY;
                };
                let prod = &a.u * &b.u;
                let s = prod.nrows() as f64;
                let lambda = (cel.u.adjoint() * &prod).trace() / s;
                let r = frob(&(prod - &cel.u * lambda)) + (lambda.norm() - 1.0).abs();
                worst = worst.max(r);
            }
        }
        worst
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IsotropyReport {
    pub conjugation_residual: f64,
    pub unitarity_residual: f64,
    pub closure_residual: f64,
    pub transitive: bool,
    pub pass: bool,
}

/// Checks A_{l(h)} = U_l A_h U_l† for every element and h ∈ S ∪ {0},
/// together with transitivity on S₊. For s > dim U the representation acts
/// block-diagonally.
pub fn check_isotropy(kernel: &TransitionKernel, rep: &IsotropyRep) -> Result<IsotropyReport> {
    let s = kernel.components;
    let ident = RepElement { perm: (0..rep.s_plus.len()).collect(), u: identity(2) };
    for e in &kernel.entries {
        if rep.image(&ident.perm, &e.displacement).is_none() {
            return Err(Error::InvalidArgument(format!(
                "displacement {:?} outside the generator set: permutation does not preserve support",
                e.displacement
            )));
        }
    }
    let zero = CMat::zeros(s, s);
    let mut conj: f64 = 0.0;
    let mut unit: f64 = 0.0;
    for el in &rep.elements {
        let du = el.u.nrows();
        if s % du != 0 {
            return Err(Error::ShapeMismatch(format!("U of size {du} cannot act on s = {s}")));
        }
        let u = kron(&identity(s / du), &el.u);
        unit = unit.max(unitarity_residual(&u));
        let mut support: Vec<[i64; 3]> = vec![[0, 0, 0]];
        for g in &rep.s_plus {
            support.push(*g);
            support.push([-g[0], -g[1], -g[2]]);
        }
        for h in &support {
            let lh = rep.image(&el.perm, h).expect("support element");
            let a = kernel.get(h).unwrap_or(&zero);
            let b = kernel.get(&lh).unwrap_or(&zero);
            conj = conj.max(frob(&(b - &u * a * u.adjoint())));
        }
    }
    let transitive = rep.is_transitive();
    let closure = rep.closure_residual();
    let pass = conj <= 1e-12 && unit <= 1e-12 && closure <= 1e-12 && transitive;
    Ok(IsotropyReport {
        conjugation_residual: conj,
        unitarity_residual: unit,
        closure_residual: closure,
        transitive,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walks::{position_kernel, Branch, Chirality, WalkSpec};

    #[test]
    fn bcc_walks_are_isotropic() {
        let rep = binary_rotation_rep();
        for ch in [Chirality::Plus, Chirality::Minus] {
            for br in [Branch::A, Branch::B] {
                let w = position_kernel(&WalkSpec::weyl(3, ch, br).unwrap());
                let r = check_isotropy(&w, &rep).unwrap();
                assert!(r.pass, "{ch:?} {br:?} {r:?}");
                let d = position_kernel(&WalkSpec::dirac(3, ch, br, 0.3).unwrap());
                assert!(check_isotropy(&d, &rep).unwrap().pass);
            }
        }
    }

    #[test]
    fn identity_rep_is_not_transitive() {
        let w = position_kernel(&WalkSpec::weyl_plus(3));
        let rep = IsotropyRep::identity_only(crate::lattice::Lattice::Bcc.generators());
        let r = check_isotropy(&w, &rep).unwrap();
        assert!(!r.transitive && !r.pass);
    }

    #[test]
    fn swapped_matrices_break_covariance() {
        let mut w = position_kernel(&WalkSpec::weyl_plus(3));
        let i1 = w.entries.iter().position(|e| e.displacement == [1, 0, 0]).unwrap();
        let i2 = w.entries.iter().position(|e| e.displacement == [0, 1, 0]).unwrap();
        let tmp = w.entries[i1].matrix.clone();
        w.entries[i1].matrix = w.entries[i2].matrix.clone();
        w.entries[i2].matrix = tmp;
        assert!(!check_isotropy(&w, &binary_rotation_rep()).unwrap().pass);
    }
}
