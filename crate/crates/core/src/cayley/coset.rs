//! Reduction of a walk on a virtually Abelian group G to a walk on ℤ^d
//! with i_H-fold enlarged cells.
//!
//! Every g factors as g = t·r_j with t in the free Abelian subgroup H and
//! r_j a coset representative. With ψ_j(t) = ψ(t r_j) and the convention
//! ψ'(g) = Σ_h A_h ψ(g h⁻¹), the identity r_j h = t r_{j'} puts A_h into
//! block (j', j) at displacement t.

use super::models::{Elem, Model};
use super::parse::{parse_presentation, Presentation, Word};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, WaveVector};
use crate::linalg::{c, CMat};
use crate::walks::{KernelEntry, TransitionKernel};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const SEARCH_BOUND: i64 = 4;

/// Coset data as supplied by the user: words over the presentation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CosetSpec {
    pub presentation: String,
    pub subgroup: Vec<String>,
    pub representatives: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct CosetStructure {
    pub presentation: Presentation,
    pub subgroup: Vec<Word>,
    pub representatives: Vec<Word>,
    model: Model,
}

/// Kernel on G: one matrix per word (usually a generator).
#[derive(Debug, Clone)]
pub struct GroupKernel {
    pub components: usize,
    pub entries: Vec<(Word, CMat)>,
}

impl GroupKernel {
    pub fn scalar(entries: Vec<(Word, num_complex::Complex64)>) -> Self {
        Self { components: 1, entries: entries.into_iter().map(|(w, z)| (w, CMat::from_element(1, 1, z))).collect() }
    }
}

impl CosetStructure {
    pub fn from_spec(spec: &CosetSpec) -> Result<Self> {
        let presentation = parse_presentation(&spec.presentation)?;
        let words = |v: &[String]| v.iter().map(|s| presentation.parse_word(s)).collect::<Result<Vec<_>>>();
        let subgroup = words(&spec.subgroup)?;
        let representatives = words(&spec.representatives)?;
        Self::new(presentation, subgroup, representatives)
    }

    pub fn new(presentation: Presentation, subgroup: Vec<Word>, representatives: Vec<Word>) -> Result<Self> {
        if subgroup.is_empty() || subgroup.len() > 3 {
            return Err(Error::CosetFactorization(format!("need 1 to 3 subgroup generators, got {}", subgroup.len())));
        }
        if representatives.is_empty() {
            return Err(Error::CosetFactorization("no coset representatives".into()));
        }
        let model = Model::for_presentation(&presentation);
        let cs = Self { presentation, subgroup, representatives, model };
        for (i, a) in cs.subgroup.iter().enumerate() {
            for b in &cs.subgroup[i + 1..] {
                let ab = cs.model.mul(&cs.model.eval(a), b);
                let ba = cs.model.mul(&cs.model.eval(b), a);
                if cs.model.key(&ab) != cs.model.key(&ba) {
                    return Err(Error::CosetFactorization("subgroup generators do not commute".into()));
                }
            }
        }
        Ok(cs)
    }

    pub fn index(&self) -> usize {
        self.representatives.len()
    }

    pub fn rank(&self) -> usize {
        self.subgroup.len()
    }

    fn subgroup_element(&self, t: &[i64]) -> Elem {
        let mut e = self.model.identity();
        for (w, &n) in self.subgroup.iter().zip(t) {
            let unit = if n < 0 { super::parse::invert(w) } else { w.clone() };
            for _ in 0..n.abs() {
                e = self.model.mul(&e, &unit);
            }
        }
        e
    }

    fn exponent_grid(&self, bound: i64) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for _ in 0..self.rank() {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (-bound..=bound).map(move |n| {
                        let mut w = v.clone();
                        w.push(n);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// (t, j) with target = t·r_j, searched over |t_i| ≤ bound. Fails unless
    /// exactly one factorization exists.
    fn factor_elem(&self, target: &Elem, bound: i64) -> Result<(Vec<i64>, usize)> {
        let key = self.model.key(target);
        let mut found = vec![];
        for t in self.exponent_grid(bound) {
            let te = self.subgroup_element(&t);
            for (j, r) in self.representatives.iter().enumerate() {
                if self.model.key(&self.model.mul(&te, r)) == key {
                    found.push((t.clone(), j));
                }
            }
        }
        match found.len() {
            1 => Ok(found.pop().unwrap()),
            0 => Err(Error::CosetFactorization("no factorization within the search bound".into())),
            _ => Err(Error::CosetFactorization(format!("{} factorizations; cosets overlap", found.len()))),
        }
    }

    /// g = t·r_j for a word g.
    pub fn factor(&self, g: &[i32], bound: i64) -> Result<(Vec<i64>, usize)> {
        self.factor_elem(&self.model.eval(g), bound)
    }

    fn lattice(&self) -> Lattice {
        Lattice::Cubic(self.rank())
    }
}

fn place(blocks: &mut BTreeMap<[i64; 3], CMat>, disp: &[i64], row: usize, col: usize, a: &CMat, s: usize, dim: usize) {
    let mut d = [0i64; 3];
    d[..disp.len()].copy_from_slice(disp);
    let m = blocks.entry(d).or_insert_with(|| CMat::zeros(dim, dim));
    let mut view = m.view_mut((row * s, col * s), (s, s));
    view += a;
}

/// Induced kernel on ℤ^d with s·i_H components.
pub fn coset_reduce(kernel: &GroupKernel, cs: &CosetStructure) -> Result<TransitionKernel> {
    let (s, ih) = (kernel.components, cs.index());
    let dim = s * ih;
    let mut blocks = BTreeMap::new();
    for (j, r) in cs.representatives.iter().enumerate() {
        for (h, a) in &kernel.entries {
            if a.nrows() != s || a.ncols() != s {
                return Err(Error::ShapeMismatch(format!("kernel entry is {}x{}, expected {s}x{s}", a.nrows(), a.ncols())));
            }
            let target = cs.model.mul(&cs.model.eval(r), h);
            let (t, jp) = cs.factor_elem(&target, SEARCH_BOUND)?;
            place(&mut blocks, &t, jp, j, a, s, dim);
        }
    }
    let entries = blocks
        .into_iter()
        .map(|(displacement, matrix)| KernelEntry { displacement, matrix })
        .collect();
    TransitionKernel::new(cs.lattice(), dim, entries)
}

/// Induced symbol at k evaluated independently: r_{j'} h⁻¹ = t' r_j
/// contributes A_h e^{ik·t'} to block (j', j).
pub fn direct_symbol(kernel: &GroupKernel, cs: &CosetStructure, k: &WaveVector) -> Result<CMat> {
    let (s, ih) = (kernel.components, cs.index());
    if k.dim() != cs.rank() {
        return Err(Error::DimensionMismatch { expected: cs.rank(), got: k.dim() });
    }
    let kv = k.padded();
    let mut out = CMat::zeros(s * ih, s * ih);
    for (jp, r) in cs.representatives.iter().enumerate() {
        for (h, a) in &kernel.entries {
            let target = cs.model.mul(&cs.model.eval(r), &super::parse::invert(h));
            let (t, j) = cs.factor_elem(&target, SEARCH_BOUND)?;
            let phase: f64 = t.iter().zip(&kv).map(|(&ti, &ki)| ti as f64 * ki).sum();
            let mut view = out.view_mut((jp * s, j * s), (s, s));
            view += a * c(0.0, phase).exp();
        }
    }
    Ok(out)
}

/// The two virtually Abelian examples: index 2 (Klein-bottle group) and
/// index 4 (wallpaper group p4).
pub fn builtin_coset(name: &str) -> Result<CosetSpec> {
    let spec = |p: &str, h: &[&str], r: &[&str]| CosetSpec {
        presentation: p.into(),
        subgroup: h.iter().map(|s| s.to_string()).collect(),
        representatives: r.iter().map(|s| s.to_string()).collect(),
    };
    match name {
        "index2" | "klein" => Ok(spec("<a,b|a2b-2>", &["ba", "aa"], &["e", "a"])),
        "index4" | "p4" => Ok(spec("<a,b|a4,b4,(ab)2>", &["Ab", "bA"], &["e", "a", "aa", "aaa"])),
        "z2" => Ok(spec("<a,b|abAB>", &["a", "b"], &["e"])),
        other => Err(Error::InvalidArgument(format!("unknown coset structure {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walks::check_unitarity_conditions;
    use num_complex::Complex64;

    fn gens_kernel(cs: &CosetStructure) -> GroupKernel {
        let z = |re: f64, im: f64| Complex64::new(re, im);
        GroupKernel::scalar(vec![
            (cs.presentation.parse_word("a").unwrap(), z(0.3, 0.1)),
            (cs.presentation.parse_word("A").unwrap(), z(-0.2, 0.4)),
            (cs.presentation.parse_word("b").unwrap(), z(0.5, -0.3)),
            (cs.presentation.parse_word("B").unwrap(), z(0.1, 0.7)),
        ])
    }

    #[test]
    fn index_one_is_identity() {
        let cs = CosetStructure::from_spec(&builtin_coset("z2").unwrap()).unwrap();
        let k = coset_reduce(&gens_kernel(&cs), &cs).unwrap();
        assert_eq!(k.components, 1);
        let d: Vec<[i64; 3]> = k.entries.iter().map(|e| e.displacement).collect();
        assert_eq!(d, vec![[-1, 0, 0], [0, -1, 0], [0, 1, 0], [1, 0, 0]]);
        assert_eq!(k.get(&[1, 0, 0]).unwrap()[(0, 0)], Complex64::new(0.3, 0.1));
    }

    #[test]
    fn reduction_matches_direct_symbol() {
        for name in ["index2", "index4"] {
            let cs = CosetStructure::from_spec(&builtin_coset(name).unwrap()).unwrap();
            let gk = gens_kernel(&cs);
            let kern = coset_reduce(&gk, &cs).unwrap();
            assert_eq!(kern.components, cs.index());
            for k in [[0.3, -1.2], [2.0, 0.7], [-0.4, 0.0]] {
                let k = WaveVector::d2(k[0], k[1]);
                let diff = (kern.symbol(&k).unwrap() - direct_symbol(&gk, &cs, &k).unwrap()).norm();
                assert!(diff < 1e-12, "{name}: {diff}");
            }
        }
    }

    #[test]
    fn translation_kernel_stays_unitary() {
        let cs = CosetStructure::from_spec(&builtin_coset("index4").unwrap()).unwrap();
        let gk = GroupKernel::scalar(vec![(vec![1], Complex64::from_polar(1.0, 0.4))]);
        assert!(check_unitarity_conditions(&coset_reduce(&gk, &cs).unwrap()).pass);
        assert!(!check_unitarity_conditions(&coset_reduce(&gens_kernel(&cs), &cs).unwrap()).pass);
    }

    #[test]
    fn factorization_errors() {
        let bad = CosetSpec { representatives: vec!["e".into()], ..builtin_coset("index2").unwrap() };
        let cs = CosetStructure::from_spec(&bad).unwrap();
        assert!(matches!(coset_reduce(&gens_kernel(&cs), &cs), Err(Error::CosetFactorization(_))));
        let overlap = CosetSpec { representatives: vec!["e".into(), "ba".into()], ..builtin_coset("index2").unwrap() };
        let cs = CosetStructure::from_spec(&overlap).unwrap();
        assert!(coset_reduce(&gens_kernel(&cs), &cs).is_err());
    }
}
