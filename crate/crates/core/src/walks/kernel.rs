use super::trig::{content, theta_scale, TrigPoly};
use super::{Branch, Family, WalkSpec};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, WaveVector};
use crate::linalg::{c, dot, frob, identity, CMat};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Tolerance for every unitarity condition.
pub const UNITARITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct KernelEntry {
    /// Integer generator-basis coordinates, zero-padded.
    pub displacement: [i64; 3],
    pub matrix: CMat,
}

/// Finite map from displacement to transition matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionKernel {
    pub lattice: Lattice,
    pub components: usize,
    pub entries: Vec<KernelEntry>,
}

impl TransitionKernel {
    pub fn new(lattice: Lattice, components: usize, entries: Vec<KernelEntry>) -> Result<Self> {
        for e in &entries {
            if e.matrix.nrows() != components || e.matrix.ncols() != components {
                return Err(Error::ShapeMismatch(format!(
                    "transition matrix {}x{} in a kernel with s = {components}",
                    e.matrix.nrows(),
                    e.matrix.ncols()
                )));
            }
        }
        let mut k = Self { lattice, components, entries };
        k.entries.sort_by_key(|e| e.displacement);
        Ok(k)
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    /// Cartesian image of each displacement.
    pub fn cartesian(&self, e: &KernelEntry) -> [f64; 3] {
        self.lattice.to_cartesian(&e.displacement[..self.dim()])
    }

    pub fn get(&self, h: &[i64; 3]) -> Option<&CMat> {
        self.entries.iter().find(|e| &e.displacement == h).map(|e| &e.matrix)
    }

    /// Σ_h e^{−ik·h} A_h.
    pub fn symbol(&self, k: &WaveVector) -> Result<CMat> {
        if k.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: k.dim() });
        }
        let kk = k.padded();
        let mut acc = CMat::zeros(self.components, self.components);
        for e in &self.entries {
            let phase = Complex64::from_polar(1.0, -dot(&kk, &self.cartesian(e)));
            acc += &e.matrix * phase;
        }
        Ok(acc)
    }

    /// Largest |coordinate| in the support.
    pub fn radius(&self) -> i64 {
        self.entries
            .iter()
            .flat_map(|e| e.displacement.iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<EntryJson> = self
            .entries
            .iter()
            .map(|e| EntryJson {
                displacement: e.displacement,
                matrix: e.matrix.transpose().iter().map(|z| [z.re, z.im]).collect(),
            })
            .collect();
        serde_json::to_value(KernelJson { lattice: self.lattice, components: self.components, entries })
            .expect("kernel serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let kj: KernelJson = serde_json::from_value(v.clone())
            .map_err(|e| Error::InvalidArgument(format!("kernel json: {e}")))?;
        let s = kj.components;
        let mut entries = Vec::new();
        for e in kj.entries {
            if e.matrix.len() != s * s {
                return Err(Error::ShapeMismatch(format!(
                    "matrix has {} entries, expected {}",
                    e.matrix.len(),
                    s * s
                )));
            }
            let data: Vec<Complex64> = e.matrix.iter().map(|p| c(p[0], p[1])).collect();
            entries.push(KernelEntry {
                displacement: e.displacement,
                matrix: CMat::from_row_slice(s, s, &data),
            });
        }
        TransitionKernel::new(kj.lattice, s, entries)
    }
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    displacement: [i64; 3],
    /// Row-major s×s list of [re, im].
    matrix: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct KernelJson {
    lattice: Lattice,
    components: usize,
    entries: Vec<EntryJson>,
}

type PolyMatrix = Vec<Vec<TrigPoly>>;

fn weyl_poly(spec: &WalkSpec) -> PolyMatrix {
    let ct = content(spec.dim, spec.chirality);
    let u = TrigPoly::from_terms(&ct.u);
    let vx = TrigPoly::from_terms(&ct.v[0]);
    let vy = TrigPoly::from_terms(&ct.v[1]);
    let vz = TrigPoly::from_terms(&ct.v[2]);
    let mi = c(0.0, -1.0);
    // u I − i(v_x σ_x + v_y σ_y + v_z σ_z)
    let a00 = u.add(&vz.scale(mi));
    let a11 = u.add(&vz.scale(c(0.0, 1.0)));
    let a01 = vx.scale(mi).add(&vy.scale(c(-1.0, 0.0)));
    let a10 = vx.scale(mi).add(&vy);
    match spec.branch {
        Branch::A => vec![vec![a00, a01], vec![a10, a11]],
        Branch::B => vec![vec![a00, a10], vec![a01, a11]],
    }
}

fn dagger(m: &PolyMatrix) -> PolyMatrix {
    let s = m.len();
    (0..s).map(|i| (0..s).map(|j| m[j][i].conj()).collect()).collect()
}

fn dirac_poly(spec: &WalkSpec) -> PolyMatrix {
    let (n, m) = (spec.n(), spec.m());
    let im = TrigPoly::constant(c(0.0, m));
    if spec.dim == 1 {
        let q = spec.chirality.sign() as i32;
        let mut e = TrigPoly::default();
        if n != 0.0 {
            e.0.insert([q, 0, 0], c(n, 0.0));
        }
        return vec![vec![e.clone(), im.clone()], vec![im, e.conj()]];
    }
    let a = weyl_poly(&spec.weyl_part());
    let ad = dagger(&a);
    let zero = TrigPoly::default();
    let mut out = vec![vec![zero; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][j].scale(c(n, 0.0));
            out[i + 2][j + 2] = ad[i][j].scale(c(n, 0.0));
        }
        out[i][i + 2] = im.clone();
        out[i + 2][i] = im.clone();
    }
    out
}

/// Position-space kernel from the symbolic product-to-sum expansion.
///
/// A frequency vector ε of e^{iε·θ}, θ = k/√d, equals e^{−ik·h} with
/// h = −ε/√d, converted to integer generator coordinates.
pub fn position_kernel(spec: &WalkSpec) -> TransitionKernel {
    let poly = match spec.family {
        Family::Weyl => weyl_poly(spec),
        Family::Dirac => dirac_poly(spec),
    };
    let s = poly.len();
    let lattice = spec.lattice();
    let sc = theta_scale(spec.dim);
    let mut by_disp: BTreeMap<[i64; 3], CMat> = BTreeMap::new();
    for (i, row) in poly.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            for (eps, z) in &p.0 {
                let cart = [-(eps[0] as f64) * sc, -(eps[1] as f64) * sc, -(eps[2] as f64) * sc];
                let h = lattice
                    .integer_coords(&cart)
                    .expect("expansion frequencies land on lattice points");
                by_disp.entry(h).or_insert_with(|| CMat::zeros(s, s))[(i, j)] += z;
            }
        }
    }
    let entries = by_disp
        .into_iter()
        .filter(|(_, m)| m.iter().any(|z| *z != Complex64::new(0.0, 0.0)))
        .map(|(displacement, matrix)| KernelEntry { displacement, matrix })
        .collect();
    TransitionKernel::new(lattice, s, entries).expect("consistent shapes")
}

#[derive(Debug, Clone, Serialize)]
pub struct Condition {
    pub label: String,
    pub displacement: Option<[i64; 3]>,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct UnitarityReport {
    pub conditions: Vec<Condition>,
    pub max_residual: f64,
    pub pass: bool,
}

/// Bilinear unitarity conditions on the transition matrices:
/// Σ A_h†A_h = Σ A_h A_h† = I, and for every nonzero difference h'',
/// Σ_{h'−h=h''} A_h†A_{h'} = 0 and Σ_{h'−h=h''} A_{h'}A_h† = 0.
pub fn check_unitarity_conditions(kernel: &TransitionKernel) -> UnitarityReport {
    let s = kernel.components;
    let id = identity(s);
    let mut c1 = CMat::zeros(s, s);
    let mut c2 = CMat::zeros(s, s);
    let mut left: BTreeMap<[i64; 3], CMat> = BTreeMap::new();
    let mut right: BTreeMap<[i64; 3], CMat> = BTreeMap::new();
    for a in &kernel.entries {
        for b in &kernel.entries {
            let d = [
                b.displacement[0] - a.displacement[0],
                b.displacement[1] - a.displacement[1],
                b.displacement[2] - a.displacement[2],
            ];
            let l = a.matrix.adjoint() * &b.matrix;
            let r = &b.matrix * a.matrix.adjoint();
            if d == [0, 0, 0] {
                c1 += l;
                c2 += r;
            } else {
                *left.entry(d).or_insert_with(|| CMat::zeros(s, s)) += l;
                *right.entry(d).or_insert_with(|| CMat::zeros(s, s)) += r;
            }
        }
    }
    let mut conditions = vec![
        cond("sum A_h^dag A_h = I", None, frob(&(c1 - &id))),
        cond("sum A_h A_h^dag = I", None, frob(&(c2 - &id))),
    ];
    for (d, m) in &left {
        conditions.push(cond("sum A_h^dag A_h' = 0", Some(*d), frob(m)));
    }
    for (d, m) in &right {
        conditions.push(cond("sum A_h' A_h^dag = 0", Some(*d), frob(m)));
    }
    let max_residual = conditions.iter().map(|c| c.residual).fold(0.0, f64::max);
    let pass = !kernel.entries.is_empty() && conditions.iter().all(|c| c.pass);
    UnitarityReport { conditions, max_residual, pass }
}

fn cond(label: &str, displacement: Option<[i64; 3]>, residual: f64) -> Condition {
    Condition { label: label.to_string(), displacement, residual, pass: residual <= UNITARITY_TOL }
}
