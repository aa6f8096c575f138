//! Normal forms for element identification.
//!
//! Free groups, finitely generated Abelian groups and the two small
//! virtually Abelian examples have exact models; hyperbolic von Dyck groups
//! ⟨a,b | a^p, b^q, (ab)^r⟩ use their faithful PSL(2,ℝ) representation.
//! Anything else falls back to bounded Dehn-style rewriting, which never
//! merges distinct elements but may miss identifications.

use super::parse::{cyclic_variants, free_reduce, invert, shortlex_less, Letter, Presentation, Word};
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq)]
pub enum Elem {
    Word(Word),
    Int(Vec<i64>),
    /// z ↦ iᵉ z + (x + i y).
    Affine { e: u8, x: i64, y: i64 },
    /// (m, n)·(m', n') = (m + m', n + (−1)^m n').
    Klein(i64, i64),
    Mat([f64; 4]),
}

#[derive(Debug, Clone)]
pub enum Model {
    Free,
    /// Rows of the Hermite normal form of the relation lattice.
    Abelian { rank: usize, hnf: Vec<Vec<i64>> },
    /// ⟨a,b | a⁴, b⁴, (ab)²⟩ with a(z) = iz, b(z) = iz + 1.
    P4,
    /// ⟨a,b | a²b⁻²⟩.
    Klein,
    Triangle { p: u32, q: u32, r: u32, a: [f64; 4], b: [f64; 4] },
    Dehn { rules: Vec<(Word, Word)> },
}

const MAT_SCALE: f64 = 1e6;

fn matmul(x: &[f64; 4], y: &[f64; 4]) -> [f64; 4] {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

fn matinv(x: &[f64; 4]) -> [f64; 4] {
    [x[3], -x[1], -x[2], x[0]]
}

fn pow_i(e: u8, x: i64, y: i64) -> (i64, i64) {
    (0..e % 4).fold((x, y), |(a, b), _| (-b, a))
}

/// Row Hermite normal form with positive pivots and reduced entries above.
pub fn hermite_normal_form(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let mut out = vec![];
    let mut col = 0;
    while col < n && !m.is_empty() {
        loop {
            let nz: Vec<usize> = (0..m.len()).filter(|&i| m[i][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| m[i][col].abs()).unwrap();
            for &i in &nz {
                if i != piv {
                    let f = m[i][col] / m[piv][col];
                    let prow = m[piv].clone();
                    for (a, b) in m[i].iter_mut().zip(&prow) {
                        *a -= f * b;
                    }
                }
            }
        }
        if let Some(i) = (0..m.len()).find(|&i| m[i][col] != 0) {
            let mut row = m.remove(i);
            if row[col] < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
            out.push(row);
        }
        m.retain(|r| r.iter().any(|&x| x != 0));
        col += 1;
    }
    for i in 0..out.len() {
        let pc = out[i].iter().position(|&x| x != 0).unwrap();
        for j in 0..i {
            let f = out[j][pc].div_euclid(out[i][pc]);
            let ri = out[i].clone();
            for (a, b) in out[j].iter_mut().zip(&ri) {
                *a -= f * b;
            }
        }
    }
    out
}

fn hnf_reduce(v: &mut [i64], hnf: &[Vec<i64>]) {
    for row in hnf {
        let pc = row.iter().position(|&x| x != 0).unwrap();
        let f = v[pc].div_euclid(row[pc]);
        for (a, b) in v.iter_mut().zip(row) {
            *a -= f * b;
        }
    }
}

fn exponent_sums(w: &[Letter], n: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    for &l in w {
        v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
    }
    v
}

fn matches_cyclic(w: &[Letter], target: &[Letter]) -> bool {
    cyclic_variants(w).iter().any(|v| v == target)
}

/// Matches {x^p, y^q, (xy)^r} in any order.
fn triangle_exponents(p: &Presentation) -> Option<(u32, u32, u32)> {
    if p.rank() != 2 || p.relators.len() != 3 {
        return None;
    }
    let power = |w: &Word, g: Letter| (w.iter().all(|&l| l == g) || w.iter().all(|&l| l == -g)).then_some(w.len() as u32);
    let pair = |w: &Word| {
        let len = w.len();
        (len % 2 == 0 && matches_cyclic(w, &[1, 2].repeat(len / 2))).then_some(len as u32 / 2)
    };
    let (mut ep, mut eq, mut er) = (None, None, None);
    for w in &p.relators {
        if let Some(e) = power(w, 1) {
            ep = Some(e);
        } else if let Some(e) = power(w, 2) {
            eq = Some(e);
        } else if let Some(e) = pair(w) {
            er = Some(e);
        }
    }
    Some((ep?, eq?, er?))
}

/// Rotations about i and i s² with tr(AB) = −2cos(π/r), which realizes
/// the orientation-preserving triangle group with angles π/p, π/q, π/r.
fn triangle_generators(p: u32, q: u32, r: u32) -> ([f64; 4], [f64; 4]) {
    let (al, be, ga) = (PI / p as f64, PI / q as f64, PI / r as f64);
    let t = 2.0 * (al.cos() * be.cos() + ga.cos()) / (al.sin() * be.sin());
    let s2 = (t + (t * t - 4.0).max(0.0).sqrt()) / 2.0;
    let a = [al.cos(), al.sin(), -al.sin(), al.cos()];
    let b = [be.cos(), s2 * be.sin(), -be.sin() / s2, be.cos()];
    (a, b)
}

fn dehn_rules(p: &Presentation) -> Vec<(Word, Word)> {
    let mut rules = vec![];
    for r in &p.relators {
        for v in cyclic_variants(r) {
            let n = v.len();
            for len in (n + 1) / 2..=n {
                let (u, rest) = v.split_at(len);
                let rhs = invert(rest);
                if len * 2 > n || shortlex_less(&rhs, u) {
                    let rule = (u.to_vec(), rhs);
                    if !rules.contains(&rule) {
                        rules.push(rule);
                    }
                }
            }
        }
    }
    rules.sort_by(|a, b| b.0.len().cmp(&a.0.len()));
    rules
}

fn rewrite(w: &[Letter], rules: &[(Word, Word)]) -> Word {
    let mut cur = free_reduce(w);
    'outer: loop {
        for (lhs, rhs) in rules {
            if lhs.len() > cur.len() {
                continue;
            }
            if let Some(pos) = cur.windows(lhs.len()).position(|win| win == lhs.as_slice()) {
                let mut next = cur[..pos].to_vec();
                next.extend_from_slice(rhs);
                next.extend_from_slice(&cur[pos + lhs.len()..]);
                cur = free_reduce(&next);
                continue 'outer;
            }
        }
        return cur;
    }
}

fn is_commutator(w: &[Letter], x: Letter, y: Letter) -> bool {
    matches_cyclic(w, &[x, y, -x, -y])
}

impl Model {
    /// Bounded rewriting from relator rotations only.
    pub fn dehn(p: &Presentation) -> Self {
        Model::Dehn { rules: dehn_rules(p) }
    }

    /// Picks the exact model that fits the presentation, else Dehn rewriting.
    pub fn for_presentation(p: &Presentation) -> Self {
        let n = p.rank();
        if p.relators.is_empty() {
            return Model::Free;
        }
        let all_commute = (1..=n as Letter)
            .all(|x| ((x + 1)..=n as Letter).all(|y| p.relators.iter().any(|w| is_commutator(w, x, y))));
        if p.abelian || all_commute {
            let rows: Vec<Vec<i64>> = p.relators.iter().map(|w| exponent_sums(w, n)).collect();
            return Model::Abelian { rank: n, hnf: hermite_normal_form(&rows, n) };
        }
        if n == 2 && p.relators.len() == 1 && matches_cyclic(&p.relators[0], &[1, 1, -2, -2]) {
            return Model::Klein;
        }
        if let Some((a, b, c)) = triangle_exponents(p) {
            if (a, b, c) == (4, 4, 2) {
                return Model::P4;
            }
            let (fa, fb, fc) = (a as f64, b as f64, c as f64);
            if 1.0 / fa + 1.0 / fb + 1.0 / fc < 1.0 {
                let (ma, mb) = triangle_generators(a, b, c);
                return Model::Triangle { p: a, q: b, r: c, a: ma, b: mb };
            }
        }
        Model::Dehn { rules: dehn_rules(p) }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Model::Free => "free",
            Model::Abelian { .. } => "abelian",
            Model::P4 => "p4",
            Model::Klein => "klein",
            Model::Triangle { .. } => "triangle",
            Model::Dehn { .. } => "dehn",
        }
    }

    /// Whether element identification is exact.
    pub fn complete(&self) -> bool {
        !matches!(self, Model::Dehn { .. })
    }

    pub fn identity(&self) -> Elem {
        match self {
            Model::Free | Model::Dehn { .. } => Elem::Word(vec![]),
            Model::Abelian { rank, .. } => Elem::Int(vec![0; *rank]),
            Model::P4 => Elem::Affine { e: 0, x: 0, y: 0 },
            Model::Klein => Elem::Klein(0, 0),
            Model::Triangle { .. } => Elem::Mat([1.0, 0.0, 0.0, 1.0]),
        }
    }

    /// e·l for one letter.
    pub fn mul_letter(&self, e: &Elem, l: Letter) -> Elem {
        match (self, e) {
            (Model::Free, Elem::Word(w)) => {
                let mut w = w.clone();
                if w.last() == Some(&-l) {
                    w.pop();
                } else {
                    w.push(l);
                }
                Elem::Word(w)
            }
            (Model::Dehn { rules }, Elem::Word(w)) => {
                let mut w = w.clone();
                w.push(l);
                Elem::Word(rewrite(&w, rules))
            }
            (Model::Abelian { hnf, .. }, Elem::Int(v)) => {
                let mut v = v.clone();
                v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
                hnf_reduce(&mut v, hnf);
                Elem::Int(v)
            }
            (Model::P4, Elem::Affine { e, x, y }) => {
                // g∘h with h(z) = iz (+1 for b), or the inverses −iz (+i for b⁻¹)
                let (he, hx, hy) = match l {
                    1 => (1, 0, 0),
                    -1 => (3, 0, 0),
                    2 => (1, 1, 0),
                    _ => (3, 0, 1),
                };
                let (rx, ry) = pow_i(*e, hx, hy);
                Elem::Affine { e: (e + he) % 4, x: x + rx, y: y + ry }
            }
            (Model::Klein, Elem::Klein(m, n)) => {
                let (m2, n2) = match l {
                    1 => (1, 0),
                    -1 => (-1, 0),
                    2 => (1, 1),
                    // (1,1)⁻¹ = (−1, 1)
                    _ => (-1, 1),
                };
                let s = if m.rem_euclid(2) == 0 { 1 } else { -1 };
                Elem::Klein(m + m2, n + s * n2)
            }
            (Model::Triangle { a, b, .. }, Elem::Mat(x)) => {
                let g = match l {
                    1 => *a,
                    -1 => matinv(a),
                    2 => *b,
                    _ => matinv(b),
                };
                Elem::Mat(matmul(x, &g))
            }
            _ => unreachable!("element does not belong to this model"),
        }
    }

    pub fn eval(&self, w: &[Letter]) -> Elem {
        w.iter().fold(self.identity(), |e, &l| self.mul_letter(&e, l))
    }

    pub fn mul(&self, a: &Elem, w: &[Letter]) -> Elem {
        w.iter().fold(a.clone(), |e, &l| self.mul_letter(&e, l))
    }

    /// Hashable canonical key; equal keys mean equal elements.
    pub fn key(&self, e: &Elem) -> Vec<i64> {
        match e {
            Elem::Word(w) => w.iter().map(|&l| l as i64).collect(),
            Elem::Int(v) => v.clone(),
            Elem::Affine { e, x, y } => vec![*e as i64, *x, *y],
            Elem::Klein(m, n) => vec![*m, *n],
            Elem::Mat(x) => {
                let lead = x.iter().find(|v| v.abs() > 1e-9).copied().unwrap_or(1.0);
                let s = lead.signum();
                x.iter().map(|v| (s * v * MAT_SCALE).round() as i64).collect()
            }
        }
    }
}
