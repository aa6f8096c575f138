//! Graph-level homogeneity conditions H1–H5 on the interior of a ball.

use super::ball::CayleyBall;
use super::parse::color;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub pass: bool,
    /// Interior vertices where the condition fails.
    pub failures: Vec<usize>,
}

impl Check {
    fn from(mut failures: Vec<usize>) -> Self {
        failures.sort_unstable();
        failures.dedup();
        Check { pass: failures.is_empty(), failures }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HomogeneityReport {
    pub interior: usize,
    /// Same local dimension s.
    pub h1: Check,
    /// Regular: in- and out-degree |S₊ ∪ S₋|.
    pub h2: Check,
    /// Each color appears exactly once among out-edges.
    pub h3: Check,
    /// Every edge g → g' of color h has a reverse edge of color h⁻¹.
    pub h4: Check,
    /// Relator loops close from every vertex where they stay in the ball.
    pub h5: Check,
    /// Relator walks that left the ball and were skipped.
    pub h5_skipped: usize,
}

impl HomogeneityReport {
    pub fn pass(&self) -> bool {
        self.h1.pass && self.h2.pass && self.h3.pass && self.h4.pass && self.h5.pass
    }
}

pub fn check_homogeneity(ball: &CayleyBall) -> HomogeneityReport {
    let nc = ball.colors.len();
    let nv = ball.vertices.len();
    let interior: Vec<usize> = ball.interior().collect();
    let mut out_adj: Vec<Vec<Option<usize>>> = vec![vec![None; nc]; nv];
    let mut out_count = vec![vec![0usize; nc]; nv];
    let mut in_deg = vec![0usize; nv];
    for e in &ball.edges {
        out_adj[e.from][e.color] = Some(e.to);
        out_count[e.from][e.color] += 1;
        in_deg[e.to] += 1;
    }
    let s0 = ball.vertices.first().map_or(1, |v| v.s);
    let h1 = Check::from(interior.iter().copied().filter(|&v| ball.vertices[v].s != s0).collect());
    let h2 = Check::from(
        interior
            .iter()
            .copied()
            .filter(|&v| out_count[v].iter().sum::<usize>() != nc || in_deg[v] != nc)
            .collect(),
    );
    let h3 = Check::from(interior.iter().copied().filter(|&v| out_count[v].iter().any(|&c| c != 1)).collect());
    let inv = |c: usize| c ^ 1;
    let mut h4f = vec![];
    for e in &ball.edges {
        if ball.vertices[e.from].distance < ball.radius && out_adj[e.to][inv(e.color)] != Some(e.from) {
            h4f.push(e.from);
        }
    }
    let h4 = Check::from(h4f);
    let mut h5f = vec![];
    let mut skipped = 0;
    for &v in &interior {
        for r in &ball.presentation.relators {
            let mut cur = v;
            let mut left = false;
            for &l in r {
                match out_adj[cur][color(l)] {
                    Some(n) => cur = n,
                    None => {
                        if ball.vertices[cur].distance < ball.radius {
                            h5f.push(v);
                        }
                        left = true;
                        break;
                    }
                }
            }
            if left {
                skipped += 1;
            } else if cur != v {
                h5f.push(v);
            }
        }
    }
    HomogeneityReport { interior: interior.len(), h1, h2, h3, h4, h5: Check::from(h5f), h5_skipped: skipped }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::ball::build_ball;
    use crate::cayley::parse::parse_presentation;

    #[test]
    fn builtins_pass() {
        for (s, r) in [
            ("<a,b|abAB>", 3),
            ("<a,b|>", 3),
            ("abelian <h1,h2,h3,h4|h1h2h3h4>", 2),
            ("<a,b|a4,b4,(ab)2>", 4),
            ("<a,b|a2b-2>", 4),
            ("<a,b|a5,b5,(ab)2>", 3),
        ] {
            let rep = check_homogeneity(&build_ball(&parse_presentation(s).unwrap(), r).unwrap());
            assert!(rep.pass(), "{s}: {rep:?}");
        }
    }

    #[test]
    fn deleted_edge_breaks_regularity() {
        let mut b = build_ball(&parse_presentation("<a,b|abAB>").unwrap(), 3).unwrap();
        let pos = b.edges.iter().position(|e| e.from == 0).unwrap();
        let e = b.edges.remove(pos);
        let rep = check_homogeneity(&b);
        assert_eq!(rep.h2.failures, {
            let mut v = vec![e.from, e.to];
            v.sort();
            v
        });
        assert!(!rep.pass());
    }
}
