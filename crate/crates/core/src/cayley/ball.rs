//! Breadth-first Cayley-graph balls with shortlex-first labels.

use super::models::{Elem, Model};
use super::parse::{alphabet, color, Letter, Presentation, Word};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt::Write;

pub const DEFAULT_RADIUS_CAP: usize = 8;
pub const VERTEX_CAP: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub label: String,
    pub word: Word,
    pub distance: usize,
    /// Local system dimension s_g.
    pub s: usize,
    /// Every neighbor is inside the ball.
    pub complete: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub color: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CayleyBall {
    pub radius: usize,
    pub presentation: Presentation,
    /// Names of S₊ ∪ S₋; edge colors index this list.
    pub colors: Vec<String>,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    /// False when identification relies on bounded rewriting.
    pub identification_complete: bool,
    pub model: String,
}

pub fn build_ball(p: &Presentation, radius: usize) -> Result<CayleyBall> {
    build_ball_with(p, radius, DEFAULT_RADIUS_CAP, 1)
}

pub fn build_ball_with(p: &Presentation, radius: usize, cap: usize, s: usize) -> Result<CayleyBall> {
    if radius > cap {
        return Err(Error::CapExceeded { size: radius, cap });
    }
    let model = Model::for_presentation(p);
    let letters = alphabet(p.rank());
    let mut vertices = vec![Vertex { label: "e".into(), word: vec![], distance: 0, s, complete: true }];
    let mut elems: Vec<Elem> = vec![model.identity()];
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    index.insert(model.key(&elems[0]), 0);
    let mut edges = vec![];
    let mut head = 0;
    while head < vertices.len() {
        let (dist, word) = (vertices[head].distance, vertices[head].word.clone());
        let mut complete = true;
        for &l in &letters {
            let e = model.mul_letter(&elems[head], l);
            let key = model.key(&e);
            let to = match index.get(&key) {
                Some(&i) => Some(i),
                None if dist < radius => {
                    if vertices.len() >= VERTEX_CAP {
                        return Err(Error::CapExceeded { size: vertices.len() + 1, cap: VERTEX_CAP });
                    }
                    let mut w = word.clone();
                    w.push(l);
                    vertices.push(Vertex { label: p.word_string(&w), word: w, distance: dist + 1, s, complete: true });
                    elems.push(e);
                    index.insert(key, vertices.len() - 1);
                    Some(vertices.len() - 1)
                }
                None => None,
            };
            match to {
                Some(to) => edges.push(Edge { from: head, color: color(l), to }),
                None => complete = false,
            }
        }
        vertices[head].complete = complete;
        head += 1;
    }
    Ok(CayleyBall {
        radius,
        presentation: p.clone(),
        colors: letters.iter().map(|&l| p.letter_name(l)).collect(),
        vertices,
        edges,
        identification_complete: model.complete(),
        model: model.name().into(),
    })
}

impl CayleyBall {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex counts per distance.
    pub fn shells(&self) -> Vec<usize> {
        let mut out = vec![0; self.radius + 1];
        for v in &self.vertices {
            out[v.distance] += 1;
        }
        out
    }

    pub fn interior(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices.iter().enumerate().filter(|(_, v)| v.distance < self.radius).map(|(i, _)| i)
    }

    pub fn letter_of_color(c: usize) -> Letter {
        let g = (c / 2) as Letter + 1;
        if c % 2 == 0 {
            g
        } else {
            -g
        }
    }

    /// Target of the colored out-edge, if present.
    pub fn neighbor(&self, from: usize, color: usize) -> Option<usize> {
        self.edges.iter().find(|e| e.from == from && e.color == color).map(|e| e.to)
    }

    /// {vertices, colors, edges: [[from, color, to]]}.
    pub fn to_graph_json(&self) -> serde_json::Value {
        serde_json::json!({
            "radius": self.radius,
            "presentation": self.presentation.to_string(),
            "model": self.model,
            "identification_complete": self.identification_complete,
            "vertices": self.vertices.iter().map(|v| &v.label).collect::<Vec<_>>(),
            "colors": self.colors,
            "edges": self.edges.iter().map(|e| [e.from, e.color, e.to]).collect::<Vec<_>>(),
        })
    }

    pub fn to_dot(&self) -> String {
        const PALETTE: [&str; 8] = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"];
        let mut s = String::from("digraph cayley {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"{}\"];", v.label);
        }
        for e in &self.edges {
            // one arrow per generator pair: draw S₊ only
            if e.color % 2 == 0 {
                let col = PALETTE[(e.color / 2) % PALETTE.len()];
                let _ = writeln!(s, "  v{} -> v{} [color={col}, label=\"{}\"];", e.from, e.to, self.colors[e.color]);
            }
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::parse::parse_presentation;

    fn ball(s: &str, r: usize) -> CayleyBall {
        build_ball(&parse_presentation(s).unwrap(), r).unwrap()
    }

    #[test]
    fn sizes() {
        assert_eq!(ball("<a,b|abAB>", 3).len(), 25);
        assert_eq!(ball("<a,b|>", 2).len(), 17);
        assert_eq!(ball("abelian <h1,h2,h3,h4|h1h2h3h4>", 1).len(), 9);
    }

    #[test]
    fn growth() {
        for r in 0..=5 {
            let n = ball("<a,b|abAB>", r).len();
            assert_eq!(n, 2 * r * r + 2 * r + 1);
            let z3 = ball("<a,b,c|abAB,acAC,bcBC>", r).len();
            let expect = (2 * r + 1) * (2 * r * r + 2 * r + 3) / 3;
            assert_eq!(z3, expect);
        }
        let free = ball("<a,b|>", 4).shells();
        assert_eq!(free, vec![1, 4, 12, 36, 108]);
    }

    #[test]
    fn labels_are_shortlex_first() {
        let b = ball("<a,b|abAB>", 2);
        assert!(b.vertices.iter().any(|v| v.label == "ab"));
        assert!(!b.vertices.iter().any(|v| v.label == "ba"));
    }

    #[test]
    fn cap_and_exports() {
        assert!(build_ball(&parse_presentation("<a|>").unwrap(), 9).is_err());
        let b = ball("<a|>", 2);
        assert_eq!(b.to_graph_json()["edges"].as_array().unwrap().len(), 8);
        assert!(b.to_dot().contains("->"));
    }
}
