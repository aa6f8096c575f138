//! Presentation grammar.
//!
//! ```text
//! presentation := ["abelian"] "<" gens "|" [relators] ">"
//! gens         := name ("," name)*
//! relators     := word ("," word)*
//! word         := factor+
//! factor       := atom [["^"] ["-"] digits]
//! atom         := name | Name | name "'" | "(" word ")"
//! name         := [a-z][a-z0-9_]*
//! ```
//! A capitalized name or a trailing apostrophe denotes the inverse.
//! Generator names in words are matched greedily, longest first.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Letters are ±(index + 1); negative means inverse.
pub type Letter = i32;
pub type Word = Vec<Letter>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    pub abelian: bool,
}

pub fn invert(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

/// Cancels adjacent x x⁻¹ pairs.
pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Sort key placing a < a⁻¹ < b < b⁻¹ < …
pub fn letter_rank(l: Letter) -> (i32, bool) {
    (l.abs(), l < 0)
}

/// Alphabet S₊ ∪ S₋ in rank order.
pub fn alphabet(n: usize) -> Vec<Letter> {
    (1..=n as i32).flat_map(|g| [g, -g]).collect()
}

/// Rank of a letter within [`alphabet`], used as the edge color.
pub fn color(l: Letter) -> usize {
    2 * (l.unsigned_abs() as usize - 1) + usize::from(l < 0)
}

pub fn shortlex_less(a: &[Letter], b: &[Letter]) -> bool {
    if a.len() != b.len() {
        return a.len() < b.len();
    }
    a.iter().map(|&l| letter_rank(l)).lt(b.iter().map(|&l| letter_rank(l)))
}

/// Rotations of the word and of its inverse.
pub fn cyclic_variants(w: &[Letter]) -> Vec<Word> {
    let mut out = vec![];
    for base in [w.to_vec(), invert(w)] {
        for r in 0..base.len().max(1) {
            let mut v = base[r..].to_vec();
            v.extend_from_slice(&base[..r]);
            out.push(v);
        }
    }
    out
}

impl Presentation {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn letter_name(&self, l: Letter) -> String {
        let name = &self.generators[l.unsigned_abs() as usize - 1];
        if l > 0 {
            name.clone()
        } else if name.len() == 1 {
            name.to_uppercase()
        } else {
            format!("{name}'")
        }
    }

    pub fn word_string(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "e".into();
        }
        w.iter().map(|&l| self.letter_name(l)).collect()
    }

    /// Parses a word over this presentation's generators; "e" is the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let t = text.trim();
        if t == "e" || t == "1" || t.is_empty() {
            return Ok(vec![]);
        }
        let mut p = Parser { s: t.as_bytes(), pos: 0, gens: &self.generators };
        let w = p.word()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(free_reduce(&w))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.abelian {
            write!(f, "abelian ")?;
        }
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_string(r)).collect();
        write!(f, "<{}|{}>", self.generators.join(","), rels.join(","))
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    gens: &'a [String],
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn name(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        if !self.s.get(self.pos).is_some_and(|c| c.is_ascii_lowercase()) {
            return Err(self.err("expected a lowercase generator name"));
        }
        while self.s.get(self.pos).is_some_and(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || *c == b'_') {
            self.pos += 1;
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn word(&mut self) -> Result<Word> {
        let mut out = vec![];
        while let Some(c) = self.peek() {
            if c == b',' || c == b'>' || c == b')' {
                break;
            }
            out.extend(self.factor()?);
        }
        if out.is_empty() && self.peek() != Some(b')') {
            return Err(self.err("empty word"));
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Word> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let w = self.word()?;
            self.expect(b')')?;
            return Ok(w);
        }
        let start = self.pos;
        let rest = &self.s[self.pos..];
        let mut best: Option<(usize, usize, bool)> = None;
        for (g, name) in self.gens.iter().enumerate() {
            let nb = name.as_bytes();
            if rest.len() < nb.len() {
                continue;
            }
            let head = &rest[..nb.len()];
            let inv = if head == nb {
                false
            } else if head[0] == nb[0].to_ascii_uppercase() && head[1..] == nb[1..] {
                true
            } else {
                continue;
            };
            if best.is_none_or(|(_, len, _)| nb.len() > len) {
                best = Some((g, nb.len(), inv));
            }
        }
        let Some((g, len, mut inv)) = best else {
            let end = rest.iter().position(|c| !c.is_ascii_alphanumeric()).unwrap_or(rest.len()).max(1);
            return if rest.first().is_some_and(|c| c.is_ascii_alphabetic()) {
                Err(Error::UnknownGenerator(String::from_utf8_lossy(&rest[..end]).into_owned()))
            } else {
                Err(Error::Syntax { pos: start, msg: "expected a generator or '('".into() })
            };
        };
        self.pos += len;
        if self.s.get(self.pos) == Some(&b'\'') {
            self.pos += 1;
            inv = !inv;
        }
        let l = g as Letter + 1;
        Ok(vec![if inv { -l } else { l }])
    }

    fn factor(&mut self) -> Result<Word> {
        let base = self.atom()?;
        let mut exp: i64 = 1;
        let save = self.pos;
        let caret = self.s.get(self.pos) == Some(&b'^');
        if caret {
            self.pos += 1;
        }
        let neg = self.s.get(self.pos) == Some(&b'-');
        if neg {
            self.pos += 1;
        }
        let ds = self.pos;
        while self.s.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos > ds {
            exp = std::str::from_utf8(&self.s[ds..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| Error::Syntax { pos: ds, msg: "exponent too large".into() })?;
            if neg {
                exp = -exp;
            }
        } else if caret || neg {
            return Err(Error::Syntax { pos: ds, msg: "expected an exponent".into() });
        } else {
            self.pos = save;
        }
        let unit = if exp < 0 { invert(&base) } else { base };
        Ok(unit.repeat(exp.unsigned_abs() as usize))
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let trimmed = text.trim_start();
    let offset = text.len() - trimmed.len();
    let (abelian, body, offset) = match trimmed.strip_prefix("abelian") {
        Some(rest) => (true, rest, offset + 7),
        None => (false, trimmed, offset),
    };
    let mut p = Parser { s: body.as_bytes(), pos: 0, gens: &[] };
    let shift = |e: Error| match e {
        Error::Syntax { pos, msg } => Error::Syntax { pos: pos + offset, msg },
        other => other,
    };
    p.expect(b'<').map_err(shift)?;
    let mut generators = vec![p.name().map_err(shift)?];
    while p.peek() == Some(b',') {
        p.pos += 1;
        generators.push(p.name().map_err(shift)?);
    }
    for (i, g) in generators.iter().enumerate() {
        if generators[..i].contains(g) {
            return Err(Error::Syntax { pos: offset, msg: format!("duplicate generator {g}") });
        }
    }
    p.expect(b'|').map_err(shift)?;
    let mut relators = vec![];
    let mut p = Parser { s: body.as_bytes(), pos: p.pos, gens: &generators };
    if p.peek() != Some(b'>') {
        loop {
            let w = free_reduce(&p.word().map_err(shift)?);
            if !w.is_empty() {
                relators.push(w);
            }
            if p.peek() == Some(b',') {
                p.pos += 1;
            } else {
                break;
            }
        }
    }
    p.expect(b'>').map_err(shift)?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(shift(p.err("trailing input")));
    }
    Ok(Presentation { generators, relators, abelian })
}
