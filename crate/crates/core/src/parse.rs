//! Parsers for untrusted text input: polynomials, graph files, poset JSON.
//!
//! Every entry point here returns a `Result` and never panics on malformed
//! input; the fuzz targets under `fuzz/` hold them to that.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::monomial::Monomial;
use crate::polynomial::{Polynomial, Ring};
use crate::sequences::Poset;

/// Upper bound on vertex counts accepted from files.
pub const MAX_GRAPH_VERTICES: usize = crate::monomial::MAX_VARS / 2;

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(1, format!("expected a number at offset {start}")));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse::<u64>().ok())
            .ok_or_else(|| Error::parse(1, "number out of range"))
    }
}

fn variable_index(ring: Ring, letter: u8, idx: u64) -> Result<usize> {
    let n = ring.nvars();
    let idx = usize::try_from(idx).map_err(|_| Error::parse(1, "variable index out of range"))?;
    if idx == 0 {
        return Err(Error::parse(1, "variable indices are 1-based"));
    }
    match letter {
        b'v' if idx <= n => Ok(idx - 1),
        b'x' | b'y' if n.is_multiple_of(2) && idx <= n / 2 => {
            Ok(if letter == b'x' { idx - 1 } else { n / 2 + idx - 1 })
        }
        _ => Err(Error::parse(
            1,
            format!("variable {}{} not in a ring with {} variables", letter as char, idx, n),
        )),
    }
}

pub fn parse_polynomial(ring: Ring, s: &str) -> Result<Polynomial> {
    let k = ring.field();
    let mut cur = Cursor {
        s: s.as_bytes(),
        pos: 0,
    };
    let mut terms: Vec<(Monomial, u32)> = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        match cur.peek() {
            None if first => return Err(Error::parse(1, "empty polynomial")),
            None => break,
            Some(b'+') => cur.pos += 1,
            Some(b'-') => {
                negative = true;
                cur.pos += 1
            }
            Some(_) if first => {}
            Some(c) => return Err(Error::parse(1, format!("unexpected `{}`", c as char))),
        }
        // unary signs, as in `a + -b`
        while let Some(c @ (b'+' | b'-')) = cur.peek() {
            negative ^= c == b'-';
            cur.pos += 1;
        }
        first = false;
        let mut coeff = 1u32;
        let mut exps = vec![0u32; ring.nvars()];
        let mut factors = 0;
        loop {
            match cur.peek() {
                Some(b'*') if factors > 0 => {
                    cur.pos += 1;
                    continue;
                }
                Some(c) if c.is_ascii_digit() => {
                    let v = cur.number()?;
                    coeff = k.mul(coeff, (v % k.modulus() as u64) as u32);
                }
                Some(c @ (b'x' | b'y' | b'v')) => {
                    cur.pos += 1;
                    let idx = cur.number()?;
                    let var = variable_index(ring, c, idx)?;
                    let mut e = 1u64;
                    if cur.peek() == Some(b'^') {
                        cur.pos += 1;
                        e = cur.number()?;
                    }
                    let slot = &mut exps[var];
                    *slot = slot
                        .checked_add(u32::try_from(e).map_err(|_| Error::ExponentOverflow)?)
                        .ok_or(Error::ExponentOverflow)?;
                }
                _ => break,
            }
            factors += 1;
        }
        if factors == 0 {
            return Err(Error::parse(1, "expected a term"));
        }
        let m = Monomial::from_exponents(&exps)?;
        terms.push((m, if negative { k.neg(coeff) } else { coeff }));
    }
    Ok(Polynomial::from_terms(ring, terms))
}

/// Parses the plain-text graph format: first line `n`, then one `i j` pair per
/// line (1-based). Blank lines and `#` comments are ignored.
pub fn parse_graph_text(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (ln, first) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing vertex count"))?;
    let n: usize = first
        .parse()
        .map_err(|_| Error::parse(ln, format!("bad vertex count `{first}`")))?;
    if n > MAX_GRAPH_VERTICES {
        return Err(Error::parse(ln, format!("at most {MAX_GRAPH_VERTICES} vertices supported")));
    }
    let mut edges = Vec::new();
    for (ln, line) in lines {
        let mut it = line.split_whitespace();
        let parse_v = |t: Option<&str>| -> Result<usize> {
            t.and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::parse(ln, format!("bad edge line `{line}`")))
        };
        let a = parse_v(it.next())?;
        let b = parse_v(it.next())?;
        if it.next().is_some() {
            return Err(Error::parse(ln, format!("trailing tokens in `{line}`")));
        }
        edges.push((a, b));
    }
    Graph::new(n, &edges).map_err(|e| match e {
        Error::InvalidParameter(msg) => Error::parse(0, msg),
        e => e,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

/// Parses `{"n": 4, "edges": [[1,2],[2,3]]}`.
pub fn parse_graph_json(text: &str) -> Result<Graph> {
    let g: GraphJson =
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    if g.n > MAX_GRAPH_VERTICES {
        return Err(Error::parse(0, format!("at most {MAX_GRAPH_VERTICES} vertices supported")));
    }
    let edges: Vec<(usize, usize)> = g.edges.iter().map(|e| (e[0], e[1])).collect();
    Graph::new(g.n, &edges)
}

/// Accepts either graph format, sniffing JSON by a leading `{`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        parse_graph_json(text)
    } else {
        parse_graph_text(text)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetJson {
    k: usize,
    #[serde(default)]
    covers: Vec<[usize; 2]>,
}

/// Parses `{"k": 3, "covers": [[1,2],[2,3]]}`; `[a,b]` means `a < b` is a cover.
pub fn parse_poset_json(text: &str) -> Result<Poset> {
    let p: PosetJson =
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    if p.k > crate::sequences::MAX_POSET_SIZE {
        return Err(Error::CapExceeded {
            size: p.k,
            cap: crate::sequences::MAX_POSET_SIZE,
        });
    }
    let covers: Vec<(usize, usize)> = p.covers.iter().map(|c| (c[0], c[1])).collect();
    Poset::from_covers(p.k, &covers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn ring(n: usize) -> Ring {
        Ring::new(n, PrimeField::default()).unwrap()
    }

    #[test]
    fn juxtaposition_and_stars_agree() {
        let r = ring(6);
        let a = parse_polynomial(r, "x1y2 - x2y1").unwrap();
        let b = parse_polynomial(r, "x1*y2 + -1*x2*y1").unwrap();
        let c = parse_polynomial(r, "v1*v5 - v2 v4").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn polynomial_errors() {
        let r = ring(4);
        assert!(parse_polynomial(r, "").is_err());
        assert!(parse_polynomial(r, "x3").is_err());
        assert!(parse_polynomial(r, "x0").is_err());
        assert!(parse_polynomial(r, "x1 +").is_err());
        assert!(parse_polynomial(r, "x1 ^").is_err());
        assert!(parse_polynomial(r, "x1^300").is_err());
        assert!(parse_polynomial(ring(3), "x1").is_err());
        assert!(parse_polynomial(r, "2 3 x1").is_ok());
    }

    #[test]
    fn graph_text_format() {
        let g = parse_graph_text("3\n1 2\n2 3\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[(1, 2), (2, 3)]);
        let g = parse_graph_text("# path\n3\n\n2 1 # reversed\n3 2").unwrap();
        assert_eq!(g.edges(), &[(1, 2), (2, 3)]);
        assert!(parse_graph_text("").is_err());
        assert!(parse_graph_text("3\n1 1").is_err());
        assert!(parse_graph_text("3\n1 4").is_err());
        assert!(parse_graph_text("3\n1 2 3").is_err());
        assert!(parse_graph_text("x").is_err());
        assert!(parse_graph_text("99").is_err());
    }

    #[test]
    fn graph_json_format() {
        let g = parse_graph_json(r#"{"n": 4, "edges": [[1,2],[2,3],[3,4],[1,4]]}"#).unwrap();
        assert_eq!(g.edges().len(), 4);
        assert_eq!(parse_graph(&g.to_json()).unwrap(), g);
        assert_eq!(parse_graph(&g.to_text()).unwrap(), g);
        assert!(parse_graph_json(r#"{"n": 2, "edges": [[1,3]]}"#).is_err());
        assert!(parse_graph_json(r#"{"n": 2}"#).is_err());
    }

    #[test]
    fn poset_json_format() {
        let p = parse_poset_json(r#"{"k": 3, "covers": [[1,2],[2,3]]}"#).unwrap();
        assert!(p.less(0, 2));
        assert!(parse_poset_json(r#"{"k": 2, "covers": [[1,2],[2,1]]}"#).is_err());
        assert!(parse_poset_json(r#"{"k": 99}"#).is_err());
    }
}
