//! Text formats.
//!
//! * Edge list: one edge per line, two whitespace-separated vertex tokens.
//! * Threshold file: one `vertex_token threshold` pair per line.
//! * Configuration file: one state-1 vertex token per line.
//!
//! In all three, lines starting with `#` are comments and blank lines are
//! skipped. Tokens are arbitrary integers; they are mapped to dense indices in
//! first-seen order (edge list first, then any new tokens from the threshold
//! file, which become isolated vertices).

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::{BufRead, Write};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::system::ThresholdSystem;

/// Bidirectional map between file tokens and dense vertex indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexMap {
    tokens: Vec<i64>,
    index: HashMap<i64, usize>,
}

impl VertexMap {
    /// Identity map `0..n`.
    pub fn identity(n: usize) -> Self {
        let mut m = VertexMap::default();
        for t in 0..n as i64 {
            m.intern(t);
        }
        m
    }

    pub fn intern(&mut self, token: i64) -> usize {
        if let Some(&i) = self.index.get(&token) {
            return i;
        }
        let i = self.tokens.len();
        self.tokens.push(token);
        self.index.insert(token, i);
        i
    }

    pub fn get(&self, token: i64) -> Option<usize> {
        self.index.get(&token).copied()
    }

    pub fn token(&self, v: usize) -> i64 {
        self.tokens[v]
    }

    pub fn tokens(&self) -> &[i64] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

fn data_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String)>> {
    reader.lines().enumerate().filter_map(|(i, line)| match line {
        Err(e) => Some(Err(e.into())),
        Ok(l) => {
            let t = l.trim();
            if t.is_empty() || t.starts_with('#') {
                None
            } else {
                Some(Ok((i + 1, t.to_string())))
            }
        }
    })
}

fn parse_fields<const N: usize>(line_no: usize, line: &str) -> Result<[i64; N]> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != N {
        return Err(Error::Parse { line: line_no, message: format!("expected {N} fields, found {}", fields.len()) });
    }
    let mut out = [0i64; N];
    for (slot, f) in out.iter_mut().zip(&fields) {
        *slot = f
            .parse()
            .map_err(|_| Error::Parse { line: line_no, message: format!("`{f}` is not an integer") })?;
    }
    Ok(out)
}

/// Reads an edge list, interning tokens into `map`.
pub fn read_edge_list<R: BufRead>(reader: R, map: &mut VertexMap) -> Result<Vec<(usize, usize)>> {
    let mut edges = Vec::new();
    for item in data_lines(reader) {
        let (line_no, line) = item?;
        let [a, b] = parse_fields::<2>(line_no, &line)?;
        edges.push((map.intern(a), map.intern(b)));
    }
    Ok(edges)
}

/// Reads `token threshold` pairs. Unknown tokens are interned (isolated
/// vertices). Every vertex of the final map must receive a threshold.
pub fn read_thresholds<R: BufRead>(reader: R, map: &mut VertexMap) -> Result<Vec<u32>> {
    let mut pairs = Vec::new();
    for item in data_lines(reader) {
        let (line_no, line) = item?;
        let [tok, tau] = parse_fields::<2>(line_no, &line)?;
        if tau < 0 {
            return Err(Error::Parse { line: line_no, message: "threshold must be non-negative".into() });
        }
        pairs.push((map.intern(tok), tau.min(u32::MAX as i64) as u32));
    }
    let mut out = vec![None; map.len()];
    for (v, tau) in pairs {
        out[v] = Some(tau);
    }
    out.iter()
        .enumerate()
        .map(|(v, t)| {
            t.ok_or_else(|| Error::Parse { line: 0, message: format!("no threshold for vertex token {}", map.token(v)) })
        })
        .collect()
}

/// Reads a configuration as a list of state-1 vertex tokens. Tokens must
/// already be known to `map`.
pub fn read_configuration<R: BufRead>(reader: R, map: &VertexMap) -> Result<Configuration> {
    let mut c = Configuration::zeros(map.len());
    for item in data_lines(reader) {
        let (line_no, line) = item?;
        let [tok] = parse_fields::<1>(line_no, &line)?;
        let v = map
            .get(tok)
            .ok_or_else(|| Error::Parse { line: line_no, message: format!("unknown vertex token {tok}") })?;
        c.set(v, true);
    }
    Ok(c)
}

/// Loads a system from an edge-list reader and a threshold reader.
pub fn read_system<R1: BufRead, R2: BufRead>(edges: R1, thresholds: R2, directed: bool) -> Result<(ThresholdSystem, VertexMap)> {
    let mut map = VertexMap::default();
    let e = read_edge_list(edges, &mut map)?;
    let t = read_thresholds(thresholds, &mut map)?;
    Ok((ThresholdSystem::build(&e, t, directed)?, map))
}

pub fn write_edge_list<W: Write>(mut w: W, sys: &ThresholdSystem, map: &VertexMap) -> Result<()> {
    for &(u, v) in sys.edges() {
        writeln!(w, "{} {}", map.token(u), map.token(v))?;
    }
    Ok(())
}

pub fn write_thresholds<W: Write>(mut w: W, sys: &ThresholdSystem, map: &VertexMap) -> Result<()> {
    for v in 0..sys.vertex_count() {
        writeln!(w, "{} {}", map.token(v), sys.threshold(v))?;
    }
    Ok(())
}

pub fn format_configuration(c: &Configuration, map: &VertexMap) -> String {
    let mut s = String::new();
    for v in c.support() {
        let _ = writeln!(s, "{}", map.token(v));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_tokens_map_in_first_seen_order() {
        let edges = "# comment\n\n10 7\n7 42\n";
        let taus = "42 1\n10 2\n7 2\n99 1\n";
        let (sys, map) = read_system(edges.as_bytes(), taus.as_bytes(), false).unwrap();
        assert_eq!(map.tokens(), &[10, 7, 42, 99]);
        assert_eq!(sys.vertex_count(), 4);
        assert_eq!(sys.thresholds(), &[2, 2, 1, 1]);
        assert_eq!(sys.degree(3), 0);
    }

    #[test]
    fn missing_threshold_is_an_error() {
        let err = read_system("1 2\n".as_bytes(), "1 1\n".as_bytes(), false).unwrap_err();
        assert!(err.to_string().contains("no threshold for vertex token 2"));
    }

    #[test]
    fn malformed_lines() {
        let mut map = VertexMap::default();
        let err = read_edge_list("1 2\n3\n".as_bytes(), &mut map).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = read_edge_list("1 x\n".as_bytes(), &mut map).unwrap_err();
        assert!(err.to_string().contains("not an integer"));
    }

    #[test]
    fn self_loop_in_file() {
        let err = read_system("5 5\n".as_bytes(), "5 1\n".as_bytes(), false).unwrap_err();
        assert_eq!(err, Error::SelfLoop(0));
    }

    #[test]
    fn configuration_round_trip() {
        let (_, map) = read_system("10 7\n7 42\n".as_bytes(), "10 1\n7 1\n42 1\n".as_bytes(), false).unwrap();
        let c = Configuration::from_support(3, [0, 2]);
        let text = format_configuration(&c, &map);
        assert_eq!(text, "10\n42\n");
        assert_eq!(read_configuration(text.as_bytes(), &map).unwrap(), c);
    }
}
