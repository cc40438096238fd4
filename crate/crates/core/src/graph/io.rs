//! Edge-list text format.
//!
//! An optional header `p <n> <m>` declares vertices `0..n`; every other
//! non-comment line is a whitespace-separated pair `u v`. Lines starting
//! with `#` are comments.

use std::fmt::Write;

use super::{Edge, Graph, VertexId};
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut g = Graph::new();
    let mut declared: Option<(usize, usize)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = i + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks[0] == "p" {
            if declared.is_some() || g.n() > 0 {
                return Err(Error::Parse { line: lineno, msg: "header must come first".into() });
            }
            if toks.len() != 3 {
                return Err(Error::Parse { line: lineno, msg: "expected `p <n> <m>`".into() });
            }
            let n = parse_num(toks[1], lineno)? as usize;
            let m = parse_num(toks[2], lineno)? as usize;
            for v in 0..n as VertexId {
                g.add_vertex(v);
            }
            declared = Some((n, m));
            continue;
        }
        if toks.len() != 2 {
            return Err(Error::Parse { line: lineno, msg: format!("expected `u v`, got `{line}`") });
        }
        let (a, b) = (parse_num(toks[0], lineno)?, parse_num(toks[1], lineno)?);
        if a == b {
            return Err(Error::Parse { line: lineno, msg: format!("loop at {a}") });
        }
        if let Some((n, _)) = declared {
            if a as usize >= n || b as usize >= n {
                return Err(Error::Parse { line: lineno, msg: format!("vertex out of range 0..{n}") });
            }
        }
        g.add_edge(a, b)?;
    }
    if let Some((_, m)) = declared {
        if m != g.m() {
            return Err(Error::Parse { line: 0, msg: format!("header declares {m} edges, found {}", g.m()) });
        }
    }
    Ok(g)
}

fn parse_num(tok: &str, line: usize) -> Result<VertexId> {
    tok.parse().map_err(|_| Error::Parse { line, msg: format!("not a vertex id: `{tok}`") })
}

/// Writes a header when the vertex set is exactly `0..n`.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let contiguous = g.vertices().enumerate().all(|(i, v)| i as VertexId == v);
    if contiguous {
        writeln!(out, "p {} {}", g.n(), g.m()).unwrap();
    } else {
        let isolated: Vec<_> = g.vertices().filter(|&v| g.degree(v) == 0).collect();
        if !isolated.is_empty() {
            writeln!(out, "# isolated vertices not representable: {isolated:?}").unwrap();
        }
    }
    for Edge { u, v } in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
