//! Text certificates for solver output.
//!
//! ```text
//! budget: 1
//! apex: 7
//! trace: 3 4; 10 11
//! answer: yes
//! edges: 0 1
//! ```
//!
//! `edges:` lists original edges; `reduced-edges:` lists edges of the graph
//! left after replaying `trace`. A no-answer is followed by one proof:
//!
//! ```text
//! proof: exhausted <m> <k> <count>
//! proof: no-apex <k>
//! proof: type1 <l>          then l pairs of `structure:` / `incident:` lines
//! proof: components <c>     then c blocks of `component:`, `trace:`, proof
//! ```
//!
//! A `structure:` line lists the five parts separated by `|`; the last part
//! is the one not counted for incident edges. A `component:` line reads
//! `component: <budget>: v1 v2 ...`. No-proofs refer to the graph after
//! replaying `trace`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{families, Edge, Graph, Instance, VertexId, WitnessStructure};
use crate::oracle::{verify_certificate, ComponentRefutation, ExhaustionProof, Refutation, SolveResult};
use crate::pipeline::{replay_trace, ReductionTrace, Type1Certificate};
use crate::planarity::is_planar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub budget: usize,
    pub apex: Option<BTreeSet<VertexId>>,
    pub trace: Vec<Edge>,
    /// Yes-edges refer to the graph after replaying `trace`.
    pub reduced_edges: bool,
    pub result: SolveResult,
}

impl Certificate {
    /// Certificate for a bare oracle result.
    pub fn from_result(budget: usize, result: SolveResult) -> Self {
        Certificate { budget, apex: None, trace: Vec::new(), reduced_edges: false, result }
    }

    /// Certificate for pipeline output.
    pub fn from_solve(budget: usize, result: SolveResult, trace: &ReductionTrace) -> Self {
        Certificate {
            budget,
            apex: trace.apex.clone(),
            trace: trace.contracted_edges.clone(),
            reduced_edges: result.is_yes() && !trace.lifted,
            result,
        }
    }

    pub fn verify(&self, g: &Graph) -> bool {
        if let Some(s) = &self.apex {
            let ok = s.len() <= self.budget && g.delete_vertices(s).map(|h| is_planar(&h)).unwrap_or(false);
            if !ok {
                return false;
            }
        }
        let Ok(reduced) = replay_trace(g, &self.trace) else { return false };
        let target = match &self.result {
            SolveResult::Yes { .. } if !self.reduced_edges => g.clone(),
            _ => reduced,
        };
        verify_certificate(&Instance::new(target, self.budget), &self.result)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "budget: {}", self.budget).unwrap();
        if let Some(s) = &self.apex {
            writeln!(out, "apex: {}", join_ids(s.iter())).unwrap();
        }
        if !self.trace.is_empty() {
            writeln!(out, "trace: {}", join_edges(&self.trace)).unwrap();
        }
        match &self.result {
            SolveResult::Yes { edges } => {
                writeln!(out, "answer: yes").unwrap();
                let key = if self.reduced_edges { "reduced-edges" } else { "edges" };
                writeln!(out, "{key}: {}", join_edges(edges)).unwrap();
            }
            SolveResult::No(r) => {
                writeln!(out, "answer: no").unwrap();
                write_refutation(&mut out, r);
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Certificate> {
        let mut lines = Lines::new(text);
        let mut cert = Certificate::from_result(0, SolveResult::Yes { edges: Vec::new() });
        let mut budget = None;
        let mut answer = None;
        while let Some((key, value)) = lines.next_kv()? {
            match key {
                "budget" => budget = Some(lines.num(value)?),
                "apex" => cert.apex = Some(lines.ids(value)?.into_iter().collect()),
                "trace" => cert.trace = lines.edges(value)?,
                "answer" => {
                    answer = Some(match value {
                        "yes" => true,
                        "no" => false,
                        _ => return Err(lines.err("answer must be yes or no")),
                    });
                    if answer == Some(false) {
                        cert.result = SolveResult::No(parse_refutation(&mut lines)?);
                    }
                }
                "edges" | "reduced-edges" if answer == Some(true) => {
                    cert.reduced_edges = key == "reduced-edges";
                    cert.result = SolveResult::Yes { edges: lines.edges(value)? };
                }
                _ => return Err(lines.err(&format!("unexpected `{key}`"))),
            }
        }
        cert.budget = budget.ok_or_else(|| lines.err("missing budget"))?;
        if answer.is_none() {
            return Err(lines.err("missing answer"));
        }
        Ok(cert)
    }
}

fn join_ids<'a>(ids: impl Iterator<Item = &'a VertexId>) -> String {
    ids.map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn join_edges<'a>(edges: impl IntoIterator<Item = &'a Edge>) -> String {
    edges.into_iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; ")
}

fn write_refutation(out: &mut String, r: &Refutation) {
    match r {
        Refutation::Exhausted(p) => {
            writeln!(out, "proof: exhausted {} {} {}", p.edge_count, p.budget, p.subsets_examined).unwrap();
        }
        Refutation::NoApexSet { budget } => writeln!(out, "proof: no-apex {budget}").unwrap(),
        Refutation::Type1(cert) => {
            writeln!(out, "proof: type1 {}", cert.structures.len()).unwrap();
            for (ws, es) in cert.structures.iter().zip(&cert.edge_sets) {
                let parts: Vec<String> = ws.parts.values().map(|p| join_ids(p.iter())).collect();
                writeln!(out, "structure: {}", parts.join(" | ")).unwrap();
                writeln!(out, "incident: {}", join_edges(es)).unwrap();
            }
        }
        Refutation::Components(parts) => {
            writeln!(out, "proof: components {}", parts.len()).unwrap();
            for part in parts {
                writeln!(out, "component: {}: {}", part.budget, join_ids(part.vertices.iter())).unwrap();
                writeln!(out, "trace: {}", join_edges(&part.trace)).unwrap();
                write_refutation(out, &part.refutation);
            }
        }
    }
}

fn parse_refutation(lines: &mut Lines) -> Result<Refutation> {
    let (key, value) = lines.next_kv()?.ok_or_else(|| lines.err("missing proof"))?;
    if key != "proof" {
        return Err(lines.err("expected `proof:`"));
    }
    let words: Vec<&str> = value.split_whitespace().collect();
    let nums = |lines: &Lines, from: usize| -> Result<Vec<u128>> {
        words[from..].iter().map(|w| w.parse().map_err(|_| lines.err("bad number"))).collect()
    };
    match words.first().copied() {
        Some("exhausted") => match nums(lines, 1)?[..] {
            [m, k, c] => Ok(Refutation::Exhausted(ExhaustionProof {
                edge_count: m as usize,
                budget: k as usize,
                subsets_examined: c,
            })),
            _ => Err(lines.err("exhausted takes m, k and a count")),
        },
        Some("no-apex") => match nums(lines, 1)?[..] {
            [k] => Ok(Refutation::NoApexSet { budget: k as usize }),
            _ => Err(lines.err("no-apex takes a budget")),
        },
        Some("type1") => {
            let [l] = nums(lines, 1)?[..] else { return Err(lines.err("type1 takes a count")) };
            let mut structures = Vec::new();
            let mut edge_sets = Vec::new();
            for _ in 0..l {
                let value = lines.expect("structure")?;
                let mut parts = BTreeMap::new();
                for (i, chunk) in value.split('|').enumerate() {
                    parts.insert(i as VertexId, lines.ids(chunk)?.into_iter().collect::<BTreeSet<_>>());
                }
                if parts.len() != 5 {
                    return Err(lines.err("a structure has five parts"));
                }
                // the host is rebuilt from the graph at verification time
                structures.push(WitnessStructure { parts, host: Graph::new(), target: families::complete(5) });
                let value = lines.expect("incident")?;
                edge_sets.push(lines.edges(value)?.into_iter().collect());
            }
            Ok(Refutation::Type1(Type1Certificate { structures, edge_sets }))
        }
        Some("components") => {
            let [c] = nums(lines, 1)?[..] else { return Err(lines.err("components takes a count")) };
            let mut parts = Vec::new();
            for _ in 0..c {
                let value = lines.expect("component")?;
                let (b, vs) = value.split_once(':').ok_or_else(|| lines.err("component: <budget>: <vertices>"))?;
                let budget = lines.num(b.trim())?;
                let vertices = lines.ids(vs)?.into_iter().collect();
                let value = lines.expect("trace")?;
                let trace = lines.edges(value)?;
                let refutation = parse_refutation(lines)?;
                parts.push(ComponentRefutation { vertices, budget, trace, refutation });
            }
            Ok(Refutation::Components(parts))
        }
        _ => Err(lines.err("unknown proof kind")),
    }
}

/// Line cursor skipping blanks and `#` comments.
struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    line: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate(), line: 0 }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse { line: self.line, msg: msg.to_string() }
    }

    fn next_kv(&mut self) -> Result<Option<(&'a str, &'a str)>> {
        for (i, raw) in self.inner.by_ref() {
            self.line = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            // `answer yes` is accepted as well as `answer: yes`
            let (k, v) = match line.split_once(':') {
                Some((k, v)) if !k.contains(' ') => (k, v),
                _ => line.split_once(' ').unwrap_or((line, "")),
            };
            return Ok(Some((k.trim(), v.trim())));
        }
        Ok(None)
    }

    fn expect(&mut self, key: &str) -> Result<&'a str> {
        match self.next_kv()? {
            Some((k, v)) if k == key => Ok(v),
            _ => Err(self.err(&format!("expected `{key}:`"))),
        }
    }

    fn num(&self, s: &str) -> Result<usize> {
        s.trim().parse().map_err(|_| self.err("bad number"))
    }

    fn ids(&self, s: &str) -> Result<Vec<VertexId>> {
        s.split_whitespace().map(|t| t.parse().map_err(|_| self.err("bad vertex id"))).collect()
    }

    fn edges(&self, s: &str) -> Result<Vec<Edge>> {
        s.split(';')
            .filter(|c| !c.trim().is_empty())
            .map(|c| match self.ids(c)?[..] {
                [a, b] if a != b => Ok(Edge::new(a, b)),
                _ => Err(self.err("an edge is two distinct vertex ids")),
            })
            .collect()
    }
}
