//! Exhaustive search over contraction edge sets.
//!
//! A graph can be made planar with at most `k` contractions iff contracting
//! some set of at most `k` of its original edges gives a planar graph. The
//! oracle tries such sets by increasing size, lexicographically within a
//! size, so the first hit is a minimum certificate.

use std::collections::BTreeSet;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Instance, VertexId};
use crate::pipeline::{self, Type1Certificate};
use crate::planarity::is_planar_indexed;

pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Maximum number of edge subsets examined before giving up.
    pub cap: u64,
    /// Worker threads; `None` uses the global pool, `Some(1)` runs inline.
    pub jobs: Option<usize>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { cap: DEFAULT_CAP, jobs: None }
    }
}

/// Every subset of at most `budget` of the `edge_count` edges was examined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExhaustionProof {
    pub edge_count: usize,
    pub budget: usize,
    pub subsets_examined: u128,
}

impl ExhaustionProof {
    pub fn for_search(edge_count: usize, budget: usize) -> Self {
        ExhaustionProof { edge_count, budget, subsets_examined: subset_count(edge_count, budget) }
    }

    pub fn is_consistent(&self) -> bool {
        self.subsets_examined == subset_count(self.edge_count, self.budget)
    }
}

/// A lower bound for one connected component: it cannot be made planar
/// with `budget` contractions, so it needs at least `budget + 1`. The
/// refutation applies to the component after replaying `trace`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentRefutation {
    pub vertices: BTreeSet<VertexId>,
    pub budget: usize,
    pub trace: Vec<Edge>,
    pub refutation: Refutation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    Exhausted(ExhaustionProof),
    Type1(Type1Certificate),
    /// No set of at most `budget` vertices planarizes the graph.
    NoApexSet { budget: usize },
    /// Per-component lower bounds summing past the budget.
    Components(Vec<ComponentRefutation>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Yes { edges: Vec<Edge> },
    No(Refutation),
}

impl SolveResult {
    pub fn is_yes(&self) -> bool {
        matches!(self, SolveResult::Yes { .. })
    }
}

/// `Σ_{i=0..min(k,m)} C(m, i)`.
pub fn subset_count(m: usize, k: usize) -> u128 {
    let mut total = 0u128;
    let mut c = 1u128;
    for i in 0..=k.min(m) {
        total += c;
        c = c * (m - i) as u128 / (i + 1) as u128;
    }
    total
}

fn binomial(m: usize, i: usize) -> u128 {
    if i > m {
        return 0;
    }
    (0..i).fold(1u128, |c, j| c * (m - j) as u128 / (j + 1) as u128)
}

/// The graph in index form, ready for repeated contraction tests.
struct Indexed {
    n: usize,
    edges: Vec<(usize, usize)>,
    ids: Vec<VertexId>,
}

impl Indexed {
    fn new(g: &Graph) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let idx = |v: VertexId| ids.binary_search(&v).unwrap();
        let edges = g.edges().map(|e| (idx(e.u), idx(e.v))).collect();
        Indexed { n: ids.len(), edges, ids }
    }

    fn edge(&self, i: usize) -> Edge {
        let (a, b) = self.edges[i];
        Edge::new(self.ids[a], self.ids[b])
    }

    /// Planarity after contracting the chosen edges, or `None` when the
    /// chosen edges contain a cycle (the same graph arises from a smaller set).
    fn contracted_planar(&self, chosen: &[usize]) -> Option<bool> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &i in chosen {
            let (a, b) = self.edges[i];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return None;
            }
            parent[ra.max(rb)] = ra.min(rb);
        }
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                (ra != rb).then(|| (ra.min(rb), ra.max(rb)))
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let n = self.n - chosen.len();
        if n > 2 && edges.len() > 3 * n - 6 {
            return Some(false);
        }
        Some(is_planar_indexed(self.n, &edges))
    }

    /// Lexicographically least planarizing subset of exactly `size` edges.
    fn search_size(&self, size: usize, parallel: bool) -> Option<Vec<usize>> {
        let m = self.edges.len();
        let from_first = |a: usize| -> Option<Vec<usize>> {
            (a + 1..m).combinations(size - 1).find_map(|rest| {
                let mut chosen = Vec::with_capacity(size);
                chosen.push(a);
                chosen.extend(rest);
                (self.contracted_planar(&chosen) == Some(true)).then_some(chosen)
            })
        };
        if parallel {
            (0..m).into_par_iter().find_map_first(from_first)
        } else {
            (0..m).find_map(from_first)
        }
    }
}

/// Smallest set of at most `max_k` edges whose contraction planarizes `g`,
/// or `None` when there is none.
fn minimum_set(g: &Graph, max_k: usize, cfg: &OracleConfig) -> Result<Option<Vec<Edge>>> {
    let ix = Indexed::new(g);
    let m = ix.edges.len();
    if is_planar_indexed(ix.n, &ix.edges) {
        return Ok(Some(Vec::new()));
    }
    let run = || -> Result<Option<Vec<Edge>>> {
        let mut examined = 1u128;
        for size in 1..=max_k.min(m) {
            let level = binomial(m, size);
            if examined + level > cfg.cap as u128 {
                return Err(Error::Capacity { needed: subset_count(m, max_k), cap: cfg.cap });
            }
            examined += level;
            if let Some(found) = ix.search_size(size, cfg.jobs != Some(1)) {
                return Ok(Some(found.into_iter().map(|i| ix.edge(i)).collect()));
            }
        }
        Ok(None)
    };
    match cfg.jobs {
        Some(j) if j > 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?
            .install(run),
        _ => run(),
    }
}

pub fn solve_exact(inst: &Instance) -> Result<SolveResult> {
    solve_exact_with(inst, &OracleConfig::default())
}

pub fn solve_exact_with(inst: &Instance, cfg: &OracleConfig) -> Result<SolveResult> {
    Ok(match minimum_set(&inst.graph, inst.budget, cfg)? {
        Some(edges) => SolveResult::Yes { edges },
        None => SolveResult::No(Refutation::Exhausted(ExhaustionProof::for_search(inst.graph.m(), inst.budget))),
    })
}

/// Least number of contractions making `g` planar, or `None` if above `cap`.
pub fn min_contractions(g: &Graph, cap: usize) -> Result<Option<usize>> {
    min_contractions_with(g, cap, &OracleConfig::default())
}

pub fn min_contractions_with(g: &Graph, cap: usize, cfg: &OracleConfig) -> Result<Option<usize>> {
    Ok(minimum_set(g, cap, cfg)?.map(|es| es.len()))
}

/// Deletion set obtained from a contraction set: every merged class loses
/// all vertices but its smallest.
pub fn derive_apex_from_contraction(g: &Graph, edges: &[Edge]) -> Result<BTreeSet<VertexId>> {
    let mut classes = crate::graph::MergeClasses::new();
    for &e in edges {
        if !g.contains_edge(e) {
            return Err(Error::InvalidEdge(e));
        }
        classes.union(e.u, e.v);
    }
    Ok(g.vertices().filter(|&v| classes.find(v) != v).collect())
}

/// Checks a result against an instance without trusting the solver.
pub fn verify_certificate(inst: &Instance, res: &SolveResult) -> bool {
    let g = &inst.graph;
    match res {
        SolveResult::Yes { edges } => {
            let distinct: BTreeSet<_> = edges.iter().collect();
            if distinct.len() != edges.len() {
                return false;
            }
            match g.contract_edge_set(edges) {
                Ok((h, count)) => count <= inst.budget && crate::planarity::is_planar(&h),
                Err(_) => false,
            }
        }
        SolveResult::No(r) => verify_refutation(g, inst.budget, r),
    }
}

fn verify_refutation(g: &Graph, budget: usize, r: &Refutation) -> bool {
    match r {
        Refutation::Exhausted(p) => p.edge_count == g.m() && p.budget == budget && p.is_consistent(),
        Refutation::Type1(cert) => cert.verify(g, budget),
        Refutation::NoApexSet { budget: b } => *b == budget && pipeline::find_apex_set(g, budget).is_none(),
        Refutation::Components(parts) => {
            let comps = g.component_sets();
            let mut seen = BTreeSet::new();
            let mut total = 0;
            for part in parts {
                if !comps.contains(&part.vertices) || !seen.insert(part.vertices.iter().next().copied()) {
                    return false;
                }
                let Ok(sub) = g.induced_subgraph(&part.vertices) else { return false };
                let Ok(sub) = pipeline::replay_trace(&sub, &part.trace) else { return false };
                if !verify_refutation(&sub, part.budget, &part.refutation) {
                    return false;
                }
                total += part.budget + 1;
            }
            total > budget
        }
    }
}
