//! Reduction pipeline: apex set, wall packing, type-1 refutation and
//! irrelevant-edge contraction, with the oracle as base case.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{families, Edge, Graph, Instance, MergeClasses, VertexId, WitnessStructure};
use crate::oracle::{self, ComponentRefutation, OracleConfig, Refutation, SolveResult};
use crate::planarity::{embed, find_kuratowski, is_planar, Embedding};
use crate::walls::{find_wall, pack_subwalls, packing_threshold, triple_layers, Pos, SubwallPacking, Wall};

/// At most `k` vertices whose deletion leaves a planar graph.
pub type ApexSet = BTreeSet<VertexId>;

/// Deterministic complete search for an apex set of size at most `k`:
/// every planarizing set meets every Kuratowski subdivision, so branching
/// on the vertices of one subdivision (high degree first) is exhaustive.
pub fn find_apex_set(g: &Graph, k: usize) -> Option<ApexSet> {
    if is_planar(g) {
        return Some(ApexSet::new());
    }
    if k == 0 {
        return None;
    }
    let ks = find_kuratowski(g).ok()?;
    let mut candidates: Vec<VertexId> = ks.vertices().into_iter().collect();
    candidates.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    for v in candidates {
        let rest = g.delete_vertex(v).expect("candidate is a vertex of g");
        if let Some(mut s) = find_apex_set(&rest, k - 1) {
            s.insert(v);
            return Some(s);
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiClassification {
    /// `sets[i]`: apex vertices adjacent to the interior of the i-th inner perimeter.
    pub sets: Vec<BTreeSet<VertexId>>,
    pub type1: Vec<bool>,
}

impl SiClassification {
    pub fn type1_count(&self) -> usize {
        self.type1.iter().filter(|&&t| t).count()
    }
}

/// `S_i` is the set of apex vertices adjacent to a vertex strictly inside
/// the perimeter of the i-th inner subwall; it is type 1 when nonempty and
/// every member also lies in another `S_j`.
pub fn classify_si(g: &Graph, s: &ApexSet, packing: &SubwallPacking, emb: &Embedding) -> Result<SiClassification> {
    let mut owner: BTreeMap<VertexId, usize> = BTreeMap::new();
    for (i, inner) in packing.inner_subwalls.iter().enumerate() {
        let perimeter = inner.perimeter();
        if perimeter.iter().any(|&v| emb.rotations().get(&v).is_none()) {
            return Err(Error::Precondition(format!("inner subwall {i} is not in the embedded graph")));
        }
        for v in emb.cycle_interior(&perimeter)?.interior {
            owner.insert(v, i);
        }
    }
    let mut sets = vec![BTreeSet::new(); packing.inner_subwalls.len()];
    for &y in s {
        if !g.contains(y) {
            return Err(Error::InvalidVertex(y));
        }
        for x in g.neighbors(y) {
            if let Some(&i) = owner.get(&x) {
                sets[i].insert(y);
            }
        }
    }
    let type1 = (0..sets.len())
        .map(|i| {
            !sets[i].is_empty()
                && sets[i].iter().all(|y| (0..sets.len()).any(|j| j != i && sets[j].contains(y)))
        })
        .collect();
    Ok(SiClassification { sets, type1 })
}

/// Refutation from at least `k+1` type-1 subwalls: one `K5` witness
/// structure per subwall, with pairwise disjoint edge sets each of which
/// must receive a contraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Type1Certificate {
    pub structures: Vec<WitnessStructure>,
    pub edge_sets: Vec<BTreeSet<Edge>>,
}

/// Edges of `g` with an endpoint in one of the first four parts.
fn incident_edges(g: &Graph, ws: &WitnessStructure) -> BTreeSet<Edge> {
    let mut out = BTreeSet::new();
    for part in ws.parts.values().take(4) {
        for &v in part {
            for w in g.neighbors(v) {
                out.insert(Edge::new(v, w));
            }
        }
    }
    out
}

impl Type1Certificate {
    pub fn verify(&self, g: &Graph, k: usize) -> bool {
        if self.structures.len() < k + 1 || self.structures.len() != self.edge_sets.len() {
            return false;
        }
        let k5 = families::complete(5);
        for (ws, es) in self.structures.iter().zip(&self.edge_sets) {
            if ws.target != k5 || ws.parts.len() != 5 {
                return false;
            }
            let all: BTreeSet<VertexId> = ws.parts.values().flatten().copied().collect();
            if !all.iter().all(|&v| g.contains(v)) {
                return false;
            }
            // the host is always the induced subgraph, whatever was supplied
            let Ok(host) = g.induced_subgraph(&all) else { return false };
            let rebuilt = WitnessStructure { parts: ws.parts.clone(), host, target: k5.clone() };
            if !rebuilt.verify() || incident_edges(g, ws) != *es {
                return false;
            }
        }
        for i in 0..self.edge_sets.len() {
            for j in i + 1..self.edge_sets.len() {
                if !self.edge_sets[i].is_disjoint(&self.edge_sets[j]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Builds the certificate when at least `k+1` sets are type 1. Parts per
/// subwall: three arcs of its perimeter, the component of its interior
/// holding the inner subwall, and the component outside it holding the
/// outer wall's perimeter.
pub fn claim1_refute(
    g: &Graph,
    s: &ApexSet,
    packing: &SubwallPacking,
    emb: &Embedding,
    classification: &SiClassification,
    k: usize,
) -> Result<Option<Type1Certificate>> {
    if classification.type1_count() < k + 1 {
        return Ok(None);
    }
    let h = g.delete_vertices(s)?;
    let outer_start = packing.outer_wall.perimeter()[0];
    let k5 = families::complete(5);
    let mut structures = Vec::new();
    let mut edge_sets = Vec::new();
    for i in (0..classification.type1.len()).filter(|&i| classification.type1[i]) {
        let cycle = packing.subwalls[i].perimeter();
        let len = cycle.len();
        let on_cycle: BTreeSet<VertexId> = cycle.iter().copied().collect();
        let interior = emb.cycle_interior(&cycle)?.interior;
        let mut parts = BTreeMap::new();
        for j in 0..3 {
            parts.insert(j as VertexId, cycle[j * len / 3..(j + 1) * len / 3].iter().copied().collect());
        }
        let seed = packing.inner_subwalls[i].vertex(Pos::new(0, 0)).unwrap();
        parts.insert(3, h.reach(seed, |v| interior.contains(&v)));
        parts.insert(4, g.reach(outer_start, |v| !on_cycle.contains(&v) && !interior.contains(&v)));
        let all: BTreeSet<VertexId> = parts.values().flatten().copied().collect::<BTreeSet<_>>();
        let ws = WitnessStructure { parts, host: g.induced_subgraph(&all)?, target: k5.clone() };
        edge_sets.push(incident_edges(g, &ws));
        structures.push(ws);
    }
    let cert = Type1Certificate { structures, edge_sets };
    if !cert.verify(g, k) {
        return Err(Error::Internal("type-1 certificate failed verification".into()));
    }
    Ok(Some(cert))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irrelevance {
    /// Contracting `edge` preserves the answer.
    Edge { edge: Edge, wall_height: usize, subwall: usize },
    /// The instance is a no-instance.
    Refuted(Type1Certificate),
    /// No wall tall enough was found.
    NoWall,
}

/// One reduction step on `g` with apex set `s` and budget `k`.
pub fn find_irrelevant_edge(g: &Graph, s: &ApexSet, k: usize, hint: Option<&Wall>) -> Result<Irrelevance> {
    let h = g.delete_vertices(s)?;
    let Some(wall) = find_wall(&h, packing_threshold(k) + 1, hint)? else {
        return Ok(Irrelevance::NoWall);
    };
    let inside = wall.peel()?.vertex(Pos::new(0, 0)).unwrap();
    let emb = embed(&h)
        .ok_or_else(|| Error::Precondition("graph minus apex set is not planar".into()))?
        .rooted_outside(&wall.perimeter(), inside)?;
    let packing = pack_subwalls(&wall, k)?;
    let cls = classify_si(g, s, &packing, &emb)?;
    if let Some(cert) = claim1_refute(g, s, &packing, &emb, &cls, k)? {
        return Ok(Irrelevance::Refuted(cert));
    }
    let i = cls
        .sets
        .iter()
        .position(BTreeSet::is_empty)
        .ok_or_else(|| Error::Internal("no subwall free of apex neighbors".into()))?;
    let layers = triple_layers(&packing.inner_subwalls[i], k, &emb)?;
    Ok(Irrelevance::Edge { edge: layers.central_edge, wall_height: wall.height(), subwall: i })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub oracle: OracleConfig,
    /// Re-solve the original graph when a reduced yes-certificate does not
    /// lift back to original edges.
    pub fallback: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { oracle: OracleConfig::default(), fallback: true }
    }
}

/// One row of reduction statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionStep {
    pub iteration: usize,
    pub vertices: usize,
    /// Height of the wall found, 0 when none was found.
    pub wall_height: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub apex: Option<ApexSet>,
    /// Contracted edges in order, each given by an original edge joining the
    /// two merged classes.
    pub contracted_edges: Vec<Edge>,
    pub final_instance: Instance,
    pub base_result: SolveResult,
    pub steps: Vec<ReductionStep>,
    /// Whether yes-edges in the returned result are original edges (true)
    /// or edges of `final_instance` (false).
    pub lifted: bool,
    /// The original graph was re-solved because lifting failed.
    pub fallback_used: bool,
}

/// Replays contractions given in original ids.
pub fn replay_trace(g: &Graph, trace: &[Edge]) -> Result<Graph> {
    let mut classes = MergeClasses::new();
    let mut cur = g.clone();
    for &e in trace {
        let (a, b) = (classes.find(e.u), classes.find(e.v));
        if a == b {
            return Err(Error::InvalidEdge(e));
        }
        cur = cur.contract_edge(Edge::new(a, b))?;
        classes.union(a, b);
    }
    Ok(cur)
}

// Smallest original edge between the classes of `a` and `b`.
fn original_edge(g: &Graph, classes: &MergeClasses, a: VertexId, b: VertexId) -> Option<Edge> {
    if g.has_edge(a, b) {
        return Some(Edge::new(a, b));
    }
    let (ra, rb) = (classes.find(a), classes.find(b));
    g.edges().find(|e| {
        let (x, y) = (classes.find(e.u), classes.find(e.v));
        (x == ra && y == rb) || (x == rb && y == ra)
    })
}

struct ComponentRun {
    apex: Option<ApexSet>,
    trace: Vec<Edge>,
    reduced: Graph,
    result: SolveResult,
    steps: Vec<ReductionStep>,
    lifted: Option<Vec<Edge>>,
    fallback_used: bool,
}

fn solve_component(g: &Graph, k: usize, opts: &SolveOptions) -> Result<ComponentRun> {
    let mut run = ComponentRun {
        apex: None,
        trace: Vec::new(),
        reduced: g.clone(),
        result: SolveResult::Yes { edges: Vec::new() },
        steps: Vec::new(),
        lifted: None,
        fallback_used: false,
    };
    let Some(apex) = find_apex_set(g, k) else {
        run.result = SolveResult::No(Refutation::NoApexSet { budget: k });
        return Ok(run);
    };
    run.apex = Some(apex.clone());
    let mut classes = MergeClasses::new();
    let mut cur = g.clone();
    loop {
        let iteration = run.steps.len();
        match find_irrelevant_edge(&cur, &apex, k, None)? {
            Irrelevance::Edge { edge, wall_height, .. } => {
                run.steps.push(ReductionStep { iteration, vertices: cur.n(), wall_height });
                let orig = original_edge(g, &classes, edge.u, edge.v)
                    .ok_or_else(|| Error::Internal(format!("no original edge behind {edge}")))?;
                run.trace.push(orig);
                cur = cur.contract_edge(edge)?;
                classes.union(edge.u, edge.v);
            }
            Irrelevance::Refuted(cert) => {
                run.steps.push(ReductionStep { iteration, vertices: cur.n(), wall_height: 0 });
                run.reduced = cur;
                run.result = SolveResult::No(Refutation::Type1(cert));
                return Ok(run);
            }
            Irrelevance::NoWall => {
                run.steps.push(ReductionStep { iteration, vertices: cur.n(), wall_height: 0 });
                break;
            }
        }
    }
    run.result = oracle::solve_exact_with(&Instance::new(cur.clone(), k), &opts.oracle)?;
    if let SolveResult::Yes { edges } = &run.result {
        if run.trace.is_empty() {
            run.lifted = Some(edges.clone());
        } else {
            let lifted: Option<Vec<Edge>> = edges.iter().map(|e| original_edge(g, &classes, e.u, e.v)).collect();
            let ok = lifted
                .as_ref()
                .filter(|es| oracle::verify_certificate(&Instance::new(g.clone(), k), &SolveResult::Yes { edges: es.to_vec() }));
            if let Some(es) = ok {
                run.lifted = Some(es.clone());
            } else if opts.fallback {
                match oracle::solve_exact_with(&Instance::new(g.clone(), k), &opts.oracle) {
                    Ok(SolveResult::Yes { edges }) => {
                        run.lifted = Some(edges);
                        run.fallback_used = true;
                    }
                    Ok(SolveResult::No(_)) => {
                        return Err(Error::Internal("reduction changed the answer".into()));
                    }
                    Err(Error::Capacity { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    run.reduced = cur;
    Ok(run)
}

/// Decides the instance. Yes-answers carry original edges when lifting
/// succeeds (see [`ReductionTrace::lifted`]); no-answers carry a refutation
/// of the reduced instance.
pub fn solve(inst: &Instance) -> Result<(SolveResult, ReductionTrace)> {
    solve_with(inst, &SolveOptions::default())
}

pub fn solve_with(inst: &Instance, opts: &SolveOptions) -> Result<(SolveResult, ReductionTrace)> {
    let g = &inst.graph;
    let k = inst.budget;
    let comps = g.component_sets();
    if comps.len() <= 1 {
        let run = solve_component(g, k, opts)?;
        let result = match (&run.result, &run.lifted) {
            (SolveResult::Yes { .. }, Some(es)) => SolveResult::Yes { edges: es.clone() },
            (r, _) => r.clone(),
        };
        let trace = ReductionTrace {
            apex: run.apex,
            contracted_edges: run.trace,
            final_instance: Instance::new(run.reduced, k),
            base_result: run.result,
            steps: run.steps,
            lifted: run.lifted.is_some(),
            fallback_used: run.fallback_used,
        };
        return Ok((result, trace));
    }

    // Per-component minima; stop as soon as the sum passes k.
    let mut used = 0;
    let mut refutations = Vec::new();
    let mut yes_runs = Vec::new();
    for comp in &comps {
        let sub = g.induced_subgraph(comp)?;
        let mut last_no: Option<ComponentRun> = None;
        let mut found = None;
        for b in 0..=k - used {
            let run = solve_component(&sub, b, opts)?;
            if run.result.is_yes() {
                found = Some((b, run));
                break;
            }
            last_no = Some(run);
        }
        if let Some(no) = last_no {
            refutations.push(ComponentRefutation {
                vertices: comp.clone(),
                budget: match &found {
                    Some((b, _)) => b - 1,
                    None => k - used,
                },
                trace: no.trace,
                refutation: match no.result {
                    SolveResult::No(r) => r,
                    SolveResult::Yes { .. } => unreachable!(),
                },
            });
        }
        match found {
            Some((b, run)) => {
                used += b;
                yes_runs.push(run);
            }
            None => {
                let result = SolveResult::No(Refutation::Components(refutations));
                let trace = ReductionTrace {
                    apex: None,
                    contracted_edges: Vec::new(),
                    final_instance: inst.clone(),
                    base_result: result.clone(),
                    steps: Vec::new(),
                    lifted: false,
                    fallback_used: false,
                };
                return Ok((result, trace));
            }
        }
    }

    let lifted = yes_runs.iter().all(|r| r.lifted.is_some());
    let mut edges = Vec::new();
    let mut contracted = Vec::new();
    let mut steps = Vec::new();
    let mut fallback_used = false;
    for run in &yes_runs {
        fallback_used |= run.fallback_used;
        steps.extend(run.steps.iter().copied());
        if lifted {
            edges.extend(run.lifted.clone().unwrap());
        } else {
            contracted.extend(run.trace.iter().copied());
            if let SolveResult::Yes { edges: es } = &run.result {
                edges.extend(es.iter().copied());
            }
        }
    }
    edges.sort();
    let final_graph = replay_trace(g, &contracted)?;
    let result = SolveResult::Yes { edges };
    let trace = ReductionTrace {
        apex: None,
        contracted_edges: contracted,
        final_instance: Instance::new(final_graph, k),
        base_result: result.clone(),
        steps,
        lifted,
        fallback_used,
    };
    Ok((result, trace))
}
