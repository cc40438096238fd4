//! Simple undirected graphs with stable vertex ids, edge contraction and
//! witness structures.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub mod io;

pub type VertexId = u32;

/// An unordered vertex pair, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    /// Normalizes the endpoint order. Panics on a loop.
    pub fn new(a: VertexId, b: VertexId) -> Self {
        assert_ne!(a, b, "loops are not edges");
        Edge { u: a.min(b), v: a.max(b) }
    }

    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.u, self.v)
    }
}

/// Simple undirected graph. No loops, no parallel edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    m: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges<I>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Graph::new();
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Graph on `vertices` plus `edges`; endpoints must be listed vertices.
    pub fn with_vertices<V, I>(vertices: V, edges: I) -> Result<Self>
    where
        V: IntoIterator<Item = VertexId>,
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(v);
        }
        for (a, b) in edges {
            if !g.contains(a) {
                return Err(Error::InvalidVertex(a));
            }
            if !g.contains(b) {
                return Err(Error::InvalidVertex(b));
            }
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.adj.entry(v).or_default();
    }

    /// Inserts an edge, adding missing endpoints. Duplicate edges are ignored.
    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<()> {
        if a == b {
            return Err(Error::Loop(a));
        }
        if self.adj.entry(a).or_default().insert(b) {
            self.adj.entry(b).or_default().insert(a);
            self.m += 1;
        }
        Ok(())
    }

    pub fn remove_edge(&mut self, e: Edge) -> bool {
        let removed = self.adj.get_mut(&e.u).map_or(false, |s| s.remove(&e.v));
        if removed {
            self.adj.get_mut(&e.v).unwrap().remove(&e.u);
            self.m -= 1;
        }
        removed
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.adj.get(&a).map_or(false, |s| s.contains(&b))
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.u, e.v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.adj.keys().copied().collect()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, ns)| ns.range(u + 1..).map(move |&v| Edge { u, v }))
    }

    pub fn edge_list(&self) -> Vec<Edge> {
        self.edges().collect()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.get(&v).into_iter().flat_map(|s| s.iter().copied())
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, |s| s.len())
    }

    pub fn max_vertex(&self) -> Option<VertexId> {
        self.adj.keys().next_back().copied()
    }

    /// Contracts `e`. The merged vertex keeps the smaller endpoint id.
    pub fn contract_edge(&self, e: Edge) -> Result<Graph> {
        if !self.contains_edge(e) {
            return Err(Error::InvalidEdge(e));
        }
        let mut g = self.clone();
        g.merge_into(e.u, e.v);
        Ok(g)
    }

    // Moves all neighbors of `gone` onto `keep` and drops `gone`.
    fn merge_into(&mut self, keep: VertexId, gone: VertexId) {
        let ns = self.adj.remove(&gone).unwrap_or_default();
        self.m -= ns.len();
        for w in ns {
            self.adj.get_mut(&w).unwrap().remove(&gone);
            if w != keep && self.adj.get_mut(&keep).unwrap().insert(w) {
                self.adj.get_mut(&w).unwrap().insert(keep);
                self.m += 1;
            }
        }
    }

    /// Contracts every component of the spanning subgraph `(V, es)` to its
    /// smallest vertex. Returns the graph and the number of elementary
    /// contractions this amounts to.
    pub fn contract_edge_set(&self, es: &[Edge]) -> Result<(Graph, usize)> {
        for &e in es {
            if !self.contains_edge(e) {
                return Err(Error::InvalidEdge(e));
            }
        }
        let mut classes = MergeClasses::new();
        for &e in es {
            classes.union(e.u, e.v);
        }
        let mut count = 0;
        let mut g = Graph::new();
        for v in self.vertices() {
            let r = classes.find(v);
            if r != v {
                count += 1;
            }
            g.add_vertex(r);
        }
        for e in self.edges() {
            let (a, b) = (classes.find(e.u), classes.find(e.v));
            if a != b {
                g.add_edge(a, b)?;
            }
        }
        Ok((g, count))
    }

    pub fn induced_subgraph(&self, s: &BTreeSet<VertexId>) -> Result<Graph> {
        if let Some(&v) = s.iter().find(|v| !self.contains(**v)) {
            return Err(Error::InvalidVertex(v));
        }
        Ok(self.induced_unchecked(s))
    }

    fn induced_unchecked(&self, s: &BTreeSet<VertexId>) -> Graph {
        let mut g = Graph::new();
        for &v in s {
            g.add_vertex(v);
            for w in self.neighbors(v).filter(|w| s.contains(w)) {
                if v < w {
                    g.add_edge(v, w).unwrap();
                }
            }
        }
        g
    }

    /// `G - S`.
    pub fn delete_vertices(&self, s: &BTreeSet<VertexId>) -> Result<Graph> {
        if let Some(&v) = s.iter().find(|v| !self.contains(**v)) {
            return Err(Error::InvalidVertex(v));
        }
        let keep: BTreeSet<_> = self.vertices().filter(|v| !s.contains(v)).collect();
        Ok(self.induced_unchecked(&keep))
    }

    pub fn delete_vertex(&self, v: VertexId) -> Result<Graph> {
        self.delete_vertices(&BTreeSet::from([v]))
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn component_sets(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen.contains(&s) {
                continue;
            }
            let comp = self.reach(s, |_| true);
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    pub fn connected_components(&self) -> Vec<Graph> {
        self.component_sets()
            .iter()
            .map(|c| self.induced_unchecked(c))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_sets().len() <= 1
    }

    /// Vertices reachable from `start` through vertices accepted by `allowed`.
    pub fn reach<F: Fn(VertexId) -> bool>(&self, start: VertexId, allowed: F) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if allowed(w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Whether `s` is nonempty and induces a connected subgraph.
    pub fn induces_connected(&self, s: &BTreeSet<VertexId>) -> bool {
        match s.iter().next() {
            None => false,
            Some(&start) => self.contains(start) && self.reach(start, |w| s.contains(&w)).len() == s.len(),
        }
    }

    pub fn sets_adjacent(&self, a: &BTreeSet<VertexId>, b: &BTreeSet<VertexId>) -> bool {
        a.iter().any(|&x| self.neighbors(x).any(|y| b.contains(&y)))
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.vertices().all(|v| other.contains(v)) && self.edges().all(|e| other.contains_edge(e))
    }

    /// Copy of `self` with vertex ids shifted by `offset`.
    pub fn shifted(&self, offset: VertexId) -> Graph {
        let mut g = Graph::new();
        for v in self.vertices() {
            g.add_vertex(v + offset);
        }
        for e in self.edges() {
            g.add_edge(e.u + offset, e.v + offset).unwrap();
        }
        g
    }

    /// Union of two graphs (vertex and edge sets).
    pub fn union(&self, other: &Graph) -> Graph {
        let mut g = self.clone();
        for v in other.vertices() {
            g.add_vertex(v);
        }
        for e in other.edges() {
            g.add_edge(e.u, e.v).unwrap();
        }
        g
    }

    /// Replaces `e` by a path through `k` fresh vertices starting at `next_id`.
    pub fn subdivide(&self, e: Edge, k: usize, next_id: VertexId) -> Result<Graph> {
        if !self.contains_edge(e) {
            return Err(Error::InvalidEdge(e));
        }
        let mut g = self.clone();
        g.remove_edge(e);
        let mut prev = e.u;
        for i in 0..k as VertexId {
            g.add_edge(prev, next_id + i)?;
            prev = next_id + i;
        }
        g.add_edge(prev, e.v)?;
        Ok(g)
    }

    /// Exhaustive isomorphism test, for graphs of at most 8 vertices.
    pub fn isomorphic_small(&self, other: &Graph) -> Option<bool> {
        if self.n() > 8 || other.n() > 8 {
            return None;
        }
        if self.n() != other.n() || self.m() != other.m() {
            return Some(false);
        }
        let a: Vec<_> = self.vertices().collect();
        let b: Vec<_> = other.vertices().collect();
        let mut da: Vec<_> = a.iter().map(|&v| self.degree(v)).collect();
        let mut db: Vec<_> = b.iter().map(|&v| other.degree(v)).collect();
        da.sort_unstable();
        db.sort_unstable();
        if da != db {
            return Some(false);
        }
        use itertools::Itertools;
        let found = (0..b.len()).permutations(b.len()).any(|p| {
            self.edges().all(|e| {
                let iu = a.binary_search(&e.u).unwrap();
                let iv = a.binary_search(&e.v).unwrap();
                other.has_edge(b[p[iu]], b[p[iv]])
            })
        });
        Some(found)
    }
}

/// A Planar Contraction instance: can `graph` be made planar with at most
/// `budget` edge contractions?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub budget: usize,
}

impl Instance {
    pub fn new(graph: Graph, budget: usize) -> Self {
        Instance { graph, budget }
    }
}

/// Union-find over vertex ids whose class representative is always the
/// smallest member. Replays contraction sequences given in original ids.
#[derive(Debug, Clone, Default)]
pub struct MergeClasses {
    parent: BTreeMap<VertexId, VertexId>,
}

impl MergeClasses {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn find(&self, v: VertexId) -> VertexId {
        let mut x = v;
        while let Some(&p) = self.parent.get(&x) {
            if p == x {
                break;
            }
            x = p;
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns the surviving representative.
    pub fn union(&mut self, a: VertexId, b: VertexId) -> VertexId {
        let (ra, rb) = (self.find(a), self.find(b));
        let (keep, gone) = (ra.min(rb), ra.max(rb));
        if keep != gone {
            self.parent.insert(gone, keep);
        }
        keep
    }

    /// Original vertices merged into `rep`, from the vertex universe `all`.
    pub fn members<'a>(&'a self, rep: VertexId, all: impl Iterator<Item = VertexId> + 'a) -> impl Iterator<Item = VertexId> + 'a {
        all.filter(move |&v| self.find(v) == rep)
    }
}

/// A partition of `host`'s vertices into connected parts, one per vertex of
/// `target`, whose adjacency pattern equals `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessStructure {
    pub parts: BTreeMap<VertexId, BTreeSet<VertexId>>,
    pub host: Graph,
    pub target: Graph,
}

impl WitnessStructure {
    pub fn verify(&self) -> bool {
        let labels: BTreeSet<_> = self.parts.keys().copied().collect();
        if labels != self.target.vertex_set() {
            return false;
        }
        let mut owner = BTreeMap::new();
        for (&label, part) in &self.parts {
            if part.is_empty() {
                return false;
            }
            for &v in part {
                if !self.host.contains(v) || owner.insert(v, label).is_some() {
                    return false;
                }
            }
            if !self.host.induces_connected(part) {
                return false;
            }
        }
        if owner.len() != self.host.n() {
            return false;
        }
        let mut pattern = BTreeSet::new();
        for e in self.host.edges() {
            let (a, b) = (owner[&e.u], owner[&e.v]);
            if a != b {
                pattern.insert(Edge::new(a, b));
            }
        }
        let expected: BTreeSet<_> = self.target.edges().collect();
        pattern == expected
    }

    /// Contracts every part to a single vertex, labeled by its part label.
    pub fn contract(&self) -> Graph {
        let mut owner = BTreeMap::new();
        for (&label, part) in &self.parts {
            for &v in part {
                owner.insert(v, label);
            }
        }
        let mut g = Graph::new();
        for &label in self.parts.keys() {
            g.add_vertex(label);
        }
        for e in self.host.edges() {
            if let (Some(&a), Some(&b)) = (owner.get(&e.u), owner.get(&e.v)) {
                if a != b {
                    g.add_edge(a, b).unwrap();
                }
            }
        }
        g
    }
}

pub mod families {
    //! Small named graphs.
    use super::*;

    pub fn complete(n: VertexId) -> Graph {
        let mut g = Graph::with_vertices(0..n, std::iter::empty()).unwrap();
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b).unwrap();
            }
        }
        g
    }

    /// `K_{a,b}` with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: VertexId, b: VertexId) -> Graph {
        let mut g = Graph::with_vertices(0..a + b, std::iter::empty()).unwrap();
        for x in 0..a {
            for y in a..a + b {
                g.add_edge(x, y).unwrap();
            }
        }
        g
    }

    pub fn cycle(n: VertexId) -> Graph {
        Graph::from_edges((0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn path(n: VertexId) -> Graph {
        let mut g = Graph::with_vertices(0..n, std::iter::empty()).unwrap();
        for i in 1..n {
            g.add_edge(i - 1, i).unwrap();
        }
        g
    }

    pub fn petersen() -> Graph {
        let mut g = Graph::new();
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5).unwrap();
            g.add_edge(i, i + 5).unwrap();
            g.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
        }
        g
    }

    /// `rows x cols` grid, vertex `(i, j)` has id `i * cols + j`.
    pub fn grid(rows: VertexId, cols: VertexId) -> Graph {
        let mut g = Graph::with_vertices(0..rows * cols, std::iter::empty()).unwrap();
        for i in 0..rows {
            for j in 0..cols {
                let v = i * cols + j;
                if j + 1 < cols {
                    g.add_edge(v, v + 1).unwrap();
                }
                if i + 1 < rows {
                    g.add_edge(v, v + cols).unwrap();
                }
            }
        }
        g
    }

    /// Subdivides every edge of `g` with `p` fresh vertices.
    pub fn subdivide_all(g: &Graph, p: usize) -> Graph {
        let mut next = g.max_vertex().map_or(0, |v| v + 1);
        let mut out = g.clone();
        for e in g.edges() {
            out = out.subdivide(e, p, next).unwrap();
            next += p as VertexId;
        }
        out
    }
}
