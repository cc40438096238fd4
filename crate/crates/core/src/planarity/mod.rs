//! Certifying planarity testing.
//!
//! Planar graphs come back with a rotation system and its faces; nonplanar
//! graphs come back with a subdivision of K5 or K3,3.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{families, Edge, Graph, VertexId, WitnessStructure};

mod lr;

/// A closed walk around one face. Consecutive entries (cyclically) are the
/// darts of the face; an isolated vertex has the one-entry walk `[v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub walk: Vec<VertexId>,
}

impl Face {
    pub fn darts(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let k = self.walk.len();
        let n = if k == 1 { 0 } else { k };
        (0..n).map(move |i| (self.walk[i], self.walk[(i + 1) % k]))
    }

    pub fn len(&self) -> usize {
        if self.walk.len() == 1 {
            0
        } else {
            self.walk.len()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A combinatorial embedding: clockwise neighbor order at every vertex,
/// plus the face walks it induces and a designated outer face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    rotation: BTreeMap<VertexId, Vec<VertexId>>,
    faces: Vec<Face>,
    dart_face: HashMap<(VertexId, VertexId), usize>,
    face_component: Vec<usize>,
    component_of: BTreeMap<VertexId, usize>,
    outer_face: usize,
}

impl Embedding {
    /// Builds an embedding from a rotation system and traces its faces.
    pub fn from_rotation(rotation: BTreeMap<VertexId, Vec<VertexId>>) -> Result<Embedding> {
        // every dart must have its reverse
        for (&v, ns) in &rotation {
            let distinct: BTreeSet<_> = ns.iter().collect();
            if distinct.len() != ns.len() {
                return Err(Error::Inconsistent(format!("repeated neighbor at {v}")));
            }
            for &w in ns {
                if w == v || !rotation.get(&w).map_or(false, |l| l.contains(&v)) {
                    return Err(Error::Inconsistent(format!("dart {v}->{w} has no reverse")));
                }
            }
        }
        let position: HashMap<(VertexId, VertexId), usize> = rotation
            .iter()
            .flat_map(|(&v, ns)| ns.iter().enumerate().map(move |(i, &w)| ((v, w), i)))
            .collect();
        let mut dart_face = HashMap::with_capacity(position.len());
        let mut faces = Vec::new();
        for (&v, ns) in &rotation {
            if ns.is_empty() {
                faces.push(Face { walk: vec![v] });
                continue;
            }
            for &w in ns {
                if dart_face.contains_key(&(v, w)) {
                    continue;
                }
                let id = faces.len();
                let mut walk = Vec::new();
                let (mut a, mut b) = (v, w);
                while dart_face.insert((a, b), id).is_none() {
                    walk.push(a);
                    // next dart: (b, ccw_b(a))
                    let around = &rotation[&b];
                    let i = position[&(b, a)];
                    let c = around[(i + around.len() - 1) % around.len()];
                    a = b;
                    b = c;
                }
                if (a, b) != (v, w) {
                    return Err(Error::Inconsistent("face traversal did not close".into()));
                }
                faces.push(Face { walk });
            }
        }
        let mut component_of = BTreeMap::new();
        let mut next = 0;
        for &s in rotation.keys() {
            if component_of.contains_key(&s) {
                continue;
            }
            let mut queue = VecDeque::from([s]);
            component_of.insert(s, next);
            while let Some(x) = queue.pop_front() {
                for &y in &rotation[&x] {
                    if !component_of.contains_key(&y) {
                        component_of.insert(y, next);
                        queue.push_back(y);
                    }
                }
            }
            next += 1;
        }
        let face_component: Vec<usize> = faces.iter().map(|f| component_of[&f.walk[0]]).collect();
        let mut emb = Embedding { rotation, faces, dart_face, face_component, component_of, outer_face: 0 };
        emb.outer_face = emb.default_outer(0).unwrap_or(0);
        Ok(emb)
    }

    // Longest face of a component; lowest index on ties.
    fn default_outer(&self, component: usize) -> Option<usize> {
        (0..self.faces.len())
            .filter(|&f| self.face_component[f] == component)
            .max_by_key(|&f| (self.faces[f].len(), std::cmp::Reverse(f)))
    }

    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        self.rotation.get(&v).map_or(&[], |r| r.as_slice())
    }

    pub fn rotations(&self) -> &BTreeMap<VertexId, Vec<VertexId>> {
        &self.rotation
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn outer_face(&self) -> usize {
        self.outer_face
    }

    pub fn face_of_dart(&self, a: VertexId, b: VertexId) -> Option<usize> {
        self.dart_face.get(&(a, b)).copied()
    }

    pub fn component_count(&self) -> usize {
        self.face_component.iter().max().map_or(0, |c| c + 1)
    }

    /// Same rotation with another face designated as outer.
    pub fn with_outer_face(&self, face: usize) -> Result<Embedding> {
        if face >= self.faces.len() {
            return Err(Error::Precondition(format!("no face {face}")));
        }
        let mut e = self.clone();
        e.outer_face = face;
        Ok(e)
    }

    pub fn graph(&self) -> Graph {
        let mut g = Graph::new();
        for (&v, ns) in &self.rotation {
            g.add_vertex(v);
            for &w in ns {
                g.add_edge(v, w).unwrap();
            }
        }
        g
    }

    /// Face count equals `m' - n' + 2` in every component and every edge
    /// is traversed exactly twice.
    pub fn is_euler_consistent(&self) -> bool {
        let comps = self.component_count();
        let mut n = vec![0i64; comps];
        let mut m2 = vec![0i64; comps];
        let mut f = vec![0i64; comps];
        for (&v, ns) in &self.rotation {
            let c = self.component_of[&v];
            n[c] += 1;
            m2[c] += ns.len() as i64;
        }
        for &c in &self.face_component {
            f[c] += 1;
        }
        let darts: usize = self.faces.iter().map(|fc| fc.len()).sum();
        darts == self.dart_face.len()
            && (0..comps).all(|c| f[c] == m2[c] / 2 - n[c] + 2)
    }

    fn component_outer(&self, component: usize) -> usize {
        if self.face_component[self.outer_face] == component {
            self.outer_face
        } else {
            self.default_outer(component).expect("component without faces")
        }
    }

    /// Partition of the faces of `cycle`'s component into the side holding
    /// the outer face and the other side.
    fn cycle_sides(&self, cycle: &[VertexId]) -> Result<(usize, BTreeSet<usize>)> {
        let k = cycle.len();
        if k < 3 {
            return Err(Error::InvalidCycle("fewer than 3 vertices".into()));
        }
        let distinct: BTreeSet<_> = cycle.iter().collect();
        if distinct.len() != k {
            return Err(Error::InvalidCycle("repeated vertex".into()));
        }
        let mut blocked = BTreeSet::new();
        for i in 0..k {
            let (a, b) = (cycle[i], cycle[(i + 1) % k]);
            if !self.dart_face.contains_key(&(a, b)) {
                return Err(Error::InvalidCycle(format!("{a} {b} is not an edge")));
            }
            blocked.insert(Edge::new(a, b));
        }
        let comp = self.component_of[&cycle[0]];
        let outer = self.component_outer(comp);
        let mut reached = BTreeSet::from([outer]);
        let mut queue = VecDeque::from([outer]);
        while let Some(f) = queue.pop_front() {
            for (a, b) in self.faces[f].darts() {
                if blocked.contains(&Edge::new(a, b)) {
                    continue;
                }
                let g = self.dart_face[&(b, a)];
                if reached.insert(g) {
                    queue.push_back(g);
                }
            }
        }
        Ok((comp, reached))
    }

    /// Vertices strictly inside and strictly outside `cycle`, relative to
    /// the outer face. Other components are outside every cycle and are not
    /// listed.
    pub fn cycle_interior(&self, cycle: &[VertexId]) -> Result<CycleRegion> {
        let (comp, outer_side) = self.cycle_sides(cycle)?;
        let on_cycle: BTreeSet<_> = cycle.iter().copied().collect();
        let mut interior = BTreeSet::new();
        let mut inner_faces = 0;
        for (f, face) in self.faces.iter().enumerate() {
            if self.face_component[f] != comp || outer_side.contains(&f) {
                continue;
            }
            inner_faces += 1;
            interior.extend(face.walk.iter().filter(|v| !on_cycle.contains(v)));
        }
        if inner_faces == 0 {
            return Err(Error::InvalidCycle("cycle bounds no region".into()));
        }
        let exterior = self
            .component_of
            .iter()
            .filter(|&(v, &c)| c == comp && !on_cycle.contains(v) && !interior.contains(v))
            .map(|(&v, _)| v)
            .collect();
        Ok(CycleRegion { cycle: cycle.to_vec(), interior, exterior })
    }

    /// Re-roots so that the outer face lies on the side of `cycle` that does
    /// not contain `inside`.
    pub fn rooted_outside(&self, cycle: &[VertexId], inside: VertexId) -> Result<Embedding> {
        let (comp, outer_side) = self.cycle_sides(cycle)?;
        let around: BTreeSet<usize> = self
            .rotation(inside)
            .iter()
            .map(|&w| self.dart_face[&(inside, w)])
            .collect();
        if around.is_empty() || cycle.contains(&inside) {
            return Err(Error::Precondition(format!("{inside} is not off the cycle")));
        }
        if around.is_disjoint(&outer_side) {
            return Ok(self.clone());
        }
        let other = (0..self.faces.len())
            .find(|f| self.face_component[*f] == comp && !outer_side.contains(f))
            .ok_or_else(|| Error::InvalidCycle("cycle bounds no region".into()))?;
        self.with_outer_face(other)
    }

    /// `v: n1 n2 ...` per vertex in rotation order, then `outer: <walk>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, ns) in &self.rotation {
            let list: Vec<String> = ns.iter().map(|w| w.to_string()).collect();
            writeln!(out, "{v}: {}", list.join(" ")).unwrap();
        }
        let walk: Vec<String> = self.faces[self.outer_face].walk.iter().map(|w| w.to_string()).collect();
        writeln!(out, "outer: {}", walk.join(" ")).unwrap();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleRegion {
    pub cycle: Vec<VertexId>,
    pub interior: BTreeSet<VertexId>,
    pub exterior: BTreeSet<VertexId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of K5 or K3,3 inside a host graph. Each path runs between
/// two branch vertices; interior path vertices are private to that path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KuratowskiSubdivision {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<VertexId>,
    pub paths: Vec<Vec<VertexId>>,
}

impl KuratowskiSubdivision {
    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.paths.iter().flatten().copied().chain(self.branch_vertices.iter().copied()).collect()
    }

    pub fn edges(&self) -> BTreeSet<Edge> {
        self.paths.iter().flat_map(|p| p.windows(2).map(|w| Edge::new(w[0], w[1]))).collect()
    }

    pub fn as_graph(&self) -> Graph {
        let mut g = Graph::new();
        for e in self.edges() {
            g.add_edge(e.u, e.v).unwrap();
        }
        g
    }

    /// The subdivision as a witness structure of the pattern graph: each
    /// path's interior joins the part of its first endpoint.
    pub fn witness_structure(&self) -> WitnessStructure {
        let label: BTreeMap<VertexId, VertexId> = self
            .branch_vertices
            .iter()
            .enumerate()
            .map(|(i, &b)| (b, i as VertexId))
            .collect();
        let mut parts: BTreeMap<VertexId, BTreeSet<VertexId>> =
            label.iter().map(|(&b, &l)| (l, BTreeSet::from([b]))).collect();
        for p in &self.paths {
            if let Some(&l) = p.first().and_then(|b| label.get(b)) {
                parts.get_mut(&l).unwrap().extend(p[1..p.len() - 1].iter().copied());
            }
        }
        let target = match self.kind {
            KuratowskiKind::K5 => families::complete(5),
            KuratowskiKind::K33 => {
                // sides by the branch-vertex pattern
                let mut t = Graph::with_vertices(0..6, std::iter::empty()).unwrap();
                for p in &self.paths {
                    if let (Some(&a), Some(&b)) = (label.get(&p[0]), p.last().and_then(|x| label.get(x))) {
                        if a != b {
                            t.add_edge(a, b).unwrap();
                        }
                    }
                }
                t
            }
        };
        WitnessStructure { parts, host: self.as_graph(), target }
    }

    pub fn validate(&self, g: &Graph) -> bool {
        let (nb, np) = match self.kind {
            KuratowskiKind::K5 => (5, 10),
            KuratowskiKind::K33 => (6, 9),
        };
        let branch: BTreeSet<_> = self.branch_vertices.iter().copied().collect();
        if branch.len() != nb || self.branch_vertices.len() != nb || self.paths.len() != np {
            return false;
        }
        let mut internal = BTreeSet::new();
        let mut pattern = BTreeSet::new();
        for p in &self.paths {
            if p.len() < 2 || !branch.contains(&p[0]) || !branch.contains(&p[p.len() - 1]) || p[0] == p[p.len() - 1] {
                return false;
            }
            if !p.windows(2).all(|w| w[0] != w[1] && g.has_edge(w[0], w[1])) {
                return false;
            }
            for &x in &p[1..p.len() - 1] {
                if branch.contains(&x) || !internal.insert(x) {
                    return false;
                }
            }
            if !pattern.insert(Edge::new(p[0], p[p.len() - 1])) {
                return false;
            }
        }
        match self.kind {
            KuratowskiKind::K5 => true,
            KuratowskiKind::K33 => {
                let b: Vec<_> = branch.iter().copied().collect();
                // the side containing b[0] is everything not adjacent to it
                let side: BTreeSet<_> = b.iter().copied().filter(|&x| x == b[0] || !pattern.contains(&Edge::new(b[0], x))).collect();
                side.len() == 3
                    && b.iter().all(|&x| {
                        b.iter().all(|&y| x == y || pattern.contains(&Edge::new(x, y)) == (side.contains(&x) != side.contains(&y)))
                    })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanarityCertificate {
    Planar(Embedding),
    NonPlanar(KuratowskiSubdivision),
}

impl PlanarityCertificate {
    pub fn is_planar(&self) -> bool {
        matches!(self, PlanarityCertificate::Planar(_))
    }
}

fn index_form(g: &Graph) -> (Vec<VertexId>, Vec<(usize, usize)>) {
    let ids: Vec<VertexId> = g.vertices().collect();
    let idx = |v: VertexId| ids.binary_search(&v).unwrap();
    let edges = g.edges().map(|e| (idx(e.u), idx(e.v))).collect();
    (ids, edges)
}

/// Planarity of a graph given by index pairs over `0..n`; isolated indices
/// are allowed, duplicate pairs are not.
pub(crate) fn is_planar_indexed(n: usize, edges: &[(usize, usize)]) -> bool {
    lr::planar_rotation(n, edges).is_some()
}

pub fn is_planar(g: &Graph) -> bool {
    let (ids, edges) = index_form(g);
    lr::planar_rotation(ids.len(), &edges).is_some()
}

/// A planar embedding of `g`, or `None` when `g` is not planar.
pub fn embed(g: &Graph) -> Option<Embedding> {
    let (ids, edges) = index_form(g);
    let rot = lr::planar_rotation(ids.len(), &edges)?;
    let rotation = rot
        .into_iter()
        .enumerate()
        .map(|(i, ns)| (ids[i], ns.into_iter().map(|j| ids[j]).collect()))
        .collect();
    let emb = Embedding::from_rotation(rotation).expect("planarity test produced an invalid rotation");
    assert!(emb.is_euler_consistent(), "planarity test produced a non-planar rotation");
    Some(emb)
}

pub fn test_planarity(g: &Graph) -> PlanarityCertificate {
    match embed(g) {
        Some(e) => PlanarityCertificate::Planar(e),
        None => PlanarityCertificate::NonPlanar(find_kuratowski(g).expect("nonplanar graph")),
    }
}

/// Extracts a Kuratowski subdivision by deleting every edge whose removal
/// keeps the graph nonplanar. Candidate edges are tried in halving batches.
pub fn find_kuratowski(g: &Graph) -> Result<KuratowskiSubdivision> {
    if is_planar(g) {
        return Err(Error::NotApplicable);
    }
    let mut cur = g.clone();
    let edges = g.edge_list();
    prune(&mut cur, &edges);
    let core: BTreeSet<_> = cur.vertices().filter(|&v| cur.degree(v) > 0).collect();
    let core = cur.induced_subgraph(&core)?;
    let sub = extract_subdivision(&core)
        .ok_or_else(|| Error::Internal("minimal nonplanar subgraph is not a Kuratowski subdivision".into()))?;
    if !sub.validate(g) {
        return Err(Error::Internal("extracted subdivision failed validation".into()));
    }
    Ok(sub)
}

fn prune(cur: &mut Graph, cands: &[Edge]) {
    if cands.is_empty() {
        return;
    }
    for &e in cands {
        cur.remove_edge(e);
    }
    if !is_planar(cur) {
        return;
    }
    for &e in cands {
        cur.add_edge(e.u, e.v).unwrap();
    }
    if cands.len() == 1 {
        return;
    }
    let (a, b) = cands.split_at(cands.len() / 2);
    prune(cur, a);
    prune(cur, b);
}

fn extract_subdivision(core: &Graph) -> Option<KuratowskiSubdivision> {
    let branch: Vec<VertexId> = core.vertices().filter(|&v| core.degree(v) >= 3).collect();
    let kind = match (branch.len(), branch.iter().map(|&v| core.degree(v)).max()) {
        (5, Some(4)) => KuratowskiKind::K5,
        (6, Some(3)) => KuratowskiKind::K33,
        _ => return None,
    };
    if core.vertices().any(|v| core.degree(v) != 2 && !branch.contains(&v)) {
        return None;
    }
    let mut paths = Vec::new();
    let mut used = BTreeSet::new();
    for &b in &branch {
        for first in core.neighbors(b) {
            if used.contains(&Edge::new(b, first)) {
                continue;
            }
            let mut path = vec![b, first];
            used.insert(Edge::new(b, first));
            while core.degree(*path.last().unwrap()) == 2 {
                let last = *path.last().unwrap();
                let prev = path[path.len() - 2];
                let next = core.neighbors(last).find(|&w| w != prev)?;
                used.insert(Edge::new(last, next));
                path.push(next);
            }
            paths.push(path);
        }
    }
    Some(KuratowskiSubdivision { kind, branch_vertices: branch, paths })
}

#[cfg(test)]
mod tests;
