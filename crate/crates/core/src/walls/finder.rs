//! Certified wall recognition.
//!
//! After stripping pendant trees, a component that is a subdivided wall has
//! maximum degree 3. Suppressing its degree-2 vertices gives a cubic
//! multigraph whose embedding is unique up to reflection, so a wall is
//! recognized by matching rotation systems dart by dart against the
//! elementary wall with the same number of branch vertices.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::planarity::embed;

use super::{elementary, elementary_wall, Pos, Wall};

/// Looks for a wall of height at least `min_height`. A valid `hint` is
/// returned as is; otherwise each component of the 2-core is tested for
/// being a subdivided wall. `None` means nothing was found, not that no
/// wall exists.
pub fn find_wall(g: &Graph, min_height: usize, hint: Option<&Wall>) -> Result<Option<Wall>> {
    if embed(g).is_none() {
        return Err(Error::Precondition("find_wall needs a planar graph".into()));
    }
    let host = Arc::new(g.clone());
    if let Some(h) = hint {
        let w = h.rehosted(Arc::clone(&host));
        if w.height() >= min_height && w.validate() {
            return Ok(Some(w));
        }
    }
    let core = two_core(g);
    for comp in core.component_sets() {
        let part = core.induced_subgraph(&comp)?;
        if let Some(w) = recognize(&part, Arc::clone(&host)) {
            if w.height() >= min_height && w.validate() {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

fn two_core(g: &Graph) -> Graph {
    let mut deg: BTreeMap<VertexId, usize> = g.vertices().map(|v| (v, g.degree(v))).collect();
    let mut removed = BTreeSet::new();
    let mut stack: Vec<VertexId> = deg.iter().filter(|&(_, &d)| d < 2).map(|(&v, _)| v).collect();
    while let Some(v) = stack.pop() {
        if !removed.insert(v) {
            continue;
        }
        for w in g.neighbors(v) {
            if removed.contains(&w) {
                continue;
            }
            let d = deg.get_mut(&w).unwrap();
            *d -= 1;
            if *d == 1 {
                stack.push(w);
            }
        }
    }
    g.delete_vertices(&removed).expect("removed vertices come from g")
}

/// Degree-2 vertices suppressed: chains between branch vertices, with the
/// rotation at each branch vertex expressed in darts. Dart `2c` runs along
/// chain `c` from its first vertex, dart `2c + 1` from its last.
struct Topology {
    chains: Vec<Vec<VertexId>>,
    rot: Vec<Vec<usize>>,
    origin: Vec<usize>,
    slot: Vec<usize>,
}

impl Topology {
    fn build(g: &Graph) -> Option<Topology> {
        if g.vertices().any(|v| g.degree(v) > 3 || g.degree(v) < 2) {
            return None;
        }
        let emb = embed(g)?;
        let branch: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) == 3).collect();
        if branch.is_empty() {
            return None;
        }
        let index: HashMap<VertexId, usize> = branch.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut chains = Vec::new();
        let mut dart_of: HashMap<(VertexId, VertexId), usize> = HashMap::new();
        for &b in &branch {
            for &w in emb.rotation(b) {
                if dart_of.contains_key(&(b, w)) {
                    continue;
                }
                let mut path = vec![b, w];
                while g.degree(*path.last().unwrap()) == 2 {
                    let cur = path[path.len() - 1];
                    let prev = path[path.len() - 2];
                    let next = g.neighbors(cur).find(|&x| x != prev)?;
                    path.push(next);
                }
                let c = chains.len();
                dart_of.insert((b, w), 2 * c);
                dart_of.insert((path[path.len() - 1], path[path.len() - 2]), 2 * c + 1);
                chains.push(path);
            }
        }
        let mut origin = vec![0; 2 * chains.len()];
        let mut slot = vec![0; 2 * chains.len()];
        let rot: Vec<Vec<usize>> = branch
            .iter()
            .map(|&b| emb.rotation(b).iter().map(|&w| dart_of[&(b, w)]).collect())
            .collect();
        for (i, darts) in rot.iter().enumerate() {
            for (j, &d) in darts.iter().enumerate() {
                origin[d] = i;
                slot[d] = j;
            }
        }
        debug_assert!(chains.iter().all(|p| index.contains_key(&p[p.len() - 1])));
        Some(Topology { chains, rot, origin, slot })
    }

    fn darts(&self) -> usize {
        2 * self.chains.len()
    }

    fn turn(&self, d: usize, forward: bool) -> usize {
        let r = &self.rot[self.origin[d]];
        let j = self.slot[d];
        if forward {
            r[(j + 1) % r.len()]
        } else {
            r[(j + r.len() - 1) % r.len()]
        }
    }

    /// Face length of every dart, tracing faces by `turn(rev d, forward)`.
    fn face_sizes(&self, forward: bool) -> Vec<usize> {
        let mut size = vec![0; self.darts()];
        for start in 0..self.darts() {
            if size[start] > 0 {
                continue;
            }
            let mut walk = vec![start];
            let mut d = self.turn(start ^ 1, forward);
            while d != start {
                walk.push(d);
                d = self.turn(d ^ 1, forward);
            }
            for &x in &walk {
                size[x] = walk.len();
            }
        }
        size
    }

    /// Extends `d0 -> x0` to a dart bijection respecting reversal and
    /// rotation (reversed rotation when `mirror`).
    fn match_from(&self, other: &Topology, d0: usize, x0: usize, mirror: bool) -> Option<Vec<usize>> {
        const NONE: usize = usize::MAX;
        let mut phi = vec![NONE; self.darts()];
        let mut used = vec![false; other.darts()];
        let mut stack = Vec::new();
        let mut assign = |d: usize, x: usize, phi: &mut Vec<usize>, stack: &mut Vec<(usize, usize)>| -> bool {
            if phi[d] == NONE {
                if used[x] {
                    return false;
                }
                used[x] = true;
                phi[d] = x;
                stack.push((d, x));
                true
            } else {
                phi[d] == x
            }
        };
        assign(d0, x0, &mut phi, &mut stack);
        while let Some((d, x)) = stack.pop() {
            if !assign(d ^ 1, x ^ 1, &mut phi, &mut stack) {
                return None;
            }
            if !assign(self.turn(d, true), other.turn(x, !mirror), &mut phi, &mut stack) {
                return None;
            }
        }
        Some(phi)
    }
}

fn branch_count(h: usize) -> usize {
    let g = elementary_wall(h).expect("h >= 2").0;
    g.vertices().filter(|&v| g.degree(v) == 3).count()
}

fn recognize(part: &Graph, host: Arc<Graph>) -> Option<Wall> {
    let topo = Topology::build(part)?;
    let b = topo.rot.len();
    let mut h = 2;
    while branch_count(h) < b {
        h += 1;
    }
    if branch_count(h) != b {
        return None;
    }
    let (eg, _) = elementary_wall(h).ok()?;
    let etopo = Topology::build(&eg)?;
    if etopo.chains.len() != topo.chains.len() {
        return None;
    }
    let positions = elementary::positions(h);
    let esizes = etopo.face_sizes(false);
    let d0 = (0..etopo.darts()).max_by_key(|&d| (esizes[d], usize::MAX - d))?;
    for mirror in [false, true] {
        let sizes = topo.face_sizes(mirror);
        for x0 in (0..topo.darts()).filter(|&x| sizes[x] == esizes[d0]) {
            let Some(phi) = etopo.match_from(&topo, d0, x0, mirror) else { continue };
            if let Some(w) = assemble(&etopo, &topo, &phi, &positions, h, Arc::clone(&host)) {
                return Some(w);
            }
        }
    }
    None
}

fn assemble(
    etopo: &Topology,
    topo: &Topology,
    phi: &[usize],
    positions: &[Pos],
    h: usize,
    host: Arc<Graph>,
) -> Option<Wall> {
    let mut vertex_map = BTreeMap::new();
    let mut paths = BTreeMap::new();
    for (c, echain) in etopo.chains.iter().enumerate() {
        let x = phi[2 * c];
        let mut hchain = topo.chains[x / 2].clone();
        if x % 2 == 1 {
            hchain.reverse();
        }
        let le = echain.len();
        if hchain.len() < le {
            return None;
        }
        let at = |i: usize| if i + 1 == le { hchain[hchain.len() - 1] } else { hchain[i] };
        for i in 0..le {
            vertex_map.insert(positions[echain[i] as usize], at(i));
        }
        for i in 0..le - 1 {
            let (a, b) = (positions[echain[i] as usize], positions[echain[i + 1] as usize]);
            let seg: Vec<VertexId> = if i + 2 == le { hchain[i..].to_vec() } else { hchain[i..=i + 1].to_vec() };
            if seg.len() > 2 {
                let (key, seg) = if a <= b { ((a, b), seg) } else { ((b, a), seg.into_iter().rev().collect()) };
                paths.insert(key, seg);
            }
        }
    }
    Some(Wall::new(h, vertex_map, paths, host))
}
