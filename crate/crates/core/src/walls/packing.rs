use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Edge, VertexId};
use crate::planarity::Embedding;

use super::{Pos, Wall};

/// `2k+1` disjoint subwalls of height `12k+8` inside a wall, each with its
/// peeled inner subwall of height `12k+6`.
#[derive(Debug, Clone)]
pub struct SubwallPacking {
    pub outer_wall: Wall,
    pub subwalls: Vec<Wall>,
    pub inner_subwalls: Vec<Wall>,
}

/// Nested triple layers around an inner subwall, outermost first.
#[derive(Debug, Clone)]
pub struct TripleLayers {
    /// `(outer, middle, inner)` host cycles of each layer.
    pub layers: Vec<[Vec<VertexId>; 3]>,
    /// Vertices on a layer's cycles or strictly between its outer and inner cycle.
    pub between_sets: Vec<BTreeSet<VertexId>>,
    pub central_edge: Edge,
}

/// `⌈√(2k+1)⌉` subwalls per row and per column.
pub fn grid_side(k: usize) -> usize {
    let cells = 2 * k + 1;
    let mut s = 1;
    while s * s < cells {
        s += 1;
    }
    s
}

/// A wall must be strictly taller than this to hold the packing.
pub fn packing_threshold(k: usize) -> usize {
    grid_side(k) * (12 * k + 10)
}

/// Places the subwalls row-major in a `⌈√(2k+1)⌉` grid, top-left first,
/// strictly inside the perimeter of `w` and one brick apart.
pub fn pack_subwalls(w: &Wall, k: usize) -> Result<SubwallPacking> {
    let threshold = packing_threshold(k);
    if w.height() <= threshold {
        return Err(Error::Threshold { height: w.height(), threshold });
    }
    let s = grid_side(k);
    let hs = 12 * k + 8;
    let mut subwalls = Vec::with_capacity(2 * k + 1);
    let mut inner_subwalls = Vec::with_capacity(2 * k + 1);
    for i in 0..2 * k + 1 {
        let (a, b) = (i / s, i % s);
        let r0 = 1 + a * (hs + 2);
        let mut c0 = 2 + b * (2 * hs + 4);
        if (c0 + r0) % 2 == 1 {
            c0 += 1;
        }
        if r0 + hs > w.height() - 1 || c0 + 2 * hs + 1 > 2 * w.height() - 1 {
            return Err(Error::Internal(format!("subwall {i} does not fit")));
        }
        let sub = w.subwall(Pos::new(r0, c0), hs, false)?;
        inner_subwalls.push(sub.peel()?);
        subwalls.push(sub);
    }
    let packing = SubwallPacking { outer_wall: w.clone(), subwalls, inner_subwalls };
    packing.check()?;
    Ok(packing)
}

impl SubwallPacking {
    fn check(&self) -> Result<()> {
        let host = self.outer_wall.host();
        let sets: Vec<BTreeSet<VertexId>> = self.subwalls.iter().map(Wall::vertices).collect();
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if !sets[i].is_disjoint(&sets[j]) || host.sets_adjacent(&sets[i], &sets[j]) {
                    return Err(Error::Internal(format!("subwalls {i} and {j} touch")));
                }
            }
            let outer: BTreeSet<_> = self.subwalls[i].perimeter().into_iter().collect();
            let inner: BTreeSet<_> = self.inner_subwalls[i].perimeter().into_iter().collect();
            if !outer.is_disjoint(&inner) {
                return Err(Error::Internal(format!("perimeters of subwall {i} meet")));
            }
        }
        Ok(())
    }
}

/// Builds `2k+1` nested triple layers from the concentric perimeters of an
/// inner subwall of height `12k+6`: peeling repeatedly down to height 2
/// gives `6k+3` perimeters, grouped in threes from the outside in.
pub fn triple_layers(inner_subwall: &Wall, k: usize, embedding: &Embedding) -> Result<TripleLayers> {
    if inner_subwall.height() != 12 * k + 6 {
        return Err(Error::InvalidHeight(inner_subwall.height()));
    }
    let mut walls = vec![inner_subwall.clone()];
    while walls.last().unwrap().height() > 2 {
        let next = walls.last().unwrap().peel()?;
        walls.push(next);
    }
    debug_assert_eq!(walls.len(), 6 * k + 3);
    let innermost = walls.last().unwrap();
    let path = innermost
        .edge_path(Pos::new(1, 2), Pos::new(1, 3))
        .ok_or_else(|| Error::Internal("innermost wall lacks its central edge".into()))?;
    let central_edge = Edge::new(path[0], path[1]);

    let perimeters: Vec<Vec<VertexId>> = walls.iter().map(Wall::perimeter).collect();
    let emb = embedding.rooted_outside(&perimeters[0], central_edge.u)?;
    let regions = perimeters
        .iter()
        .map(|c| emb.cycle_interior(c))
        .collect::<Result<Vec<_>>>()?;
    for (i, r) in regions.iter().enumerate() {
        if !r.interior.contains(&central_edge.u) || !r.interior.contains(&central_edge.v) {
            return Err(Error::Internal(format!("central edge escapes perimeter {i}")));
        }
    }

    let mut layers = Vec::with_capacity(2 * k + 1);
    let mut between_sets = Vec::with_capacity(2 * k + 1);
    for i in 0..2 * k + 1 {
        let (o, m, n) = (3 * i, 3 * i + 1, 3 * i + 2);
        let mut y: BTreeSet<VertexId> = perimeters[o].iter().copied().collect();
        y.extend(regions[o].interior.difference(&regions[n].interior).copied());
        between_sets.push(y);
        layers.push([perimeters[o].clone(), perimeters[m].clone(), perimeters[n].clone()]);
    }
    Ok(TripleLayers { layers, between_sets, central_edge })
}
