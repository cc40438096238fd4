//! Walls: subdivisions of elementary brick walls inside a host graph.
//!
//! Elementary wall coordinates: rows `0..=h`, columns `0..=2h+1`. Row `r`
//! is a horizontal path; a vertical edge joins `(r, c)` and `(r+1, c)` when
//! `c ≡ r (mod 2)`. The two corner positions left with degree one,
//! `(0, 2h+1)` and one end of row `h`, are trimmed. The perimeter then has
//! length `8h - 2`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};

mod finder;
mod generate;
mod packing;

pub use finder::find_wall;
pub use generate::{generate_instance, Family};
pub use packing::{pack_subwalls, packing_threshold, triple_layers, SubwallPacking, TripleLayers};

/// A position in elementary-wall coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub row: usize,
    pub col: usize,
}

impl Pos {
    pub const fn new(row: usize, col: usize) -> Self {
        Pos { row, col }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

pub mod elementary {
    //! Geometry of the elementary wall of height `h`.
    use super::Pos;

    pub fn width(h: usize) -> usize {
        2 * h + 2
    }

    pub fn contains(h: usize, p: Pos) -> bool {
        if p.row > h || p.col >= width(h) {
            return false;
        }
        let trimmed_top = p.row == 0 && p.col == 2 * h + 1;
        let trimmed_bottom = p.row == h && p.col == if h % 2 == 0 { 0 } else { 2 * h + 1 };
        !(trimmed_top || trimmed_bottom)
    }

    /// Positions in row-major order.
    pub fn positions(h: usize) -> Vec<Pos> {
        (0..=h)
            .flat_map(|r| (0..width(h)).map(move |c| Pos::new(r, c)))
            .filter(|&p| contains(h, p))
            .collect()
    }

    fn has_vertical_below(h: usize, p: Pos) -> bool {
        p.row < h && p.col % 2 == p.row % 2 && contains(h, p) && contains(h, Pos::new(p.row + 1, p.col))
    }

    /// Edges as position pairs, each with the smaller position first.
    pub fn edges(h: usize) -> Vec<(Pos, Pos)> {
        let mut out = Vec::new();
        for p in positions(h) {
            let right = Pos::new(p.row, p.col + 1);
            if contains(h, right) {
                out.push((p, right));
            }
            if has_vertical_below(h, p) {
                out.push((p, Pos::new(p.row + 1, p.col)));
            }
        }
        out
    }

    pub fn adjacent(h: usize, a: Pos, b: Pos) -> bool {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        if !contains(h, a) || !contains(h, b) {
            return false;
        }
        (a.row == b.row && a.col + 1 == b.col) || (a.col == b.col && a.row + 1 == b.row && has_vertical_below(h, a))
    }

    /// The perimeter cycle, clockwise from `(0, 0)`.
    pub fn perimeter(h: usize) -> Vec<Pos> {
        let mut cyc = Vec::new();
        let top_end = 2 * h;
        for c in 0..=top_end {
            cyc.push(Pos::new(0, c));
        }
        let mut cur = Pos::new(0, top_end);
        while cur.row < h {
            cur = if has_vertical_below(h, cur) {
                Pos::new(cur.row + 1, cur.col)
            } else if cur.col == 2 * h + 1 {
                Pos::new(cur.row, cur.col - 1)
            } else {
                Pos::new(cur.row, cur.col + 1)
            };
            cyc.push(cur);
        }
        let bottom_start = if h % 2 == 0 { 1 } else { 0 };
        while cur.col > bottom_start {
            cur = Pos::new(h, cur.col - 1);
            cyc.push(cur);
        }
        while cur.row > 0 {
            let up = Pos::new(cur.row - 1, cur.col);
            cur = if has_vertical_below(h, up) {
                up
            } else if cur.col == 0 {
                Pos::new(cur.row, 1)
            } else {
                Pos::new(cur.row, cur.col - 1)
            };
            if cur != Pos::new(0, 0) {
                cyc.push(cur);
            }
        }
        cyc
    }
}

/// A wall of height `height` in a host graph: every elementary position
/// maps to a host vertex and every elementary edge to a host path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    height: usize,
    vertex_map: BTreeMap<Pos, VertexId>,
    // subdivided edges only; full host path including both endpoints
    paths: BTreeMap<(Pos, Pos), Vec<VertexId>>,
    host: Arc<Graph>,
}

/// The elementary wall of height `h` with its identity wall certificate.
/// Vertex ids are assigned in row-major order.
pub fn elementary_wall(h: usize) -> Result<(Graph, Wall)> {
    if h < 2 {
        return Err(Error::InvalidHeight(h));
    }
    let positions = elementary::positions(h);
    let vertex_map: BTreeMap<Pos, VertexId> =
        positions.iter().enumerate().map(|(i, &p)| (p, i as VertexId)).collect();
    let mut g = Graph::with_vertices(0..positions.len() as VertexId, std::iter::empty())?;
    for (a, b) in elementary::edges(h) {
        g.add_edge(vertex_map[&a], vertex_map[&b])?;
    }
    let host = Arc::new(g.clone());
    Ok((g, Wall { height: h, vertex_map, paths: BTreeMap::new(), host }))
}

impl Wall {
    pub fn new(
        height: usize,
        vertex_map: BTreeMap<Pos, VertexId>,
        paths: BTreeMap<(Pos, Pos), Vec<VertexId>>,
        host: Arc<Graph>,
    ) -> Wall {
        Wall { height, vertex_map, paths, host }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn host_arc(&self) -> Arc<Graph> {
        Arc::clone(&self.host)
    }

    /// Same certificate against another host graph (not validated).
    pub fn rehosted(&self, host: Arc<Graph>) -> Wall {
        Wall { host, ..self.clone() }
    }

    pub fn vertex(&self, p: Pos) -> Option<VertexId> {
        self.vertex_map.get(&p).copied()
    }

    pub fn vertex_map(&self) -> &BTreeMap<Pos, VertexId> {
        &self.vertex_map
    }

    /// Host path realizing the elementary edge `a`-`b`, oriented from `a`.
    pub fn edge_path(&self, a: Pos, b: Pos) -> Option<Vec<VertexId>> {
        if !elementary::adjacent(self.height, a, b) {
            return None;
        }
        let key = if a <= b { (a, b) } else { (b, a) };
        let mut path = match self.paths.get(&key) {
            Some(p) => p.clone(),
            None => vec![self.vertex(key.0)?, self.vertex(key.1)?],
        };
        if key.0 != a {
            path.reverse();
        }
        Some(path)
    }

    /// Host cycle of the perimeter, starting at position `(0, 0)`.
    pub fn perimeter(&self) -> Vec<VertexId> {
        self.cycle_through(&elementary::perimeter(self.height))
    }

    fn cycle_through(&self, ring: &[Pos]) -> Vec<VertexId> {
        let mut cyc = Vec::new();
        for i in 0..ring.len() {
            let path = self.edge_path(ring[i], ring[(i + 1) % ring.len()]).expect("ring edge");
            cyc.extend_from_slice(&path[..path.len() - 1]);
        }
        cyc
    }

    /// All host vertices used by the wall.
    pub fn vertices(&self) -> BTreeSet<VertexId> {
        let mut out: BTreeSet<_> = self.vertex_map.values().copied().collect();
        for p in self.paths.values() {
            out.extend(p.iter().copied());
        }
        out
    }

    /// Host edges used by the wall.
    pub fn edges(&self) -> BTreeSet<Edge> {
        elementary::edges(self.height)
            .into_iter()
            .filter_map(|(a, b)| self.edge_path(a, b))
            .flat_map(|p| p.windows(2).map(|w| Edge::new(w[0], w[1])).collect::<Vec<_>>())
            .collect()
    }

    /// Whether the certificate realizes a subdivision of the elementary wall
    /// of its height inside the host.
    pub fn validate(&self) -> bool {
        if self.height < 2 {
            return false;
        }
        let positions = elementary::positions(self.height);
        if self.vertex_map.len() != positions.len() || !positions.iter().all(|p| self.vertex_map.contains_key(p)) {
            return false;
        }
        let mut used: BTreeSet<VertexId> = BTreeSet::new();
        for &v in self.vertex_map.values() {
            if !self.host.contains(v) || !used.insert(v) {
                return false;
            }
        }
        for &(a, b) in self.paths.keys() {
            if a >= b || !elementary::adjacent(self.height, a, b) {
                return false;
            }
        }
        for (a, b) in elementary::edges(self.height) {
            let path = self.edge_path(a, b).unwrap();
            if path.len() < 2 || path[0] != self.vertex_map[&a] || path[path.len() - 1] != self.vertex_map[&b] {
                return false;
            }
            if !path.windows(2).all(|w| self.host.has_edge(w[0], w[1])) {
                return false;
            }
            for &x in &path[1..path.len() - 1] {
                if !self.host.contains(x) || !used.insert(x) {
                    return false;
                }
            }
        }
        true
    }

    /// The subwall of height `height` whose position `(t, c)` sits at
    /// `(origin.row + t, origin.col + c)` of this wall, or at
    /// `(origin.row + t, origin.col + 2*height + 1 - c)` when `mirrored`.
    pub fn subwall(&self, origin: Pos, height: usize, mirrored: bool) -> Result<Wall> {
        if height < 2 {
            return Err(Error::InvalidHeight(height));
        }
        let w = elementary::width(height);
        let to_parent = |p: Pos| {
            let col = if mirrored { origin.col + w - 1 - p.col } else { origin.col + p.col };
            Pos::new(origin.row + p.row, col)
        };
        let mut vertex_map = BTreeMap::new();
        for p in elementary::positions(height) {
            let q = to_parent(p);
            let v = self
                .vertex(q)
                .ok_or_else(|| Error::Precondition(format!("subwall position {q} outside the wall")))?;
            vertex_map.insert(p, v);
        }
        let mut paths = BTreeMap::new();
        for (a, b) in elementary::edges(height) {
            let path = self
                .edge_path(to_parent(a), to_parent(b))
                .ok_or_else(|| Error::Precondition(format!("subwall edge {a}-{b} is not a wall edge")))?;
            if path.len() > 2 {
                paths.insert((a, b), path);
            }
        }
        Ok(Wall { height, vertex_map, paths, host: Arc::clone(&self.host) })
    }

    /// The largest proper subwall nested inside: one ring of bricks removed.
    /// Its perimeter is vertex-disjoint from this perimeter and adjacent to it.
    pub fn peel(&self) -> Result<Wall> {
        if self.height < 4 {
            return Err(Error::InvalidHeight(self.height));
        }
        self.subwall(Pos::new(1, 2), self.height - 2, true)
    }

    /// Text certificate: `height h`, then `pos (r,c) -> v` for every
    /// position, then `pos (r,c)-(r,c) -> v1 v2 ...` for subdivided edges.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "height {}", self.height).unwrap();
        for (p, v) in &self.vertex_map {
            writeln!(out, "pos {p} -> {v}").unwrap();
        }
        for ((a, b), path) in &self.paths {
            let list: Vec<String> = path.iter().map(|x| x.to_string()).collect();
            writeln!(out, "pos {a}-{b} -> {}", list.join(" ")).unwrap();
        }
        out
    }

    pub fn parse(text: &str, host: Arc<Graph>) -> Result<Wall> {
        let mut height = None;
        let mut vertex_map = BTreeMap::new();
        let mut paths = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |msg: &str| Error::Parse { line: i + 1, msg: msg.to_string() };
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("height") {
                height = Some(rest.trim().parse::<usize>().map_err(|_| err("bad height"))?);
                continue;
            }
            let rest = line.strip_prefix("pos").ok_or_else(|| err("expected `pos` or `height`"))?;
            let (lhs, rhs) = rest.split_once("->").ok_or_else(|| err("missing `->`"))?;
            let ids: Vec<VertexId> = rhs
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| err("bad vertex id")))
                .collect::<Result<_>>()?;
            let lhs = lhs.trim();
            match lhs.split_once(")-(") {
                None => {
                    let p = parse_pos(lhs).ok_or_else(|| err("bad position"))?;
                    if ids.len() != 1 {
                        return Err(err("position maps to exactly one vertex"));
                    }
                    vertex_map.insert(p, ids[0]);
                }
                Some((a, b)) => {
                    let a = parse_pos(&format!("{a})")).ok_or_else(|| err("bad position"))?;
                    let b = parse_pos(&format!("({b}")).ok_or_else(|| err("bad position"))?;
                    let (key, path) = if a <= b { ((a, b), ids) } else { ((b, a), ids.into_iter().rev().collect()) };
                    paths.insert(key, path);
                }
            }
        }
        let height = height.ok_or(Error::Parse { line: 0, msg: "missing height".into() })?;
        Ok(Wall { height, vertex_map, paths, host })
    }
}

fn parse_pos(s: &str) -> Option<Pos> {
    let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
    let (r, c) = inner.split_once(',')?;
    Some(Pos::new(r.trim().parse().ok()?, c.trim().parse().ok()?))
}
