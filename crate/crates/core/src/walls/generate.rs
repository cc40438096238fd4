use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{families, Edge, Graph, VertexId};

use super::{elementary, elementary_wall, Pos};

/// Instance families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `K_{3,r}` with the three-vertex side made a triangle.
    Gr { r: usize },
    /// `K5` plus, for every `K5` edge, a parallel path through `p` new vertices.
    GStar { p: usize },
    /// `GStar` without the original `K5` edges.
    GStarMinor { p: usize },
    /// `K5` with every edge subdivided `p` times.
    SubdividedK5 { p: usize },
    /// The elementary wall of the given height.
    Wall { height: usize },
    /// The elementary wall plus one extra vertex per attachment list, joined
    /// to the wall vertices at the listed positions.
    WallPlusApex { height: usize, attachments: Vec<Vec<Pos>> },
    /// `m` distinct edges on `n` vertices drawn uniformly from `seed`.
    Random { n: usize, m: usize, seed: u64 },
}

pub fn generate_instance(family: &Family) -> Result<Graph> {
    match family {
        Family::Gr { r } => {
            if *r < 3 {
                return Err(Error::InvalidParameter(format!("r = {r}, need r >= 3")));
            }
            let r = *r as VertexId;
            let mut g = families::complete_bipartite(3, r);
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                g.add_edge(a, b)?;
            }
            Ok(g)
        }
        Family::GStar { p } | Family::GStarMinor { p } => {
            if *p < 1 {
                return Err(Error::InvalidParameter("p must be at least 1".into()));
            }
            let k5 = families::complete(5);
            let mut g = Graph::with_vertices(0..5, std::iter::empty())?;
            if matches!(family, Family::GStar { .. }) {
                g = k5.clone();
            }
            let mut next: VertexId = 5;
            for e in k5.edges() {
                let mut prev = e.u;
                for _ in 0..*p {
                    g.add_edge(prev, next)?;
                    prev = next;
                    next += 1;
                }
                g.add_edge(prev, e.v)?;
            }
            Ok(g)
        }
        Family::SubdividedK5 { p } => Ok(families::subdivide_all(&families::complete(5), *p)),
        Family::Wall { height } => Ok(elementary_wall(*height)?.0),
        Family::WallPlusApex { height, attachments } => {
            let (mut g, wall) = elementary_wall(*height)?;
            let mut next = g.max_vertex().map_or(0, |v| v + 1);
            for list in attachments {
                g.add_vertex(next);
                for &p in list {
                    if !elementary::contains(*height, p) {
                        return Err(Error::InvalidParameter(format!("no wall position {p}")));
                    }
                    g.add_edge(next, wall.vertex(p).unwrap())?;
                }
                next += 1;
            }
            Ok(g)
        }
        Family::Random { n, m, seed } => {
            let n = *n;
            let pairs = n * n.saturating_sub(1) / 2;
            if *m > pairs {
                return Err(Error::InvalidParameter(format!("{m} edges do not fit on {n} vertices")));
            }
            let mut all: Vec<Edge> = (0..n as VertexId)
                .flat_map(|a| (a + 1..n as VertexId).map(move |b| Edge::new(a, b)))
                .collect();
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            all.shuffle(&mut rng);
            let chosen: BTreeSet<Edge> = all.into_iter().take(*m).collect();
            Graph::with_vertices(0..n as VertexId, chosen.into_iter().map(|e| (e.u, e.v)))
        }
    }
}
