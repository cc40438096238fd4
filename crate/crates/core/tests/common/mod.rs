//! Brute-force reference implementations, independent of the library's
//! planarity test and search code. Only the plain graph type is shared.
#![allow(dead_code)]

use std::collections::BTreeSet;

use planar_contraction::{Edge, Graph, VertexId};

/// Adjacency matrix over the graph's vertices in sorted order.
fn matrix(g: &Graph) -> (Vec<VertexId>, Vec<Vec<bool>>) {
    let ids: Vec<VertexId> = g.vertices().collect();
    let n = ids.len();
    let mut adj = vec![vec![false; n]; n];
    for e in g.edges() {
        let a = ids.binary_search(&e.u).unwrap();
        let b = ids.binary_search(&e.v).unwrap();
        adj[a][b] = true;
        adj[b][a] = true;
    }
    (ids, adj)
}

/// Calls `f` with every set partition of `0..n`, given as a block label per element.
fn for_each_partition(n: usize, f: &mut dyn FnMut(&[usize], usize) -> bool) -> bool {
    fn rec(i: usize, n: usize, labels: &mut Vec<usize>, blocks: usize, f: &mut dyn FnMut(&[usize], usize) -> bool) -> bool {
        if i == n {
            return f(labels, blocks);
        }
        for b in 0..=blocks {
            labels[i] = b;
            if rec(i + 1, n, labels, blocks.max(b + 1), f) {
                return true;
            }
        }
        false
    }
    let mut labels = vec![0; n];
    rec(0, n, &mut labels, 0, f)
}

fn blocks_connected(adj: &[Vec<bool>], labels: &[usize], blocks: usize) -> bool {
    let n = labels.len();
    for b in 0..blocks {
        let members: Vec<usize> = (0..n).filter(|&i| labels[i] == b).collect();
        let mut seen = vec![false; n];
        let mut stack = vec![members[0]];
        seen[members[0]] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &members {
                if !seen[y] && adj[x][y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        if count != members.len() {
            return false;
        }
    }
    true
}

fn quotient(adj: &[Vec<bool>], labels: &[usize], blocks: usize) -> Vec<Vec<bool>> {
    let mut q = vec![vec![false; blocks]; blocks];
    for i in 0..labels.len() {
        for j in 0..labels.len() {
            if adj[i][j] && labels[i] != labels[j] {
                q[labels[i]][labels[j]] = true;
            }
        }
    }
    q
}

fn has_k5_subgraph(q: &[Vec<bool>]) -> bool {
    subsets(q.len(), 5).into_iter().any(|s| s.iter().all(|&x| s.iter().all(|&y| x == y || q[x][y])))
}

fn has_k33_subgraph(q: &[Vec<bool>]) -> bool {
    let b = q.len();
    for s in subsets(b, 6) {
        for left in subsets(6, 3) {
            let l: Vec<usize> = left.iter().map(|&i| s[i]).collect();
            let r: Vec<usize> = s.iter().copied().filter(|x| !l.contains(x)).collect();
            if l.iter().all(|&x| r.iter().all(|&y| q[x][y])) {
                return true;
            }
        }
    }
    false
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            out.push((0..n).filter(|&i| mask >> i & 1 == 1).collect());
        }
    }
    out
}

/// Whether `g` has a `K5` or `K3,3` minor: some partition into connected
/// branch sets has a quotient containing one of them as a subgraph.
pub fn has_kuratowski_minor(g: &Graph) -> bool {
    let (_, adj) = matrix(g);
    let n = adj.len();
    if n < 5 {
        return false;
    }
    for_each_partition(n, &mut |labels, blocks| {
        if blocks < 5 || !blocks_connected(&adj, labels, blocks) {
            return false;
        }
        let q = quotient(&adj, labels, blocks);
        has_k5_subgraph(&q) || (blocks >= 6 && has_k33_subgraph(&q))
    })
}

/// Planarity by Wagner's theorem and the brute-force minor test.
pub fn brute_planar(g: &Graph) -> bool {
    !has_kuratowski_minor(g)
}

/// Contract an edge keeping the smaller id; independent of the library.
pub fn contract(g: &Graph, e: Edge) -> Graph {
    let (keep, gone) = (e.u.min(e.v), e.u.max(e.v));
    let mut out = Graph::new();
    for v in g.vertices().filter(|&v| v != gone) {
        out.add_vertex(v);
    }
    for f in g.edges() {
        let a = if f.u == gone { keep } else { f.u };
        let b = if f.v == gone { keep } else { f.v };
        if a != b {
            out.add_edge(a, b).unwrap();
        }
    }
    out
}

/// Whether some sequence of at most `k` single contractions makes `g` planar.
pub fn brute_contractible(g: &Graph, k: usize) -> bool {
    if brute_planar(g) {
        return true;
    }
    k > 0 && g.edge_list().into_iter().any(|e| brute_contractible(&contract(g, e), k - 1))
}

/// Least number of sequential contractions, up to `cap`.
pub fn brute_min_contractions(g: &Graph, cap: usize) -> Option<usize> {
    (0..=cap).find(|&k| brute_contractible(g, k))
}

/// Whether deleting some set of at most `k` vertices leaves a planar graph,
/// judged by `planar`.
pub fn brute_apex_exists(g: &Graph, k: usize, planar: &dyn Fn(&Graph) -> bool) -> bool {
    let ids: Vec<VertexId> = g.vertices().collect();
    let n = ids.len();
    (0..=k.min(n)).any(|size| {
        subsets(n, size).into_iter().any(|s| {
            let del: BTreeSet<VertexId> = s.iter().map(|&i| ids[i]).collect();
            planar(&g.delete_vertices(&del).unwrap())
        })
    })
}

/// Deterministic pseudo-random graph from a 64-bit state (xorshift).
pub fn random_graph(n: u32, edge_percent: u64, state: &mut u64) -> Graph {
    let mut g = Graph::with_vertices(0..n, std::iter::empty()).unwrap();
    for a in 0..n {
        for b in a + 1..n {
            *state ^= *state << 13;
            *state ^= *state >> 7;
            *state ^= *state << 17;
            if *state % 100 < edge_percent {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

/// All labeled graphs on `n` vertices.
pub fn all_graphs(n: u32) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(u32, u32)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let count = 1u64 << pairs.len();
    (0..count).map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p);
        Graph::with_vertices(0..n, edges).unwrap()
    })
}
