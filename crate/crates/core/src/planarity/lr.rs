//! Left-right planarity test with embedding construction, on a compact
//! index graph. All three DFS passes use explicit stacks.

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Interval {
    low: usize,
    high: usize,
}

impl Interval {
    const EMPTY: Interval = Interval { low: NONE, high: NONE };

    fn is_empty(&self) -> bool {
        self.low == NONE && self.high == NONE
    }
}

#[derive(Debug, Clone, Copy)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn new() -> Self {
        ConflictPair { left: Interval::EMPTY, right: Interval::EMPTY }
    }

    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct Lr {
    adj: Vec<Vec<(usize, usize)>>,
    src: Vec<usize>,
    dst: Vec<usize>,
    oriented: Vec<bool>,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<i64>,
    out: Vec<Vec<usize>>,
    roots: Vec<usize>,
    refs: Vec<usize>,
    side: Vec<i8>,
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<usize>,
}

/// Returns, for every vertex, its neighbors in clockwise order, or `None`
/// if the graph is not planar. `edges` must be simple.
pub(crate) fn planar_rotation(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let m = edges.len();
    if n > 2 && m > 3 * n - 6 {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    for (e, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    let mut lr = Lr {
        adj,
        src: vec![NONE; m],
        dst: vec![NONE; m],
        oriented: vec![false; m],
        height: vec![NONE; n],
        parent_edge: vec![NONE; n],
        lowpt: vec![0; m],
        lowpt2: vec![0; m],
        nesting: vec![0; m],
        out: vec![Vec::new(); n],
        roots: Vec::new(),
        refs: vec![NONE; m],
        side: vec![1; m],
        stack: Vec::new(),
        stack_bottom: vec![0; m],
        lowpt_edge: vec![NONE; m],
    };
    for v in 0..n {
        if lr.height[v] == NONE {
            lr.height[v] = 0;
            lr.roots.push(v);
            lr.orient(v);
        }
    }
    let ordered = lr.ordered_by_nesting();
    for i in 0..lr.roots.len() {
        let r = lr.roots[i];
        if !lr.test(r, &ordered) {
            return None;
        }
    }
    for e in 0..m {
        let s = lr.sign(e) as i64;
        lr.nesting[e] *= s;
    }
    let ordered = lr.ordered_by_nesting();
    Some(lr.embed(n, &ordered))
}

impl Lr {
    fn ordered_by_nesting(&self) -> Vec<Vec<usize>> {
        self.out
            .iter()
            .map(|es| {
                let mut es = es.clone();
                es.sort_by_key(|&e| self.nesting[e]);
                es
            })
            .collect()
    }

    fn orient(&mut self, root: usize) {
        // (vertex, next adjacency index, waiting for the child below)
        let mut stack = vec![(root, 0usize, false)];
        while let Some(frame) = stack.last_mut() {
            let (v, i) = (frame.0, frame.1);
            if frame.2 {
                frame.2 = false;
                frame.1 += 1;
                let e = self.adj[v][i].1;
                self.finish_orient(v, e);
                continue;
            }
            if i == self.adj[v].len() {
                stack.pop();
                continue;
            }
            let (w, e) = self.adj[v][i];
            if self.oriented[e] {
                frame.1 += 1;
                continue;
            }
            self.oriented[e] = true;
            self.src[e] = v;
            self.dst[e] = w;
            self.out[v].push(e);
            self.lowpt[e] = self.height[v];
            self.lowpt2[e] = self.height[v];
            if self.height[w] == NONE {
                self.parent_edge[w] = e;
                self.height[w] = self.height[v] + 1;
                frame.2 = true;
                stack.push((w, 0, false));
            } else {
                self.lowpt[e] = self.height[w];
                frame.1 += 1;
                self.finish_orient(v, e);
            }
        }
    }

    fn finish_orient(&mut self, v: usize, e: usize) {
        self.nesting[e] = 2 * self.lowpt[e] as i64;
        if self.lowpt2[e] < self.height[v] {
            self.nesting[e] += 1;
        }
        let pe = self.parent_edge[v];
        if pe != NONE {
            if self.lowpt[e] < self.lowpt[pe] {
                self.lowpt2[pe] = self.lowpt[pe].min(self.lowpt2[e]);
                self.lowpt[pe] = self.lowpt[e];
            } else if self.lowpt[e] > self.lowpt[pe] {
                self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt[e]);
            } else {
                self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt2[e]);
            }
        }
    }

    fn test(&mut self, root: usize, ordered: &[Vec<usize>]) -> bool {
        let mut stack = vec![(root, 0usize, false)];
        while let Some(frame) = stack.last_mut() {
            let (v, i) = (frame.0, frame.1);
            if frame.2 {
                frame.2 = false;
                frame.1 += 1;
                if !self.integrate(v, ordered[v][i], ordered) {
                    return false;
                }
                continue;
            }
            if i == ordered[v].len() {
                stack.pop();
                self.trim_back_edges(v);
                continue;
            }
            let ei = ordered[v][i];
            let w = self.dst[ei];
            self.stack_bottom[ei] = self.stack.len();
            if self.parent_edge[w] == ei {
                frame.2 = true;
                stack.push((w, 0, false));
            } else {
                frame.1 += 1;
                self.lowpt_edge[ei] = ei;
                self.stack.push(ConflictPair { left: Interval::EMPTY, right: Interval { low: ei, high: ei } });
                if !self.integrate(v, ei, ordered) {
                    return false;
                }
            }
        }
        true
    }

    // Integrates the return edges of `ei` into the constraints of v's parent edge.
    fn integrate(&mut self, v: usize, ei: usize, ordered: &[Vec<usize>]) -> bool {
        if self.lowpt[ei] < self.height[v] {
            let e = self.parent_edge[v];
            if ei == ordered[v][0] {
                self.lowpt_edge[e] = self.lowpt_edge[ei];
            } else if !self.add_constraints(ei, e) {
                return false;
            }
        }
        true
    }

    fn conflicting(&self, iv: Interval, b: usize) -> bool {
        !iv.is_empty() && self.lowpt[iv.high] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low];
        }
        self.lowpt[p.left.low].min(self.lowpt[p.right.low])
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::new();
        // merge return edges of ei into p.right
        loop {
            let mut q = self.stack.pop().expect("conflict stack underflow");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            if self.lowpt[q.right.low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.refs[p.right.low] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.refs[q.right.low] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        // merge conflicting return edges of earlier siblings into p.left
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(top.left, ei) || self.conflicting(top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(q.right, ei) {
                q.swap();
            }
            if self.conflicting(q.right, ei) {
                return false;
            }
            if p.right.low != NONE {
                self.refs[p.right.low] = q.right.high;
            }
            if q.right.low != NONE {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.refs[p.left.low] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn trim_back_edges(&mut self, v: usize) {
        let e = self.parent_edge[v];
        if e == NONE {
            return;
        }
        let u = self.src[e];
        // drop entire conflict pairs returning to u
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if p.left.low != NONE {
                self.side[p.left.low] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while p.left.high != NONE && self.dst[p.left.high] == u {
                p.left.high = self.refs[p.left.high];
            }
            if p.left.high == NONE && p.left.low != NONE {
                self.refs[p.left.low] = p.right.low;
                self.side[p.left.low] = -1;
                p.left.low = NONE;
            }
            while p.right.high != NONE && self.dst[p.right.high] == u {
                p.right.high = self.refs[p.right.high];
            }
            if p.right.high == NONE && p.right.low != NONE {
                self.refs[p.right.low] = p.left.low;
                self.side[p.right.low] = -1;
                p.right.low = NONE;
            }
            self.stack.push(p);
        }
        // side of e is the side of a highest return edge
        if self.lowpt[e] < self.height[u] {
            let top = self.stack.last().expect("return edge without constraint");
            let (hl, hr) = (top.left.high, top.right.high);
            self.refs[e] = if hl != NONE && (hr == NONE || self.lowpt[hl] > self.lowpt[hr]) { hl } else { hr };
        }
    }

    fn sign(&mut self, e: usize) -> i8 {
        let mut chain = Vec::new();
        let mut x = e;
        while self.refs[x] != NONE {
            chain.push(x);
            x = self.refs[x];
        }
        let mut s = self.side[x];
        for &y in chain.iter().rev() {
            self.side[y] *= s;
            self.refs[y] = NONE;
            s = self.side[y];
        }
        self.side[e]
    }

    fn embed(&self, n: usize, ordered: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let m = self.src.len();
        let mut rot = Rotation { cw: vec![NONE; 2 * m], ccw: vec![NONE; 2 * m], first: vec![NONE; n] };
        for v in 0..n {
            let mut prev = NONE;
            for &e in &ordered[v] {
                rot.add_cw(v, 2 * e, prev);
                prev = 2 * e;
            }
        }
        let mut left_ref = vec![NONE; n];
        let mut right_ref = vec![NONE; n];
        for &root in &self.roots {
            let mut stack = vec![(root, 0usize)];
            while let Some(frame) = stack.last_mut() {
                let (v, i) = *frame;
                if i == ordered[v].len() {
                    stack.pop();
                    continue;
                }
                frame.1 += 1;
                let e = ordered[v][i];
                let w = self.dst[e];
                if self.parent_edge[w] == e {
                    rot.add_first(w, 2 * e + 1);
                    left_ref[v] = 2 * e;
                    right_ref[v] = 2 * e;
                    stack.push((w, 0));
                } else if self.side[e] == 1 {
                    rot.add_cw(w, 2 * e + 1, right_ref[w]);
                } else {
                    rot.add_ccw(w, 2 * e + 1, left_ref[w]);
                    left_ref[w] = 2 * e + 1;
                }
            }
        }
        (0..n)
            .map(|v| {
                let mut order = Vec::new();
                let start = rot.first[v];
                if start == NONE {
                    return order;
                }
                let mut d = start;
                loop {
                    let e = d / 2;
                    order.push(if d % 2 == 0 { self.dst[e] } else { self.src[e] });
                    d = rot.cw[d];
                    if d == start {
                        break;
                    }
                }
                order
            })
            .collect()
    }
}

// Circular doubly linked dart lists per vertex.
struct Rotation {
    cw: Vec<usize>,
    ccw: Vec<usize>,
    first: Vec<usize>,
}

impl Rotation {
    fn add_cw(&mut self, v: usize, d: usize, reference: usize) {
        if reference == NONE {
            self.cw[d] = d;
            self.ccw[d] = d;
            self.first[v] = d;
        } else {
            let next = self.cw[reference];
            self.cw[reference] = d;
            self.ccw[d] = reference;
            self.cw[d] = next;
            self.ccw[next] = d;
        }
    }

    fn add_ccw(&mut self, v: usize, d: usize, reference: usize) {
        if reference == NONE {
            self.add_cw(v, d, NONE);
        } else {
            let prev = self.ccw[reference];
            self.add_cw(v, d, prev);
            if reference == self.first[v] {
                self.first[v] = d;
            }
        }
    }

    fn add_first(&mut self, v: usize, d: usize) {
        let reference = self.first[v];
        self.add_ccw(v, d, reference);
    }
}
