//! Left-right planarity test (Brandes' formulation of the de Fraysseix–
//! Rosenstiehl criterion) with construction of a combinatorial embedding.
//!
//! Works on dense indices; all DFS phases are iterative so that long paths
//! do not exhaust the thread stack.

use std::collections::HashMap;

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Default, Debug)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Default, Debug)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

/// Cyclic neighbour orders, stored as a doubly linked ring per vertex.
#[derive(Clone, Debug, Default)]
pub(crate) struct Rotation {
    cw: HashMap<(usize, usize), usize>,
    ccw: HashMap<(usize, usize), usize>,
    leftmost: Vec<Option<usize>>,
}

enum Anchor {
    First,
    /// Insert directly counter-clockwise of the reference neighbour.
    Cw(usize),
    /// Insert directly clockwise of the reference neighbour.
    Ccw(usize),
}

impl Rotation {
    fn new(n: usize) -> Self {
        Rotation {
            cw: HashMap::new(),
            ccw: HashMap::new(),
            leftmost: vec![None; n],
        }
    }

    fn add_half_edge(&mut self, v: usize, w: usize, anchor: Anchor) {
        match anchor {
            Anchor::First => {
                self.cw.insert((v, w), w);
                self.ccw.insert((v, w), w);
                self.leftmost[v] = Some(w);
            }
            Anchor::Cw(r) => {
                let r_ccw = self.ccw[&(v, r)];
                self.cw.insert((v, w), r);
                self.ccw.insert((v, w), r_ccw);
                self.cw.insert((v, r_ccw), w);
                self.ccw.insert((v, r), w);
                if self.leftmost[v] == Some(r) {
                    self.leftmost[v] = Some(w);
                }
            }
            Anchor::Ccw(r) => {
                let r_cw = self.cw[&(v, r)];
                self.cw.insert((v, w), r_cw);
                self.ccw.insert((v, w), r);
                self.ccw.insert((v, r_cw), w);
                self.cw.insert((v, r), w);
            }
        }
    }

    fn add_half_edge_first(&mut self, v: usize, w: usize) {
        match self.leftmost[v] {
            Some(l) => self.add_half_edge(v, w, Anchor::Cw(l)),
            None => self.add_half_edge(v, w, Anchor::First),
        }
    }

    /// Neighbours of `v` in clockwise order starting at the leftmost one.
    pub fn clockwise(&self, v: usize) -> Vec<usize> {
        let Some(start) = self.leftmost[v] else {
            return Vec::new();
        };
        let mut out = vec![start];
        let mut cur = self.cw[&(v, start)];
        while cur != start {
            out.push(cur);
            cur = self.cw[&(v, cur)];
        }
        out
    }
}

struct State<'a> {
    adj: &'a [Vec<usize>],
    adj_edge: Vec<Vec<usize>>,
    src: Vec<usize>,
    dst: Vec<usize>,
    oriented: Vec<bool>,
    out_edges: Vec<Vec<usize>>,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<i64>,
    reference: Vec<Option<usize>>,
    side: Vec<i64>,
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<usize>,
    roots: Vec<usize>,
}

impl<'a> State<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut src = Vec::new();
        let mut dst = Vec::new();
        let mut adj_edge = Vec::with_capacity(n);
        for (v, nbrs) in adj.iter().enumerate() {
            let mut row = Vec::with_capacity(nbrs.len());
            for &w in nbrs {
                let key = (v.min(w), v.max(w));
                let id = *ids.entry(key).or_insert_with(|| {
                    src.push(key.0);
                    dst.push(key.1);
                    src.len() - 1
                });
                row.push(id);
            }
            adj_edge.push(row);
        }
        let m = src.len();
        State {
            adj,
            adj_edge,
            src,
            dst,
            oriented: vec![false; m],
            out_edges: vec![Vec::new(); n],
            height: vec![NONE; n],
            parent_edge: vec![NONE; n],
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting_depth: vec![0; m],
            reference: vec![None; m],
            side: vec![1; m],
            stack: Vec::new(),
            stack_bottom: vec![0; m],
            lowpt_edge: vec![NONE; m],
            roots: Vec::new(),
        }
    }

    fn orient(&mut self, root: usize) {
        let n = self.adj.len();
        let mut ind = vec![0usize; n];
        let mut skip_init = vec![false; self.src.len()];
        let mut dfs = vec![root];
        while let Some(v) = dfs.pop() {
            let e = self.parent_edge[v];
            while ind[v] < self.adj[v].len() {
                let w = self.adj[v][ind[v]];
                let vw = self.adj_edge[v][ind[v]];
                if !skip_init[vw] {
                    if self.oriented[vw] {
                        ind[v] += 1;
                        continue;
                    }
                    self.oriented[vw] = true;
                    self.src[vw] = v;
                    self.dst[vw] = w;
                    self.out_edges[v].push(vw);
                    self.lowpt[vw] = self.height[v];
                    self.lowpt2[vw] = self.height[v];
                    if self.height[w] == NONE {
                        self.parent_edge[w] = vw;
                        self.height[w] = self.height[v] + 1;
                        dfs.push(v);
                        dfs.push(w);
                        skip_init[vw] = true;
                        break;
                    }
                    self.lowpt[vw] = self.height[w];
                }
                self.nesting_depth[vw] = 2 * self.lowpt[vw] as i64;
                if self.lowpt2[vw] < self.height[v] {
                    self.nesting_depth[vw] += 1;
                }
                if e != NONE {
                    if self.lowpt[vw] < self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                        self.lowpt[e] = self.lowpt[vw];
                    } else if self.lowpt[vw] > self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                    } else {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                    }
                }
                ind[v] += 1;
            }
        }
    }

    fn sort_by_nesting(&mut self) {
        for v in 0..self.adj.len() {
            let nd = &self.nesting_depth;
            self.out_edges[v].sort_by_key(|&e| nd[e]);
        }
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        !i.is_empty()
            && self.lowpt[i.high.expect("non-empty interval has a high edge")] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low.expect("non-empty pair")];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low.expect("non-empty pair")];
        }
        self.lowpt[p.left.low.unwrap()].min(self.lowpt[p.right.low.unwrap()])
    }

    fn test(&mut self, root: usize) -> bool {
        let n = self.adj.len();
        let mut ind = vec![0usize; n];
        let mut skip_init = vec![false; self.src.len()];
        let mut dfs = vec![root];
        while let Some(v) = dfs.pop() {
            let e = self.parent_edge[v];
            let mut skip_final = false;
            while ind[v] < self.out_edges[v].len() {
                let ei = self.out_edges[v][ind[v]];
                let w = self.dst[ei];
                if !skip_init[ei] {
                    self.stack_bottom[ei] = self.stack.len();
                    if self.parent_edge[w] == ei {
                        dfs.push(v);
                        dfs.push(w);
                        skip_init[ei] = true;
                        skip_final = true;
                        break;
                    }
                    self.lowpt_edge[ei] = ei;
                    self.stack.push(ConflictPair {
                        left: Interval::default(),
                        right: Interval {
                            low: Some(ei),
                            high: Some(ei),
                        },
                    });
                }
                if self.lowpt[ei] < self.height[v] {
                    if ei == self.out_edges[v][0] {
                        self.lowpt_edge[e] = self.lowpt_edge[ei];
                    } else if !self.add_constraints(ei, e) {
                        return false;
                    }
                }
                ind[v] += 1;
            }
            if !skip_final && e != NONE {
                self.remove_back_edges(e);
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        while let Some(mut q) = self.stack.pop() {
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let q_low = q.right.low.expect("non-empty pair");
            if self.lowpt[q_low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else if let Some(pl) = p.right.low {
                    self.reference[pl] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q_low] = Some(self.lowpt_edge[e]);
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(pl) = p.right.low {
                self.reference[pl] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if let Some(pl) = p.left.low {
                self.reference[pl] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.reference[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() {
                if let Some(r) = p.right.low {
                    self.reference[r] = p.left.low;
                    self.side[r] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = self
                .stack
                .last()
                .expect("a return edge keeps a pair on the stack");
            let hl = top.left.high;
            let hr = top.right.high;
            self.reference[e] = match (hl, hr) {
                (Some(l), None) => Some(l),
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                _ => hr,
            };
        }
    }

    fn sign(&mut self, e: usize) -> i64 {
        let mut dfs = vec![e];
        let mut old_ref: HashMap<usize, usize> = HashMap::new();
        while let Some(x) = dfs.pop() {
            if let Some(r) = self.reference[x] {
                dfs.push(x);
                dfs.push(r);
                old_ref.insert(x, r);
                self.reference[x] = None;
            } else if let Some(&r) = old_ref.get(&x) {
                self.side[x] *= self.side[r];
            }
        }
        self.side[e]
    }

    fn embed(
        &mut self,
        root: usize,
        rot: &mut Rotation,
        left_ref: &mut [usize],
        right_ref: &mut [usize],
    ) {
        let mut ind = vec![0usize; self.adj.len()];
        let mut dfs = vec![root];
        while let Some(v) = dfs.pop() {
            while ind[v] < self.out_edges[v].len() {
                let ei = self.out_edges[v][ind[v]];
                ind[v] += 1;
                let w = self.dst[ei];
                if self.parent_edge[w] == ei {
                    rot.add_half_edge_first(w, v);
                    left_ref[v] = w;
                    right_ref[v] = w;
                    dfs.push(v);
                    dfs.push(w);
                    break;
                }
                if self.side[ei] == 1 {
                    rot.add_half_edge(w, v, Anchor::Ccw(right_ref[w]));
                } else {
                    rot.add_half_edge(w, v, Anchor::Cw(left_ref[w]));
                    left_ref[w] = v;
                }
            }
        }
    }
}

fn run(adj: &[Vec<usize>], want_embedding: bool) -> Option<Rotation> {
    let n = adj.len();
    let m: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if n > 2 && m > 3 * n - 6 {
        return None;
    }
    let mut st = State::new(adj);
    for v in 0..n {
        if st.height[v] == NONE {
            st.height[v] = 0;
            st.roots.push(v);
            st.orient(v);
        }
    }
    st.sort_by_nesting();
    let roots = st.roots.clone();
    for &r in &roots {
        if !st.test(r) {
            return None;
        }
    }
    if !want_embedding {
        return Some(Rotation::default());
    }
    for e in 0..st.src.len() {
        let s = st.sign(e);
        st.nesting_depth[e] *= s;
    }
    st.sort_by_nesting();
    let mut rot = Rotation::new(n);
    for v in 0..n {
        let mut prev: Option<usize> = None;
        for i in 0..st.out_edges[v].len() {
            let w = st.dst[st.out_edges[v][i]];
            match prev {
                None => rot.add_half_edge(v, w, Anchor::First),
                Some(p) => rot.add_half_edge(v, w, Anchor::Ccw(p)),
            }
            prev = Some(w);
        }
    }
    let mut left_ref = vec![NONE; n];
    let mut right_ref = vec![NONE; n];
    for &r in &roots {
        st.embed(r, &mut rot, &mut left_ref, &mut right_ref);
    }
    Some(rot)
}

pub(crate) fn is_planar(adj: &[Vec<usize>]) -> bool {
    run(adj, false).is_some()
}

pub(crate) fn embedding(adj: &[Vec<usize>]) -> Option<Rotation> {
    run(adj, true)
}

/// Planarity of the graph on `0..n` with the given (simple) edge list.
pub(crate) fn is_planar_edges(n: usize, edges: &[(usize, usize)]) -> bool {
    if n > 2 && edges.len() > 3 * n - 6 {
        return false;
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    is_planar(&adj)
}
