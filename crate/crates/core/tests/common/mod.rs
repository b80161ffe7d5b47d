#![allow(dead_code)]

use std::collections::BTreeSet;

use apex_core::{is_planar, Graph, VertexId};
use rand::Rng;

/// Decodes one graph6 line (graphs with at most 62 vertices).
pub fn parse_graph6(line: &str) -> Graph {
    let bytes: Vec<u8> = line.trim().bytes().map(|b| b - 63).collect();
    let n = bytes[0] as u32;
    let mut g = Graph::new();
    for v in 0..n {
        g.add_vertex(VertexId(v));
    }
    let bits = bytes[1..]
        .iter()
        .flat_map(|&b| (0..6).rev().map(move |i| b >> i & 1 == 1));
    let pairs = (1..n).flat_map(|j| (0..j).map(move |i| (i, j)));
    for ((i, j), bit) in pairs.zip(bits) {
        if bit {
            g.add_edge(VertexId(i), VertexId(j));
        }
    }
    g
}

/// Every graph on 1 to 7 vertices, one per isomorphism class.
pub fn atlas() -> Vec<Graph> {
    include_str!("../data/atlas7.g6")
        .lines()
        .filter(|l| !l.is_empty())
        .map(parse_graph6)
        .collect()
}

/// All subsets of size at most `k` of the vertex set, smallest first.
pub fn subsets_up_to(g: &Graph, k: usize) -> Vec<BTreeSet<VertexId>> {
    let ids: Vec<VertexId> = g.vertices().collect();
    let mut out = vec![BTreeSet::new()];
    let mut frontier = vec![(BTreeSet::new(), 0usize)];
    for _ in 0..k {
        let mut next = Vec::new();
        for (set, from) in frontier {
            for (i, &v) in ids.iter().enumerate().skip(from) {
                let mut s: BTreeSet<VertexId> = set.clone();
                s.insert(v);
                out.push(s.clone());
                next.push((s, i + 1));
            }
        }
        frontier = next;
    }
    out
}

/// Every apex set of size at most `k`, by exhaustive enumeration. Sets
/// missing a Kuratowski subgraph of `g` are rejected without a test.
pub fn apex_sets(g: &Graph, k: usize) -> Vec<BTreeSet<VertexId>> {
    let witness: BTreeSet<VertexId> = apex_core::find_kuratowski(g)
        .map(|w| w.vertices().into_iter().collect())
        .unwrap_or_default();
    subsets_up_to(g, k)
        .into_iter()
        .filter(|x| (witness.is_empty() || !x.is_disjoint(&witness)) && is_planar(&g.without(x)))
        .collect()
}

/// Smallest apex set size, if at most `k`.
pub fn min_apex(g: &Graph, k: usize) -> Option<usize> {
    let ids: Vec<VertexId> = g.vertices().collect();
    (0..=k).find(|&size| {
        let mut found = false;
        each_subset(&ids, size, &mut |x| {
            found = is_planar(&g.without(x));
            found
        });
        found
    })
}

/// Calls `f` on each `size`-subset until it returns true.
fn each_subset(ids: &[VertexId], size: usize, f: &mut dyn FnMut(&BTreeSet<VertexId>) -> bool) {
    fn rec(
        ids: &[VertexId],
        from: usize,
        left: usize,
        cur: &mut BTreeSet<VertexId>,
        f: &mut dyn FnMut(&BTreeSet<VertexId>) -> bool,
    ) -> bool {
        if left == 0 {
            return f(cur);
        }
        for i in from..ids.len() {
            if ids.len() - i < left {
                break;
            }
            cur.insert(ids[i]);
            let stop = rec(ids, i + 1, left - 1, cur, f);
            cur.remove(&ids[i]);
            if stop {
                return true;
            }
        }
        false
    }
    rec(ids, 0, size, &mut BTreeSet::new(), f);
}

/// `G(n, p)` on vertices `0..n`.
pub fn random_graph<R: Rng>(rng: &mut R, n: u32, p: f64) -> Graph {
    let mut g = Graph::new();
    for v in 0..n {
        g.add_vertex(VertexId(v));
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(VertexId(a), VertexId(b));
            }
        }
    }
    g
}

/// Smallest apex set size, if at most `limit`. Every apex set meets every
/// Kuratowski subgraph, so sets are grown one vertex of a witness at a time;
/// `hint` itself, when it works, settles size `|hint|` cheaply.
pub fn min_apex_with_hint(g: &Graph, hint: &BTreeSet<VertexId>, limit: usize) -> Option<usize> {
    let hint: BTreeSet<VertexId> = hint.iter().copied().filter(|v| g.contains(*v)).collect();
    (0..=limit)
        .find(|&size| (size == hint.len() && is_planar(&g.without(&hint))) || hits_all(g, size))
}

/// Whether deleting some `size` vertices leaves `g` planar.
fn hits_all(g: &Graph, size: usize) -> bool {
    if is_planar(g) {
        return true;
    }
    if size == 0 {
        return false;
    }
    let w = apex_core::find_kuratowski(g).expect("non-planar graph has a witness");
    w.vertices()
        .into_iter()
        .any(|v| hits_all(&g.without(&BTreeSet::from([v])), size - 1))
}

/// A hexagonal grid with random decorations whose embedding is tracked, so
/// tests know the host subdivision without searching for it.
pub struct Planted {
    pub g: Graph,
    pub host: apex_core::HexSubdivision,
    next: u32,
}

impl Planted {
    pub fn grid(radius: usize) -> Self {
        let grid = apex_core::HexGrid::build(radius).unwrap();
        let g = grid.to_graph();
        let next = grid.vertex_count() as u32;
        Planted {
            g,
            host: apex_core::HexSubdivision::identity(grid),
            next,
        }
    }

    pub fn fresh(&mut self) -> VertexId {
        self.next += 1;
        VertexId(self.next - 1)
    }

    /// Subdivides `count` random host edges, keeping the paths up to date.
    pub fn subdivide<R: Rng>(&mut self, rng: &mut R, count: usize) {
        for _ in 0..count {
            let e = rng.gen_range(0..self.host.paths.len());
            let mut path = self.host.paths[e].vertices().to_vec();
            let i = rng.gen_range(0..path.len() - 1);
            let (a, b) = (path[i], path[i + 1]);
            let v = self.fresh();
            self.g.remove_edge(a, b);
            self.g.add_edge(a, v);
            self.g.add_edge(v, b);
            path.insert(i + 1, v);
            self.host.paths[e] = apex_core::PathInGraph::new(path);
        }
    }

    pub fn grid_vertices(&self) -> Vec<VertexId> {
        self.host.vertex_set().into_iter().collect()
    }

    pub fn pendant_trees<R: Rng>(&mut self, rng: &mut R, count: usize, max_size: usize) {
        let anchors = self.grid_vertices();
        for _ in 0..count {
            let mut tree = vec![anchors[rng.gen_range(0..anchors.len())]];
            for _ in 0..rng.gen_range(1..=max_size) {
                let v = self.fresh();
                self.g.add_edge(tree[rng.gen_range(0..tree.len())], v);
                tree.push(v);
            }
        }
    }

    /// A `K5` hanging from `anchor` by one edge; returns one of its vertices.
    pub fn pendant_k5(&mut self, anchor: VertexId) -> VertexId {
        let k: Vec<VertexId> = (0..5).map(|_| self.fresh()).collect();
        for i in 0..5 {
            for j in i + 1..5 {
                self.g.add_edge(k[i], k[j]);
            }
        }
        self.g.add_edge(anchor, k[0]);
        k[1]
    }

    pub fn apex(&mut self, targets: &[VertexId]) -> VertexId {
        let x = self.fresh();
        for &t in targets {
            self.g.add_edge(x, t);
        }
        x
    }
}
