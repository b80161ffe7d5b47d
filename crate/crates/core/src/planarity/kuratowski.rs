use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::lr::is_planar_edges;
use crate::graph::{Graph, PathInGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of `K5` or `K3,3` contained in a host graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<VertexId>,
    pub edge_paths: Vec<PathInGraph>,
}

impl KuratowskiWitness {
    /// Every vertex of the subdivision, sorted.
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut all: BTreeSet<VertexId> = self.branch_vertices.iter().copied().collect();
        for p in &self.edge_paths {
            all.extend(p.interior().iter().copied());
        }
        all.into_iter().collect()
    }

    /// The union of the edge-paths as a graph.
    pub fn subgraph(&self) -> Graph {
        let mut g = Graph::new();
        for p in &self.edge_paths {
            for (a, b) in p.edges() {
                g.add_edge(a, b);
            }
        }
        g
    }

    /// Structural check against `host`: branch and path counts, paths lie in
    /// the host, interiors are pairwise disjoint and avoid branch vertices, and
    /// contracting every path yields exactly `K5` or `K3,3`.
    pub fn validate(&self, host: &Graph) -> Result<(), String> {
        let (nb, np) = match self.kind {
            KuratowskiKind::K5 => (5, 10),
            KuratowskiKind::K33 => (6, 9),
        };
        let branch: BTreeSet<VertexId> = self.branch_vertices.iter().copied().collect();
        if branch.len() != nb || self.branch_vertices.len() != nb {
            return Err(format!("expected {nb} distinct branch vertices"));
        }
        if self.edge_paths.len() != np {
            return Err(format!(
                "expected {np} edge-paths, found {}",
                self.edge_paths.len()
            ));
        }
        let mut interior_seen = BTreeSet::new();
        let mut pairs = BTreeSet::new();
        for p in &self.edge_paths {
            if p.is_empty() || !p.is_valid_in(host) {
                return Err(format!(
                    "edge-path {:?} is not a path of the host",
                    p.vertices()
                ));
            }
            let (a, b) = (p.start(), p.end());
            if !branch.contains(&a) || !branch.contains(&b) {
                return Err("edge-path endpoint is not a branch vertex".into());
            }
            for &x in p.interior() {
                if branch.contains(&x) || !interior_seen.insert(x) {
                    return Err(format!("edge-path interiors intersect at {x}"));
                }
            }
            if !pairs.insert((a.min(b), a.max(b))) {
                return Err("two edge-paths join the same branch pair".into());
            }
        }
        match self.kind {
            KuratowskiKind::K5 => Ok(()),
            KuratowskiKind::K33 => {
                let bv = &self.branch_vertices;
                let first = bv[0];
                let side_a: BTreeSet<VertexId> =
                    std::iter::once(first)
                        .chain(bv.iter().copied().filter(|&x| {
                            x != first && !pairs.contains(&(first.min(x), first.max(x)))
                        }))
                        .collect();
                if side_a.len() != 3 {
                    return Err("contracted graph is not K3,3".into());
                }
                for &(a, b) in &pairs {
                    if side_a.contains(&a) == side_a.contains(&b) {
                        return Err("contracted graph is not bipartite".into());
                    }
                }
                Ok(())
            }
        }
    }
}

/// Finds a Kuratowski subdivision in `g`, or `None` if `g` is planar.
///
/// Components are scanned in order of their smallest vertex; the first
/// nonplanar one is reduced to an edge-minimal nonplanar subgraph, which is
/// exactly a subdivision of `K5` or `K3,3`. Edge-paths are then shortened
/// through chords of `g` where possible.
pub fn find_kuratowski(g: &Graph) -> Option<KuratowskiWitness> {
    for comp in g.connected_components() {
        if comp.len() < 5 {
            continue;
        }
        let members: BTreeSet<VertexId> = comp.iter().copied().collect();
        let sub = g.induced(&members);
        if super::is_planar(&sub) {
            continue;
        }
        let core = peel_low_degree(&sub);
        let edges = minimal_nonplanar_edges(&core);
        let mut w = witness_from_edges(&edges)?;
        shortcut_paths(&mut w, g);
        return Some(w);
    }
    None
}

/// Repeatedly drops vertices of degree at most one; they lie on no
/// Kuratowski subdivision.
fn peel_low_degree(g: &Graph) -> Graph {
    let mut deg: BTreeMap<VertexId, usize> = g.vertices().map(|v| (v, g.degree(v))).collect();
    let mut removed = BTreeSet::new();
    let mut queue: Vec<VertexId> = deg
        .iter()
        .filter(|(_, &d)| d <= 1)
        .map(|(&v, _)| v)
        .collect();
    while let Some(v) = queue.pop() {
        if !removed.insert(v) {
            continue;
        }
        for w in g.neighbors(v) {
            if removed.contains(&w) {
                continue;
            }
            let d = deg.get_mut(&w).unwrap();
            *d -= 1;
            if *d <= 1 {
                queue.push(w);
            }
        }
    }
    g.without(&removed)
}

/// Edge-minimal nonplanar subset of `g`'s edges (assumes `g` nonplanar).
///
/// Edges are ordered by breadth-first search from a vertex of maximum degree
/// and cut to the shortest nonplanar prefix, which keeps the obstruction
/// local. The prefix is then scanned in order, tentatively dropping whole
/// chunks; the chunk doubles while drops succeed and halves when they do not,
/// so an edge is confirmed essential only at chunk size one.
fn minimal_nonplanar_edges(g: &Graph) -> Vec<(VertexId, VertexId)> {
    let prefix = nonplanar_prefix(g);
    let mut ids: Vec<VertexId> = prefix.iter().flat_map(|&(a, b)| [a, b]).collect();
    ids.sort_unstable();
    ids.dedup();
    let index = |v: VertexId| ids.binary_search(&v).unwrap();
    let edges: Vec<(usize, usize)> = prefix.iter().map(|&(a, b)| (index(a), index(b))).collect();
    let n = ids.len();

    let mut required: Vec<(usize, usize)> = Vec::new();
    let mut i = 0;
    let mut chunk = (edges.len() / 16).max(1);
    let mut scratch = Vec::with_capacity(edges.len());
    while i < edges.len() {
        let end = (i + chunk).min(edges.len());
        scratch.clear();
        scratch.extend_from_slice(&required);
        scratch.extend_from_slice(&edges[end..]);
        if !is_planar_edges(n, &scratch) {
            i = end;
            chunk *= 2;
        } else if chunk == 1 {
            required.push(edges[i]);
            i += 1;
        } else {
            chunk /= 2;
        }
    }
    required
        .into_iter()
        .map(|(a, b)| (ids[a], ids[b]))
        .collect()
}

/// The shortest nonplanar prefix of `g`'s edges in breadth-first order.
fn nonplanar_prefix(g: &Graph) -> Vec<(VertexId, VertexId)> {
    let ids: Vec<VertexId> = g.vertices().collect();
    let index = |v: VertexId| ids.binary_search(&v).unwrap();
    let start = (0..ids.len())
        .max_by_key(|&i| (g.degree(ids[i]), std::cmp::Reverse(i)))
        .expect("nonplanar graph has vertices");
    let mut rank = vec![usize::MAX; ids.len()];
    rank[start] = 0;
    let mut order = vec![start];
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for w in g.neighbors(ids[u]) {
            let w = index(w);
            if rank[w] == usize::MAX {
                rank[w] = order.len();
                order.push(w);
            }
        }
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(a, b)| {
            let (a, b) = (rank[index(a)], rank[index(b)]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable_by_key(|&(a, b)| (b, a));
    // Smallest `len` whose prefix is nonplanar; the full list is.
    let (mut lo, mut hi) = (0, edges.len());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if is_planar_edges(ids.len(), &edges[..mid]) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    edges[..lo]
        .iter()
        .map(|&(a, b)| (ids[order[a]], ids[order[b]]))
        .collect()
}

fn witness_from_edges(edges: &[(VertexId, VertexId)]) -> Option<KuratowskiWitness> {
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let branch: Vec<VertexId> = adj
        .iter()
        .filter(|(_, n)| n.len() >= 3)
        .map(|(&v, _)| v)
        .collect();
    let kind = match (branch.len(), adj[branch.first()?].len()) {
        (5, 4) => KuratowskiKind::K5,
        (6, 3) => KuratowskiKind::K33,
        _ => return None,
    };
    let is_branch: BTreeSet<VertexId> = branch.iter().copied().collect();
    let mut paths = Vec::new();
    let mut used_first_steps = BTreeSet::new();
    for &b in &branch {
        for &next in &adj[&b] {
            if used_first_steps.contains(&(b, next)) {
                continue;
            }
            let mut seq = vec![b, next];
            let (mut prev, mut cur) = (b, next);
            while !is_branch.contains(&cur) {
                let step = adj[&cur].iter().copied().find(|&x| x != prev)?;
                prev = cur;
                cur = step;
                seq.push(cur);
            }
            used_first_steps.insert((b, next));
            used_first_steps.insert((cur, prev));
            paths.push(PathInGraph::new(seq));
        }
    }
    Some(KuratowskiWitness {
        kind,
        branch_vertices: branch,
        edge_paths: paths,
    })
}

/// Replaces a stretch of an edge-path by a chord of `host` between two of its
/// vertices. Dropped vertices belonged only to that path, so the result is
/// still a subdivision of the same graph.
fn shortcut_paths(w: &mut KuratowskiWitness, host: &Graph) {
    for path in &mut w.edge_paths {
        let mut seq = path.0.clone();
        let mut i = 0;
        while i + 2 < seq.len() {
            let far = (i + 2..seq.len())
                .rev()
                .find(|&j| host.has_edge(seq[i], seq[j]));
            if let Some(j) = far {
                seq.drain(i + 1..j);
            }
            i += 1;
        }
        path.0 = seq;
    }
}
