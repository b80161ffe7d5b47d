//! Budgeted search for a subdivided `H_r` in a host graph.
//!
//! Pattern vertices are placed cell by cell, centre outwards. Each new vertex
//! is mapped to a free host vertex found by BFS from the image of an already
//! placed neighbour, and its remaining placed neighbours are reached by
//! further BFS routes through free vertices. Choices are revisited by
//! chronological backtracking until the step budget runs out. A miss is not a
//! proof that no subdivision exists.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{HexGrid, HexSubdivision};
use crate::graph::{Graph, Indexed, PathInGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Total candidate placements tried, across all passes and starts.
    pub max_steps: usize,
    /// Start vertices tried per pass, most central first.
    pub max_starts: usize,
    /// Candidates considered per pattern vertex.
    pub width: usize,
    /// The first pass avoids host vertices of larger degree.
    pub degree_cutoff: usize,
    /// Placements allowed per start, per cell of the pattern. A start that
    /// needs many times more steps than cells is almost always stuck; small
    /// patterns get a fixed allowance of 2000 on top.
    pub steps_per_cell: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_steps: 400_000,
            max_starts: 6,
            width: 3,
            degree_cutoff: 12,
            steps_per_cell: 3,
        }
    }
}

/// Looks for a subdivision of `H_r` in `g` within `budget`.
///
/// Each pass first searches the graph with degree-2 chains suppressed, which
/// makes the search blind to subdivision, and then the graph itself, which is
/// needed when the grid's own degree-2 vertices are all the host offers.
pub fn find_hex_subdivision(g: &Graph, r: usize, budget: SearchBudget) -> Option<HexSubdivision> {
    if r == 0 || g.vertex_count() < 6 * r * r {
        return None;
    }
    let grid = HexGrid::build(r).ok()?;
    let idx = Indexed::new(g);
    let core = two_core(&idx.adj);
    if core.iter().filter(|&&c| c).count() < grid.vertex_count() {
        return None;
    }
    let high: Vec<bool> = idx
        .adj
        .iter()
        .map(|n| n.len() > budget.degree_cutoff)
        .collect();
    let mut passes = Vec::new();
    if high.iter().any(|&h| h) {
        passes.push(
            core.iter()
                .zip(&high)
                .map(|(&c, &h)| !c || h)
                .collect::<Vec<bool>>(),
        );
    }
    passes.push(core.iter().map(|&c| !c).collect());
    let mut attempts = Vec::new();
    for banned in passes {
        let reduced = Suppressed::new(&idx.adj, &banned);
        if reduced.adj.len() >= grid.vertex_count() {
            attempts.push(Attempt::Suppressed(reduced));
        }
        attempts.push(Attempt::Raw(banned));
    }
    let mut steps = budget.max_steps;
    let count = attempts.len();
    for (i, attempt) in attempts.into_iter().enumerate() {
        let mut share = steps / (count - i);
        let before = share;
        let found = match &attempt {
            Attempt::Raw(banned) => search(&grid, &idx.adj, banned, budget, &mut share),
            Attempt::Suppressed(red) => search(
                &grid,
                &red.adj,
                &vec![false; red.adj.len()],
                budget,
                &mut share,
            )
            .map(|(image, paths)| red.expand(image, paths)),
        };
        steps -= before - share;
        if let Some((image, paths)) = found {
            let branch = image.iter().map(|&h| idx.ids[h]).collect();
            let paths = paths
                .into_iter()
                .map(|p| PathInGraph::new(p.into_iter().map(|h| idx.ids[h]).collect()))
                .collect();
            let sub = HexSubdivision {
                grid,
                branch,
                paths,
            };
            debug_assert_eq!(sub.validate(g), Ok(()));
            return Some(sub);
        }
    }
    None
}

enum Attempt {
    Raw(Vec<bool>),
    Suppressed(Suppressed),
}

type Embedding = (Vec<usize>, Vec<Vec<usize>>);

fn search(
    grid: &HexGrid,
    adj: &[Vec<usize>],
    banned: &[bool],
    budget: SearchBudget,
    steps: &mut usize,
) -> Option<Embedding> {
    let starts = start_vertices(adj, banned, grid.degree(0), budget.max_starts);
    for (j, &s) in starts.iter().enumerate() {
        let mut per_start =
            (*steps / (starts.len() - j)).min(budget.steps_per_cell * grid.cell_count() + 2_000);
        let before = per_start;
        let found = Embedder::new(grid, adj, banned.to_vec(), budget.width).run(s, &mut per_start);
        *steps -= before - per_start;
        if found.is_some() {
            return found;
        }
    }
    None
}

/// The allowed part of a host with every maximal chain of degree-2 vertices
/// replaced by a single edge. Parallel chains keep the shortest one; chains
/// closing on themselves and isolated cycles are dropped.
struct Suppressed {
    /// Original index of each kept vertex.
    keep: Vec<usize>,
    adj: Vec<Vec<usize>>,
    /// Chain of original vertices for each kept edge, keyed by kept indices.
    chains: HashMap<(usize, usize), Vec<usize>>,
}

impl Suppressed {
    fn new(adj: &[Vec<usize>], banned: &[bool]) -> Self {
        let degree = |v: usize| adj[v].iter().filter(|&&w| !banned[w]).count();
        let keep: Vec<usize> = (0..adj.len())
            .filter(|&v| !banned[v] && degree(v) >= 3)
            .collect();
        let mut local = vec![usize::MAX; adj.len()];
        for (i, &v) in keep.iter().enumerate() {
            local[v] = i;
        }
        let mut chains: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, &v) in keep.iter().enumerate() {
            for &first in adj[v].iter().filter(|&&w| !banned[w]) {
                let mut chain = vec![v, first];
                let (mut prev, mut cur) = (v, first);
                while local[cur] == usize::MAX {
                    let next = adj[cur]
                        .iter()
                        .copied()
                        .find(|&w| !banned[w] && w != prev)
                        .expect("chain vertex of degree 2");
                    prev = cur;
                    cur = next;
                    chain.push(cur);
                }
                let j = local[cur];
                if j == i {
                    continue;
                }
                let key = (i.min(j), i.max(j));
                if i > j {
                    chain.reverse();
                }
                let better = chains.get(&key).is_none_or(|c| chain.len() < c.len());
                if better {
                    chains.insert(key, chain);
                }
            }
        }
        let mut reduced = vec![Vec::new(); keep.len()];
        let mut keys: Vec<_> = chains.keys().copied().collect();
        keys.sort_unstable();
        for (a, b) in keys {
            reduced[a].push(b);
            reduced[b].push(a);
        }
        Suppressed {
            keep,
            adj: reduced,
            chains,
        }
    }

    fn expand(&self, image: Vec<usize>, paths: Vec<Vec<usize>>) -> Embedding {
        let image = image.into_iter().map(|v| self.keep[v]).collect();
        let paths = paths
            .into_iter()
            .map(|p| {
                let mut out = vec![self.keep[p[0]]];
                for w in p.windows(2) {
                    let chain = &self.chains[&(w[0].min(w[1]), w[0].max(w[1]))];
                    if w[0] < w[1] {
                        out.extend_from_slice(&chain[1..]);
                    } else {
                        out.extend(chain.iter().rev().skip(1));
                    }
                }
                out
            })
            .collect();
        (image, paths)
    }
}

fn two_core(adj: &[Vec<usize>]) -> Vec<bool> {
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut alive = vec![true; adj.len()];
    let mut queue: Vec<usize> = (0..adj.len()).filter(|&v| deg[v] <= 1).collect();
    while let Some(v) = queue.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &w in &adj[v] {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    queue.push(w);
                }
            }
        }
    }
    alive
}

fn bfs_dist(adj: &[Vec<usize>], banned: &[bool], src: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[src] = 0;
    let mut q = VecDeque::from([src]);
    while let Some(v) = q.pop_front() {
        for &w in &adj[v] {
            if !banned[w] && dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
        }
    }
    dist
}

/// Allowed vertices of sufficient degree, most central first. Centrality is
/// estimated from BFS distances to a few mutually far sources, ranking by the
/// largest distance and then by the total.
fn start_vertices(adj: &[Vec<usize>], banned: &[bool], min_deg: usize, limit: usize) -> Vec<usize> {
    let eligible =
        |v: usize| !banned[v] && adj[v].iter().filter(|&&w| !banned[w]).count() >= min_deg;
    let Some(seed) = (0..adj.len()).find(|&v| eligible(v)) else {
        return Vec::new();
    };
    let reach = bfs_dist(adj, banned, seed);
    let mut worst = vec![0usize; adj.len()];
    let mut total = vec![0usize; adj.len()];
    let mut nearest = vec![usize::MAX; adj.len()];
    let mut src = seed;
    for _ in 0..6 {
        let d = bfs_dist(adj, banned, src);
        for v in 0..adj.len() {
            if d[v] != usize::MAX {
                worst[v] = worst[v].max(d[v]);
                total[v] += d[v];
                nearest[v] = nearest[v].min(d[v]);
            }
        }
        src = (0..adj.len())
            .filter(|&v| d[v] != usize::MAX)
            .max_by_key(|&v| (nearest[v], usize::MAX - v))
            .unwrap();
    }
    let mut cands: Vec<usize> = (0..adj.len())
        .filter(|&v| eligible(v) && reach[v] != usize::MAX)
        .collect();
    cands.sort_by_key(|&v| (worst[v], total[v], v));
    cands.truncate(limit);
    cands
}

struct Frame {
    /// Position in the placement order.
    step: usize,
    /// Candidate images, each with the route from the anchor's image.
    cands: Vec<(usize, Vec<usize>)>,
    next: usize,
    /// Host vertices claimed by the active candidate.
    claimed: Vec<usize>,
    /// Grid edges routed by the active candidate.
    routed: Vec<usize>,
}

struct Embedder<'a> {
    grid: &'a HexGrid,
    adj: &'a [Vec<usize>],
    /// Banned vertices are never used; used ones are taken by the partial embedding.
    banned: Vec<bool>,
    used: Vec<bool>,
    width: usize,
    order: Vec<(usize, usize, usize)>,
    image: Vec<Option<usize>>,
    paths: Vec<Option<Vec<usize>>>,
    remaining: Vec<usize>,
    /// Pattern vertex whose image is the given host vertex.
    owner: Vec<Option<usize>>,
    frontier: BTreeSet<usize>,
    scratch: Scratch,
    step_cost: Vec<usize>,
}

impl<'a> Embedder<'a> {
    fn new(grid: &'a HexGrid, adj: &'a [Vec<usize>], banned: Vec<bool>, width: usize) -> Self {
        let n = adj.len();
        let step_cost = (0..n)
            .map(|v| usize::from(adj[v].iter().filter(|&&w| !banned[w]).count() > 2))
            .collect();
        Embedder {
            grid,
            adj,
            banned,
            used: vec![false; n],
            width,
            order: placement_order(grid),
            image: vec![None; grid.vertex_count()],
            paths: vec![None; grid.edges.len()],
            remaining: (0..grid.vertex_count()).map(|v| grid.degree(v)).collect(),
            owner: vec![None; n],
            frontier: BTreeSet::new(),
            scratch: Scratch::new(n),
            step_cost,
        }
    }

    fn free(&self, h: usize) -> bool {
        !self.banned[h] && !self.used[h]
    }

    fn free_degree(&self, h: usize) -> usize {
        self.adj[h].iter().filter(|&&w| self.free(w)).count()
    }

    fn run(mut self, start: usize, steps: &mut usize) -> Option<Embedding> {
        let mut stack = vec![Frame {
            step: 0,
            cands: vec![(start, vec![start])],
            next: 0,
            claimed: Vec::new(),
            routed: Vec::new(),
        }];
        while let Some(top) = stack.last_mut() {
            let step = top.step;
            let claimed = std::mem::take(&mut top.claimed);
            let routed = std::mem::take(&mut top.routed);
            let cand = top.cands.get(top.next).cloned();
            top.next += 1;
            self.undo(self.order[step].0, claimed, routed);
            let Some((h, route)) = cand else {
                stack.pop();
                continue;
            };
            if *steps == 0 {
                return None;
            }
            *steps -= 1;
            if let Some((claimed, routed)) = self.place(step, h, route) {
                let top = stack.last_mut().unwrap();
                top.claimed = claimed;
                top.routed = routed;
                if step + 1 == self.order.len() {
                    let image = self.image.iter().map(|h| h.unwrap()).collect();
                    let paths = self.paths.into_iter().map(|p| p.unwrap()).collect();
                    return Some((image, paths));
                }
                let cands = self.candidates(step + 1);
                stack.push(Frame {
                    step: step + 1,
                    cands,
                    next: 0,
                    claimed: Vec::new(),
                    routed: Vec::new(),
                });
            }
        }
        None
    }

    fn placed_neighbors(&self, u: usize) -> Vec<usize> {
        self.grid
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&p| self.image[p].is_some())
            .collect()
    }

    /// Free vertices of sufficient degree near the anchor's image, with a
    /// route to each. The nearest few are ranked by route cost plus the free
    /// distance back to the corner that closes the current cell, which keeps
    /// cells tight instead of enclosing spare host area.
    fn candidates(&mut self, step: usize) -> Vec<(usize, Vec<usize>)> {
        let (u, anchor, close) = self.order[step];
        let placed = self.placed_neighbors(u).len();
        let src = self.image[anchor].unwrap();
        let need = self.grid.degree(u);
        let stamp = self.scratch.begin();
        self.scratch.visit(src, src, 0, stamp);
        let mut q = VecDeque::from([(src, 0)]);
        let mut out = Vec::new();
        while let Some((v, d)) = q.pop_front() {
            if d > self.scratch.dist[v] {
                continue;
            }
            if v != src && self.adj[v].len() >= need && self.free_degree(v) + placed >= need {
                out.push((v, d, self.scratch.path_to(src, v)));
                if out.len() == 3 * self.width {
                    break;
                }
            }
            for i in 0..self.adj[v].len() {
                let w = self.adj[v][i];
                if self.free(w) {
                    self.relax(&mut q, v, w, stamp);
                }
            }
        }
        if close != anchor && out.len() > 1 {
            let horizon = out.iter().map(|c| c.1).max().unwrap_or(0) * 3 + 8;
            let dist = self.free_distances(self.image[close].unwrap(), horizon);
            out.sort_by_key(|(w, d, _)| d + dist.get(w).copied().unwrap_or(usize::MAX / 4));
        }
        out.into_iter()
            .take(self.width)
            .map(|(w, _, route)| (w, route))
            .collect()
    }

    /// 0-1 BFS step: entering a vertex with at most two usable neighbours is
    /// free, so subdividing host edges does not change any ranking.
    fn relax(&mut self, q: &mut VecDeque<(usize, usize)>, v: usize, w: usize, stamp: u32) {
        let cost = self.step_cost[w];
        let d = self.scratch.dist[v] + cost;
        if !self.scratch.seen(w, stamp) || d < self.scratch.dist[w] {
            self.scratch.visit(w, v, d, stamp);
            if cost == 0 {
                q.push_front((w, d));
            } else {
                q.push_back((w, d));
            }
        }
    }

    /// Free-vertex 0-1 distances from `src`, up to `horizon`.
    fn free_distances(&mut self, src: usize, horizon: usize) -> HashMap<usize, usize> {
        let stamp = self.scratch.begin();
        self.scratch.visit(src, src, 0, stamp);
        let mut q = VecDeque::from([(src, 0)]);
        let mut dist = HashMap::new();
        while let Some((v, d)) = q.pop_front() {
            if d > self.scratch.dist[v] || dist.contains_key(&v) {
                continue;
            }
            if d > horizon {
                break;
            }
            dist.insert(v, d);
            for i in 0..self.adj[v].len() {
                let w = self.adj[v][i];
                if self.free(w) {
                    self.relax(&mut q, v, w, stamp);
                }
            }
        }
        dist
    }

    /// Maps `u` to `h`, routing every grid edge to an already placed neighbour.
    /// On success returns the claimed host vertices and routed grid edges.
    fn place(
        &mut self,
        step: usize,
        h: usize,
        route: Vec<usize>,
    ) -> Option<(Vec<usize>, Vec<usize>)> {
        let (u, anchor, _) = self.order[step];
        let mut placed = self.placed_neighbors(u);
        placed.sort_by_key(|&p| p != anchor);
        let mut claimed = vec![h];
        let mut routed = Vec::new();
        self.used[h] = true;
        self.image[u] = Some(h);
        self.owner[h] = Some(u);
        let ok = (|| {
            for (i, &p) in placed.iter().enumerate() {
                let path = if i == 0 {
                    route.clone()
                } else {
                    self.route(self.image[p].unwrap(), h)?
                };
                for &x in &path[1..path.len() - 1] {
                    self.used[x] = true;
                    claimed.push(x);
                }
                let e = self.grid.edge_index(u, p).unwrap();
                let forward = self.grid.edges[e].0 == p;
                self.paths[e] = Some(if forward {
                    path
                } else {
                    path.into_iter().rev().collect()
                });
                routed.push(e);
                self.remaining[p] -= 1;
                self.remaining[u] -= 1;
            }
            Some(())
        })()
        .is_some()
            && {
                self.update_frontier(u);
                placed.iter().for_each(|&p| self.update_frontier(p));
                self.still_feasible()
            };
        if ok {
            Some((claimed, routed))
        } else {
            self.undo(u, claimed, routed);
            None
        }
    }

    fn undo(&mut self, u: usize, claimed: Vec<usize>, routed: Vec<usize>) {
        if claimed.is_empty() {
            return;
        }
        for e in routed {
            let (a, b) = self.grid.edges[e];
            self.paths[e] = None;
            self.remaining[a] += 1;
            self.remaining[b] += 1;
            self.update_frontier(if a == u { b } else { a });
        }
        for x in claimed {
            self.used[x] = false;
            self.owner[x] = None;
        }
        self.image[u] = None;
        self.frontier.remove(&u);
    }

    /// Cheapest route from `from` to `to` through free vertices.
    fn route(&mut self, from: usize, to: usize) -> Option<Vec<usize>> {
        let stamp = self.scratch.begin();
        self.scratch.visit(from, from, 0, stamp);
        let mut q = VecDeque::from([(from, 0)]);
        while let Some((v, d)) = q.pop_front() {
            if d > self.scratch.dist[v] {
                continue;
            }
            if v == to {
                return Some(self.scratch.path_to(from, to));
            }
            for i in 0..self.adj[v].len() {
                let w = self.adj[v][i];
                if w == to || self.free(w) {
                    self.relax(&mut q, v, w, stamp);
                }
            }
        }
        None
    }

    /// Every placed pattern vertex with unrouted edges keeps enough live free
    /// neighbours for them.
    fn still_feasible(&self) -> bool {
        self.frontier.iter().all(|&p| {
            let h = self.image[p].unwrap();
            self.adj[h]
                .iter()
                .filter(|&&y| self.free(y) && self.leads_somewhere(h, y))
                .count()
                >= self.remaining[p]
        })
    }

    /// Whether the free chain entered from `from` through `y` reaches a vertex
    /// with a choice of continuations, or an image that still needs routes.
    fn leads_somewhere(&self, from: usize, y: usize) -> bool {
        let (mut prev, mut cur) = (from, y);
        for _ in 0..64 {
            let mut onward = self.adj[cur]
                .iter()
                .copied()
                .filter(|&w| w != prev && (self.free(w) || self.needs_route(w)));
            let Some(next) = onward.next() else {
                return false;
            };
            if onward.next().is_some() || self.needs_route(next) {
                return true;
            }
            prev = cur;
            cur = next;
        }
        true
    }

    fn needs_route(&self, h: usize) -> bool {
        self.owner[h].is_some_and(|p| self.remaining[p] > 0)
    }

    fn update_frontier(&mut self, p: usize) {
        if self.image[p].is_some() && self.remaining[p] > 0 {
            self.frontier.insert(p);
        } else {
            self.frontier.remove(&p);
        }
    }
}

/// Cell-by-cell placement order. Each entry is `(vertex, anchor, close)`:
/// the anchor is the placed corner preceding the vertex in its cell, and
/// `close` the next placed corner after it, which the cell must reach.
fn placement_order(grid: &HexGrid) -> Vec<(usize, usize, usize)> {
    let mut placed = vec![false; grid.vertex_count()];
    let mut order = Vec::with_capacity(grid.vertex_count());
    for cv in &grid.cell_vertices {
        if order.is_empty() {
            placed[cv[0]] = true;
            order.push((cv[0], cv[0], cv[0]));
        }
        while let Some(i) = (0..6).find(|&i| placed[cv[i]] && !placed[cv[(i + 1) % 6]]) {
            let v = cv[(i + 1) % 6];
            placed[v] = true;
            let close = (2..=6)
                .map(|j| cv[(i + j) % 6])
                .find(|&w| placed[w])
                .unwrap();
            order.push((v, cv[i], close));
        }
    }
    order
}

/// Generation-stamped BFS parent and distance arrays, reused across searches.
struct Scratch {
    stamp: Vec<u32>,
    parent: Vec<usize>,
    dist: Vec<usize>,
    current: u32,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            stamp: vec![0; n],
            parent: vec![0; n],
            dist: vec![0; n],
            current: 0,
        }
    }

    fn begin(&mut self) -> u32 {
        self.current += 1;
        self.current
    }

    fn seen(&self, v: usize, stamp: u32) -> bool {
        self.stamp[v] == stamp
    }

    fn visit(&mut self, v: usize, parent: usize, dist: usize, stamp: u32) {
        self.stamp[v] = stamp;
        self.parent[v] = parent;
        self.dist[v] = dist;
    }

    fn path_to(&self, src: usize, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut x = v;
        while x != src {
            x = self.parent[x];
            path.push(x);
        }
        path.reverse();
        path
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{cycle, grid, path, subdivide};
    use crate::graph::VertexId;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn order_has_placed_neighbours() {
        for r in 1..=5 {
            let g = HexGrid::build(r).unwrap();
            let order = placement_order(&g);
            assert_eq!(order.len(), g.vertex_count());
            for (i, &(v, anchor, _)) in order.iter().enumerate().skip(1) {
                assert!(g.neighbors(v).contains(&anchor));
                assert!(order[..i].iter().any(|&(w, _, _)| w == anchor));
            }
        }
    }

    #[test]
    fn finds_itself() {
        for r in 1..=4 {
            let host = HexGrid::build(r).unwrap().to_graph();
            let sub = find_hex_subdivision(&host, r, SearchBudget::default());
            assert!(sub.is_some(), "radius {r}");
            sub.unwrap().validate(&host).unwrap();
        }
    }

    #[test]
    fn cycle_lengths_for_radius_one() {
        assert!(find_hex_subdivision(&cycle(5), 1, SearchBudget::default()).is_none());
        let sub = find_hex_subdivision(&cycle(9), 1, SearchBudget::default()).unwrap();
        sub.validate(&cycle(9)).unwrap();
    }

    #[test]
    fn subdivided_radius_two() {
        let mut host = HexGrid::build(2).unwrap().to_graph();
        let edges: Vec<_> = host.edges().collect();
        for (a, b) in edges.into_iter().step_by(3) {
            subdivide(&mut host, a, b);
        }
        let sub = find_hex_subdivision(&host, 2, SearchBudget::default()).unwrap();
        sub.validate(&host).unwrap();
        assert_eq!(sub.vertex_set().len(), host.vertex_count());
    }

    #[test]
    fn square_grid_contains_radius_two() {
        let host = grid(7, 7);
        let sub = find_hex_subdivision(&host, 2, SearchBudget::default()).unwrap();
        sub.validate(&host).unwrap();
    }

    #[test]
    fn trees_and_small_graphs_have_none() {
        assert!(find_hex_subdivision(&path(100), 1, SearchBudget::default()).is_none());
        assert!(find_hex_subdivision(&grid(3, 3), 2, SearchBudget::default()).is_none());
        assert!(find_hex_subdivision(&Graph::new(), 0, SearchBudget::default()).is_none());
    }

    #[test]
    fn subdivision_closure() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (host_r, r) in [(3, 2), (5, 3), (8, 6)] {
            let mut host = HexGrid::build(host_r).unwrap().to_graph();
            assert!(find_hex_subdivision(&host, r, SearchBudget::default()).is_some());
            for _ in 0..3 {
                let edges: Vec<_> = host.edges().collect();
                for (a, b) in edges {
                    if rng.gen_bool(0.2) {
                        subdivide(&mut host, a, b);
                    }
                }
                let sub = find_hex_subdivision(&host, r, SearchBudget::default())
                    .expect("closure under subdivision");
                sub.validate(&host).unwrap();
            }
        }
    }

    #[test]
    fn noisy_host_with_dense_vertices() {
        let grid = HexGrid::build(20).unwrap();
        let mut g = grid.to_graph();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let edges: Vec<_> = g.edges().collect();
        for (a, b) in edges {
            if rng.gen_bool(0.3) {
                subdivide(&mut g, a, b);
            }
        }
        let n = g.max_vertex_id().unwrap().0 + 1;
        for apex in [VertexId(n), VertexId(n + 1)] {
            let verts: Vec<_> = g.vertices().collect();
            for v in verts {
                if rng.gen_bool(0.05) {
                    g.add_edge(apex, v);
                }
            }
        }
        let sub = find_hex_subdivision(&g, 14, SearchBudget::default()).unwrap();
        sub.validate(&g).unwrap();
        assert!(!sub.vertex_set().contains(&VertexId(n)));
    }

    #[test]
    fn larger_grid_inside_larger_grid() {
        let host = HexGrid::build(12).unwrap().to_graph();
        let sub = find_hex_subdivision(&host, 9, SearchBudget::default()).unwrap();
        sub.validate(&host).unwrap();
        let mut with_chords = host.clone();
        with_chords.add_edge(VertexId(0), VertexId(500));
        let sub = find_hex_subdivision(&with_chords, 9, SearchBudget::default()).unwrap();
        sub.validate(&with_chords).unwrap();
    }
}
