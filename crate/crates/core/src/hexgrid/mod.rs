//! Radial hexagonal grids `H_r` and their subdivisions inside host graphs.
//!
//! Cells use axial coordinates `(q, r)`. A grid vertex is a cell corner; the
//! corner between neighbouring directions `d_i` and `d_{i+1}` of cell `c` is
//! stored as `3c + d_i + d_{i+1}`, i.e. three times the centroid of the three
//! cells meeting there, which keeps all coordinates integral and shared
//! corners identical.
//!
//! `H_r` is the ball of cells within hex distance `r - 1` of its centre. Its
//! `i`-th concentric circle consists of the vertices of `H_i` that are not
//! vertices of `H_{i-1}`.

mod search;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{ApexError, Result};
use crate::graph::{Graph, PathInGraph, VertexId};

pub use search::{find_hex_subdivision, SearchBudget};

/// Axial neighbour directions in cyclic order.
pub const DIRECTIONS: [(i32, i32); 6] = [(1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1), (0, 1)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub q: i32,
    pub r: i32,
}

impl Cell {
    pub const ORIGIN: Cell = Cell { q: 0, r: 0 };

    pub fn new(q: i32, r: i32) -> Self {
        Cell { q, r }
    }

    pub fn offset(self, dq: i32, dr: i32) -> Self {
        Cell {
            q: self.q + dq,
            r: self.r + dr,
        }
    }

    pub fn distance(self, other: Cell) -> usize {
        let dq = self.q - other.q;
        let dr = self.r - other.r;
        ((dq.abs() + dr.abs() + (dq + dr).abs()) / 2) as usize
    }

    pub fn neighbor(self, dir: usize) -> Cell {
        let (dq, dr) = DIRECTIONS[dir % 6];
        self.offset(dq, dr)
    }

    /// The six corners in cyclic order.
    pub fn corners(self) -> [Corner; 6] {
        std::array::from_fn(|i| {
            let (a, b) = DIRECTIONS[i];
            let (c, d) = DIRECTIONS[(i + 1) % 6];
            Corner(3 * self.q + a + c, 3 * self.r + b + d)
        })
    }

    /// Cells at distance exactly `d`, walking the ring in cyclic order.
    pub fn ring(self, d: usize) -> Vec<Cell> {
        if d == 0 {
            return vec![self];
        }
        let (sq, sr) = DIRECTIONS[4];
        let mut cur = self.offset(sq * d as i32, sr * d as i32);
        let mut out = Vec::with_capacity(6 * d);
        for dir in 0..6 {
            for _ in 0..d {
                out.push(cur);
                cur = cur.neighbor(dir);
            }
        }
        out
    }

    /// Cells within distance `radius - 1`, ring by ring (the cells of `H_radius`).
    pub fn spiral(self, radius: usize) -> Vec<Cell> {
        (0..radius).flat_map(|d| self.ring(d)).collect()
    }
}

/// A cell corner in tripled axial coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Corner(pub i32, pub i32);

impl Corner {
    pub fn translate(self, by: Cell) -> Corner {
        Corner(self.0 + 3 * by.q, self.1 + 3 * by.r)
    }
}

/// The abstract grid `H_r` centred on some cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexGrid {
    pub radius: usize,
    pub center: Cell,
    /// Cells in spiral order: centre first, then ring by ring.
    pub cells: Vec<Cell>,
    /// Corners, sorted.
    pub vertices: Vec<Corner>,
    /// Sorted pairs of vertex indices.
    pub edges: Vec<(usize, usize)>,
    pub cell_vertices: Vec<[usize; 6]>,
    /// Concentric circle index (1-based) of every vertex.
    pub circle: Vec<usize>,
    adj: Vec<Vec<usize>>,
}

impl HexGrid {
    /// `H_r` centred at the origin.
    pub fn build(r: usize) -> Result<HexGrid> {
        HexGrid::ball(Cell::ORIGIN, r)
    }

    /// `H_r` centred at `center`.
    pub fn ball(center: Cell, r: usize) -> Result<HexGrid> {
        if r < 1 {
            return Err(ApexError::Domain(
                "hexagonal grid radius must be at least 1".into(),
            ));
        }
        let cells = center.spiral(r);
        let mut vertices: Vec<Corner> = cells.iter().flat_map(|c| c.corners()).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let index = |c: Corner| vertices.binary_search(&c).expect("corner of a grid cell");
        let cell_vertices: Vec<[usize; 6]> = cells.iter().map(|c| c.corners().map(index)).collect();
        let mut edges: Vec<(usize, usize)> = cell_vertices
            .iter()
            .flat_map(|cv| {
                (0..6).map(move |i| (cv[i].min(cv[(i + 1) % 6]), cv[i].max(cv[(i + 1) % 6])))
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let mut circle = vec![usize::MAX; vertices.len()];
        for (cell, cv) in cells.iter().zip(&cell_vertices) {
            let d = cell.distance(center) + 1;
            for &v in cv {
                circle[v] = circle[v].min(d);
            }
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        Ok(HexGrid {
            radius: r,
            center,
            cells,
            vertices,
            edges,
            cell_vertices,
            circle,
            adj,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn vertex_index(&self, c: Corner) -> Option<usize> {
        self.vertices.binary_search(&c).ok()
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&(a.min(b), a.max(b))).ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn contains_cell(&self, c: Cell) -> bool {
        c.distance(self.center) < self.radius
    }

    /// Vertices on the outermost circle.
    pub fn outer_circle(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.circle[v] == self.radius)
            .collect()
    }

    /// Indices of the edges on the boundary of the given cells.
    pub fn cell_edge_indices<'c>(
        &self,
        cells: impl IntoIterator<Item = &'c Cell>,
    ) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for c in cells {
            let cv = c
                .corners()
                .map(|k| self.vertex_index(k).expect("cell inside grid"));
            for i in 0..6 {
                out.insert(self.edge_index(cv[i], cv[(i + 1) % 6]).expect("cell edge"));
            }
        }
        out
    }

    /// The grid as a graph, vertex ids equal to vertex indices.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new();
        for v in 0..self.vertex_count() {
            g.add_vertex(VertexId(v as u32));
        }
        for &(a, b) in &self.edges {
            g.add_edge(VertexId(a as u32), VertexId(b as u32));
        }
        g
    }
}

/// An embedding of a subdivided `H_r` in a host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexSubdivision {
    pub grid: HexGrid,
    /// Image of every grid vertex.
    pub branch: Vec<VertexId>,
    /// Image of every grid edge `edges[i] = (a, b)`, running from `branch[a]` to `branch[b]`.
    pub paths: Vec<PathInGraph>,
}

impl HexSubdivision {
    /// The grid as its own host, see [`HexGrid::to_graph`].
    pub fn identity(grid: HexGrid) -> Self {
        let branch = (0..grid.vertex_count())
            .map(|v| VertexId(v as u32))
            .collect();
        let paths = grid
            .edges
            .iter()
            .map(|&(a, b)| PathInGraph::new(vec![VertexId(a as u32), VertexId(b as u32)]))
            .collect();
        HexSubdivision {
            grid,
            branch,
            paths,
        }
    }

    pub fn radius(&self) -> usize {
        self.grid.radius
    }

    /// All host vertices used: branch images and path interiors.
    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        let mut s: BTreeSet<VertexId> = self.branch.iter().copied().collect();
        for p in &self.paths {
            s.extend(p.interior().iter().copied());
        }
        s
    }

    /// Host vertices of the patch formed by `cells` (corners and cell-edge interiors).
    pub fn cells_vertex_set<'a>(
        &self,
        cells: impl IntoIterator<Item = &'a Cell>,
    ) -> BTreeSet<VertexId> {
        let cells: Vec<&Cell> = cells.into_iter().collect();
        let mut s = BTreeSet::new();
        for c in &cells {
            for k in c.corners() {
                s.insert(self.branch[self.grid.vertex_index(k).expect("cell inside grid")]);
            }
        }
        for e in self.grid.cell_edge_indices(cells.iter().copied()) {
            s.extend(self.paths[e].interior().iter().copied());
        }
        s
    }

    /// Host edges of the patch formed by `cells`, as sorted pairs.
    pub fn cells_edge_set<'a>(
        &self,
        cells: impl IntoIterator<Item = &'a Cell>,
    ) -> BTreeSet<(VertexId, VertexId)> {
        self.grid
            .cell_edge_indices(cells)
            .into_iter()
            .flat_map(|e| {
                self.paths[e]
                    .edges()
                    .map(|(a, b)| (a.min(b), a.max(b)))
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    /// The sub-subdivision of the ball of radius `radius` around `center`,
    /// re-centred as its own `H_radius`. `None` if the ball leaves the grid.
    pub fn restrict(&self, center: Cell, radius: usize) -> Option<HexSubdivision> {
        let local = HexGrid::ball(center, radius).ok()?;
        if !local.cells.iter().all(|&c| self.grid.contains_cell(c)) {
            return None;
        }
        let map: Vec<usize> = local
            .vertices
            .iter()
            .map(|&k| self.grid.vertex_index(k))
            .collect::<Option<_>>()?;
        let branch = map.iter().map(|&v| self.branch[v]).collect();
        let mut paths = Vec::with_capacity(local.edges.len());
        for &(a, b) in &local.edges {
            let (ga, gb) = (map[a], map[b]);
            let e = self.grid.edge_index(ga, gb)?;
            let p = &self.paths[e];
            paths.push(if self.grid.edges[e].0 == ga {
                p.clone()
            } else {
                p.reversed()
            });
        }
        Some(HexSubdivision {
            grid: local,
            branch,
            paths,
        })
    }

    /// Checks that this is a subdivision of its grid inside `host`: images are
    /// distinct host vertices, paths are host paths with the right endpoints,
    /// interiors are disjoint from each other and from all images, and the
    /// union contracts back to exactly the grid's edge set.
    pub fn validate(&self, host: &Graph) -> std::result::Result<(), String> {
        let grid = &self.grid;
        if grid.vertex_count() != 6 * grid.radius * grid.radius
            || grid.cell_count() != 3 * grid.radius * (grid.radius - 1) + 1
        {
            return Err("grid does not have the counts of H_r".into());
        }
        if self.branch.len() != grid.vertex_count() || self.paths.len() != grid.edges.len() {
            return Err("branch map or path map has the wrong size".into());
        }
        let images: BTreeMap<VertexId, usize> = self
            .branch
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        if images.len() != self.branch.len() {
            return Err("branch map is not injective".into());
        }
        if let Some(v) = self.branch.iter().find(|v| !host.contains(**v)) {
            return Err(format!("branch image {v} is not a host vertex"));
        }
        let mut interiors = BTreeSet::new();
        for (i, p) in self.paths.iter().enumerate() {
            let (a, b) = grid.edges[i];
            if p.is_empty() || !p.is_valid_in(host) {
                return Err(format!("path for grid edge {i} is not a host path"));
            }
            if p.start() != self.branch[a] || p.end() != self.branch[b] {
                return Err(format!("path for grid edge {i} has wrong endpoints"));
            }
            for &x in p.interior() {
                if images.contains_key(&x) || !interiors.insert(x) {
                    return Err(format!("path interiors are not disjoint at {x}"));
                }
            }
        }
        // Contract the union: walk from each image through interior vertices.
        let mut union: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for p in &self.paths {
            for (a, b) in p.edges() {
                union.entry(a).or_default().push(b);
                union.entry(b).or_default().push(a);
            }
        }
        let mut contracted = BTreeSet::new();
        for (&start, &gi) in &images {
            for &first in union.get(&start).map(Vec::as_slice).unwrap_or(&[]) {
                let (mut prev, mut cur) = (start, first);
                while !images.contains_key(&cur) {
                    let nbrs = &union[&cur];
                    if nbrs.len() != 2 {
                        return Err(format!(
                            "interior vertex {cur} has degree {} in the union",
                            nbrs.len()
                        ));
                    }
                    let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
                    prev = cur;
                    cur = next;
                }
                let gj = images[&cur];
                contracted.insert((gi.min(gj), gi.max(gj)));
            }
        }
        let expected: BTreeSet<(usize, usize)> = grid.edges.iter().copied().collect();
        if contracted != expected {
            return Err("contracted union differs from the grid".into());
        }
        Ok(())
    }

    /// Graphviz rendering of the subdivision with branch vertices highlighted.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph hex {\n  node [shape=point];\n");
        for v in &self.branch {
            let _ = writeln!(
                out,
                "  {v} [shape=circle, style=filled, fillcolor=red, label=\"\"];"
            );
        }
        for p in &self.paths {
            for (a, b) in p.edges() {
                let _ = writeln!(out, "  {a} -- {b};");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// `6r - 5`: the treewidth above which a planar graph contains the `r x r` grid as a minor.
pub fn rectangular_grid_threshold(r: usize) -> usize {
    6 * r - 5
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treewidth::width_budget;

    #[test]
    fn counts_for_small_radii() {
        for (r, v, c) in [(1, 6, 1), (2, 24, 7), (3, 54, 19)] {
            let g = HexGrid::build(r).unwrap();
            assert_eq!(g.vertex_count(), v);
            assert_eq!(g.cell_count(), c);
        }
        assert!(matches!(HexGrid::build(0), Err(ApexError::Domain(_))));
    }

    #[test]
    fn structure_up_to_radius_six() {
        for r in 1..=6 {
            let g = HexGrid::build(r).unwrap();
            assert_eq!(g.vertex_count(), 6 * r * r);
            assert_eq!(g.cell_count(), 3 * r * (r - 1) + 1);
            assert!((0..g.vertex_count()).all(|v| g.degree(v) <= 3 && g.degree(v) >= 2));
            // Every cell is a 6-cycle of the grid.
            for cv in &g.cell_vertices {
                for i in 0..6 {
                    assert!(g.edge_index(cv[i], cv[(i + 1) % 6]).is_some());
                }
            }
            // Circle i has the 6(2i-1) vertices of H_i outside H_{i-1}.
            for i in 1..=r {
                assert_eq!(
                    g.circle.iter().filter(|&&c| c == i).count(),
                    6 * (2 * i - 1)
                );
            }
            let graph = g.to_graph();
            assert!(crate::planarity::is_planar(&graph));
            assert_eq!(graph.edge_count(), g.edges.len());
        }
    }

    #[test]
    fn grids_are_nested() {
        for r in 1..6 {
            let small = HexGrid::build(r).unwrap();
            let big = HexGrid::build(r + 1).unwrap();
            for &(a, b) in &small.edges {
                let (ka, kb) = (small.vertices[a], small.vertices[b]);
                let (ba, bb) = (big.vertex_index(ka).unwrap(), big.vertex_index(kb).unwrap());
                assert!(big.edge_index(ba, bb).is_some());
                assert_eq!(small.circle[a], big.circle[ba]);
            }
        }
    }

    #[test]
    fn identity_subdivision_validates() {
        let grid = HexGrid::build(3).unwrap();
        let host = grid.to_graph();
        let sub = HexSubdivision::identity(grid);
        sub.validate(&host).unwrap();
        let inner = sub.restrict(Cell::ORIGIN, 2).unwrap();
        inner.validate(&host).unwrap();
        assert!(sub.restrict(Cell::new(2, 0), 2).is_none());
        let off = sub.restrict(Cell::new(1, 0), 2).unwrap();
        off.validate(&host).unwrap();
        assert_eq!(off.grid.center, Cell::new(1, 0));
    }

    #[test]
    fn validator_catches_shared_interiors() {
        let grid = HexGrid::build(2).unwrap();
        let host = grid.to_graph();
        let mut sub = HexSubdivision::identity(grid);
        sub.branch.swap(0, 1);
        assert!(sub.validate(&host).is_err());
    }

    #[test]
    fn threshold_values() {
        assert_eq!(rectangular_grid_threshold(1), 1);
        assert_eq!(rectangular_grid_threshold(4), 19);
        assert_eq!(
            width_budget(2, 3) - 3,
            rectangular_grid_threshold(4 * 2 - 1)
        );
        assert_eq!(rectangular_grid_threshold(7), 37);
    }
}
