//! Blocks, well-attached vertices, and the forced deletion (Reduction B).
//!
//! Blocks are `H_{k+3}` balls of the host grid lying inside `R`. They are
//! tiled once per layout; a vertex is then tested against all blocks with a
//! single flow that sends at most one unit into each block.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{ApexError, Result};
use crate::flow::paths_to_groups;
use crate::graph::{Graph, Indexed, PathInGraph, VertexId};
use crate::hexgrid::{Cell, HexSubdivision};
use crate::zones::{outer_circle, ZoneLayout};

#[derive(Clone, Debug, Serialize)]
pub struct Block {
    pub center: Cell,
    #[serde(skip)]
    pub grid: HexSubdivision,
    #[serde(skip)]
    pub vertices: BTreeSet<VertexId>,
    /// Vertices off the block's outer circle.
    pub inner: BTreeSet<VertexId>,
    #[serde(skip)]
    pub outer_circle: BTreeSet<VertexId>,
}

impl Block {
    fn new(center: Cell, grid: HexSubdivision) -> Self {
        let vertices = grid.vertex_set();
        let outer = outer_circle(&grid);
        let inner = vertices.difference(&outer).copied().collect();
        Block {
            center,
            grid,
            vertices,
            inner,
            outer_circle: outer,
        }
    }
}

/// A maximal deterministic family of pairwise vertex-disjoint blocks in `R`.
///
/// Balls of cell radius `m` share a vertex iff their centres are at most
/// `2m + 1` apart, so centres are kept `2m + 2` apart: first on the densest
/// lattice with that spacing, then greedily over the remaining cells of `R`.
pub fn enumerate_disjoint_blocks(layout: &ZoneLayout) -> Vec<Block> {
    let radius = layout.shape.block_radius;
    let m = radius as i32 - 1;
    let r_cells: BTreeSet<Cell> = layout
        .zones
        .iter()
        .flat_map(|z| z.grid.grid.cells.iter().copied())
        .collect();
    let fits = |c: Cell| c.spiral(radius).iter().all(|x| r_cells.contains(x));
    let span = layout.host.radius() as i32;
    let step = 2 * m + 2;
    let (a, b) = ((step, -(m + 1)), (m + 1, m + 1));
    let mut lattice = Vec::new();
    for i in -span..=span {
        for j in -span..=span {
            let c = Cell::new(i * a.0 + j * b.0, i * a.1 + j * b.1);
            if c.distance(Cell::ORIGIN) < layout.host.radius() {
                lattice.push(c);
            }
        }
    }
    lattice.sort();
    let mut centers: Vec<Cell> = Vec::new();
    for c in lattice.into_iter().chain(r_cells.iter().copied()) {
        if fits(c) && centers.iter().all(|&d| d.distance(c) >= step as usize) {
            centers.push(c);
        }
    }
    centers.sort();
    centers
        .into_iter()
        .map(|c| {
            Block::new(
                c,
                layout
                    .host
                    .restrict(c, radius)
                    .expect("block inside the host grid"),
            )
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct WellAttachedWitness {
    pub vertex: VertexId,
    pub blocks: Vec<Block>,
    /// `paths[i]` runs from `vertex` to an inner vertex of `blocks[i]`.
    pub paths: Vec<PathInGraph>,
}

impl WellAttachedWitness {
    /// Independent check of the definition: `k + 2` pairwise disjoint blocks
    /// of `R` that are valid subdivisions, paths from the vertex to their inner
    /// vertices with interiors outside `R`, meeting only at the vertex.
    pub fn verify(&self, g: &Graph, layout: &ZoneLayout) -> std::result::Result<(), String> {
        let x = self.vertex;
        let need = layout.k + 2;
        if self.blocks.len() < need || self.paths.len() != self.blocks.len() {
            return Err(format!(
                "{} blocks and {} paths, need {need}",
                self.blocks.len(),
                self.paths.len()
            ));
        }
        let mut seen = BTreeSet::new();
        for b in &self.blocks {
            if b.grid.radius() != layout.shape.block_radius {
                return Err(format!("block at {:?} has the wrong radius", b.center));
            }
            b.grid
                .validate(g)
                .map_err(|e| format!("block at {:?}: {e}", b.center))?;
            let vertices = b.grid.vertex_set();
            let inner: BTreeSet<VertexId> = vertices
                .difference(&outer_circle(&b.grid))
                .copied()
                .collect();
            if inner != b.inner {
                return Err(format!(
                    "block at {:?} lists wrong inner vertices",
                    b.center
                ));
            }
            if !b
                .grid
                .cells_edge_set(&b.grid.grid.cells)
                .is_subset(&layout.r_edges)
            {
                return Err(format!("block at {:?} is not a subgraph of R", b.center));
            }
            if !seen.is_disjoint(&vertices) {
                return Err(format!("block at {:?} overlaps another block", b.center));
            }
            seen.extend(vertices);
        }
        let mut used = BTreeSet::new();
        for (p, b) in self.paths.iter().zip(&self.blocks) {
            if p.is_empty() || p.start() != x || !p.is_valid_in(g) {
                return Err("path does not start at the vertex or is not a path of g".into());
            }
            if !b.inner.contains(&p.end()) {
                return Err(format!(
                    "path does not end at an inner vertex of block {:?}",
                    b.center
                ));
            }
            if p.interior().iter().any(|v| layout.r_vertices.contains(v)) {
                return Err("path interior meets R".into());
            }
            for &v in &p.vertices()[1..] {
                if !used.insert(v) {
                    return Err(format!("paths share vertex {v:?} besides the vertex"));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness serializes")
    }
}

/// Precomputed flow data for testing many vertices against one block family.
pub struct AttachmentScan<'a> {
    g: &'a Graph,
    layout: &'a ZoneLayout,
    pub blocks: Vec<Block>,
    index: Indexed,
    interior_ok: Vec<bool>,
    group: Vec<Option<usize>>,
    /// Component of `G - R` containing each vertex outside `R`.
    component: Vec<usize>,
    /// Blocks whose inner vertices each component touches.
    reach: Vec<BTreeSet<usize>>,
}

impl<'a> AttachmentScan<'a> {
    pub fn new(g: &'a Graph, layout: &'a ZoneLayout) -> Self {
        Self::with_blocks(g, layout, enumerate_disjoint_blocks(layout))
    }

    pub fn with_blocks(g: &'a Graph, layout: &'a ZoneLayout, blocks: Vec<Block>) -> Self {
        let index = Indexed::new(g);
        let interior_ok: Vec<bool> = index
            .ids
            .iter()
            .map(|v| !layout.r_vertices.contains(v))
            .collect();
        let mut group = vec![None; index.len()];
        for (i, b) in blocks.iter().enumerate() {
            for v in &b.inner {
                if let Some(j) = index.index_of(*v) {
                    group[j] = Some(i);
                }
            }
        }
        let (component, reach) = outside_components(&index.adj, &interior_ok, &group);
        AttachmentScan {
            g,
            layout,
            blocks,
            index,
            interior_ok,
            group,
            component,
            reach,
        }
    }

    /// Cheap necessary condition: enough distinct first steps out of `x`,
    /// and enough blocks reachable through them.
    fn promising(&self, x: usize, need: usize) -> bool {
        let adj = &self.index.adj[x];
        let exits = adj
            .iter()
            .filter(|&&w| self.interior_ok[w] || self.group[w].is_some())
            .count();
        if exits + usize::from(self.group[x].is_some()) < need {
            return false;
        }
        let mut blocks: BTreeSet<usize> = self.group[x].into_iter().collect();
        for &w in adj.iter().chain(std::iter::once(&x)) {
            match self.group[w] {
                Some(b) => {
                    blocks.insert(b);
                }
                None if self.interior_ok[w] => {
                    blocks.extend(self.reach[self.component[w]].iter().copied())
                }
                None => {}
            }
        }
        blocks.len() >= need
    }

    pub fn test(&self, x: VertexId) -> Option<WellAttachedWitness> {
        let need = self.layout.k + 2;
        let xi = self.index.index_of(x)?;
        if self.blocks.len() < need || !self.promising(xi, need) {
            return None;
        }
        let raw = paths_to_groups(
            &self.index.adj,
            xi,
            &self.interior_ok,
            &self.group,
            self.blocks.len(),
            need,
        );
        if raw.len() < need {
            return None;
        }
        let mut blocks = Vec::with_capacity(need);
        let mut paths = Vec::with_capacity(need);
        for p in raw {
            let end = *p.last().expect("nonempty path");
            blocks.push(self.blocks[self.group[end].expect("path ends in a block")].clone());
            paths.push(PathInGraph::new(
                p.into_iter().map(|v| self.index.ids[v]).collect(),
            ));
        }
        let w = WellAttachedWitness {
            vertex: x,
            blocks,
            paths,
        };
        debug_assert_eq!(w.verify(self.g, self.layout), Ok(()));
        Some(w)
    }

    /// Witnesses for every well-attached vertex, ordered by vertex.
    pub fn all(&self) -> Vec<WellAttachedWitness> {
        let ids: Vec<VertexId> = self.index.ids.clone();
        ids.par_iter().filter_map(|&x| self.test(x)).collect()
    }
}

fn outside_components(
    adj: &[Vec<usize>],
    outside: &[bool],
    group: &[Option<usize>],
) -> (Vec<usize>, Vec<BTreeSet<usize>>) {
    let mut component = vec![usize::MAX; adj.len()];
    let mut reach = Vec::new();
    for s in 0..adj.len() {
        if !outside[s] || component[s] != usize::MAX {
            continue;
        }
        let id = reach.len();
        let mut touched = BTreeSet::new();
        component[s] = id;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if outside[w] && component[w] == usize::MAX {
                    component[w] = id;
                    stack.push(w);
                } else if let Some(b) = group[w] {
                    touched.insert(b);
                }
            }
        }
        reach.push(touched);
    }
    (component, reach)
}

pub fn is_well_attached(
    g: &Graph,
    layout: &ZoneLayout,
    x: VertexId,
) -> Option<WellAttachedWitness> {
    AttachmentScan::new(g, layout).test(x)
}

/// Deletes the witnessed vertices after re-verifying every witness.
pub fn reduction_b(
    g: &Graph,
    layout: &ZoneLayout,
    witnesses: &[WellAttachedWitness],
) -> Result<Graph> {
    let mut u = BTreeSet::new();
    for w in witnesses {
        w.verify(g, layout).map_err(|e| {
            ApexError::Domain(format!("vertex {:?} is not well-attached: {e}", w.vertex))
        })?;
        u.insert(w.vertex);
    }
    Ok(g.without(&u))
}
