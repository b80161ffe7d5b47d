//! Zones inside a found grid, grid-components, flatness, and the flat-zone
//! deletion (Reduction A).
//!
//! Zones are copies of `H_{2k+5}` carved from the host grid around the cells of
//! a scaled `H_q`: with `n = 2k+4`, the `H_q` cell `(a, b)` becomes the zone
//! centre `a(2n+1, -n) + b(n, n+1)`. Neighbouring centres are `2n+1 = 4k+9`
//! apart, so zones share at most outer-circle vertices, and the host radius
//! `(q-1)(4k+9) + (2k+5)` is exactly enough to contain all of them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ApexError, Result};
use crate::graph::{Graph, VertexId};
use crate::hexgrid::{Cell, HexSubdivision};
use crate::planarity::is_planar;

/// `d = (k+1)((k+1)^2 - 1)`.
pub fn d(k: usize) -> usize {
    (k + 1) * ((k + 1) * (k + 1) - 1)
}

/// `z = 7k + k(k+1)^2 + kd + 1`, the number of zones required.
pub fn z(k: usize) -> usize {
    7 * k + k * (k + 1) * (k + 1) + k * d(k) + 1
}

/// Smallest `q` with `3q(q-1) + 1 >= z`.
pub fn q(k: usize) -> usize {
    let target = z(k);
    (1..).find(|&q| 3 * q * (q - 1) + 1 >= target).unwrap()
}

/// `(q-1)(4k+9) + (2k+5)`.
pub fn radius_for(k: usize) -> usize {
    (q(k) - 1) * (4 * k + 9) + (2 * k + 5)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstantsMode {
    /// The constants above.
    #[default]
    Paper,
    /// Seven zones (`q = 2`) of the same shape; the counting arguments that
    /// need `z` zones no longer apply, so results must be verified post hoc.
    Reduced,
}

/// Radii and zone count of a layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZoneShape {
    pub zone_radius: usize,
    pub core_radius: usize,
    pub block_radius: usize,
    pub q: usize,
}

impl ZoneShape {
    pub fn for_k(k: usize, mode: ConstantsMode) -> Self {
        let q = match mode {
            ConstantsMode::Paper => q(k),
            ConstantsMode::Reduced => 2,
        };
        ZoneShape {
            zone_radius: 2 * k + 5,
            core_radius: 2 * k + 3,
            block_radius: k + 3,
            q,
        }
    }

    /// Radius of the host grid that holds exactly the `3q(q-1)+1` zones.
    pub fn host_radius(&self) -> usize {
        (self.q - 1) * (2 * self.zone_radius - 1) + self.zone_radius
    }

    pub fn zone_count(&self) -> usize {
        3 * self.q * (self.q - 1) + 1
    }

    /// Zone centres in host cell coordinates, in spiral order of `H_q`.
    pub fn zone_centers(&self) -> Vec<Cell> {
        let n = self.zone_radius as i32 - 1;
        Cell::ORIGIN
            .spiral(self.q)
            .into_iter()
            .map(|c| Cell::new(c.q * (2 * n + 1) + c.r * n, -c.q * n + c.r * (n + 1)))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Zone {
    pub id: usize,
    pub center: Cell,
    /// The zone as its own subdivided `H_{zone_radius}`.
    pub grid: HexSubdivision,
    pub vertices: BTreeSet<VertexId>,
    /// Vertices of the central `H_{core_radius}`.
    pub core: BTreeSet<VertexId>,
    /// `rings[i]`: vertices of the cells at distance `i` from the centre.
    pub rings: Vec<BTreeSet<VertexId>>,
    pub outer_circle: BTreeSet<VertexId>,
}

#[derive(Clone, Debug)]
pub struct ZoneLayout {
    pub host: HexSubdivision,
    pub shape: ZoneShape,
    pub k: usize,
    pub zones: Vec<Zone>,
    /// Vertices and edges of the union of all zones.
    pub r_vertices: BTreeSet<VertexId>,
    pub r_edges: BTreeSet<(VertexId, VertexId)>,
}

/// Vertices on the outer circle of a subdivided grid: images of the outermost
/// grid vertices and the interiors of the paths between them.
pub(crate) fn outer_circle(sub: &HexSubdivision) -> BTreeSet<VertexId> {
    let grid = &sub.grid;
    let mut out = BTreeSet::new();
    for (e, &(a, b)) in grid.edges.iter().enumerate() {
        if grid.circle[a] == grid.radius && grid.circle[b] == grid.radius {
            out.extend(sub.paths[e].vertices().iter().copied());
        }
    }
    out
}

/// Lays out the zones of `shape` in `host`, whose radius must match.
pub fn layout_zones(host: &HexSubdivision, k: usize, shape: ZoneShape) -> Result<ZoneLayout> {
    if host.radius() != shape.host_radius() {
        return Err(ApexError::Domain(format!(
            "host grid radius {} does not match the zone layout radius {}",
            host.radius(),
            shape.host_radius()
        )));
    }
    let mut zones = Vec::new();
    let mut r_vertices = BTreeSet::new();
    let mut r_edges = BTreeSet::new();
    for (id, center) in shape.zone_centers().into_iter().enumerate() {
        let grid = host
            .restrict(center, shape.zone_radius)
            .ok_or_else(|| ApexError::Domain(format!("zone {id} does not fit in the host grid")))?;
        let cells = &grid.grid.cells;
        let core_cells: Vec<Cell> = cells
            .iter()
            .copied()
            .filter(|c| c.distance(center) < shape.core_radius)
            .collect();
        let rings = (0..shape.zone_radius)
            .map(|i| grid.cells_vertex_set(cells.iter().filter(|c| c.distance(center) == i)))
            .collect();
        let zone = Zone {
            id,
            center,
            vertices: grid.vertex_set(),
            core: grid.cells_vertex_set(&core_cells),
            rings,
            outer_circle: outer_circle(&grid),
            grid,
        };
        r_vertices.extend(zone.vertices.iter().copied());
        r_edges.extend(zone.grid.cells_edge_set(&zone.grid.grid.cells));
        zones.push(zone);
    }
    Ok(ZoneLayout {
        host: host.clone(),
        shape,
        k,
        zones,
        r_vertices,
        r_edges,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentKind {
    SingleEdge,
    Component,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridComponent {
    pub kind: ComponentKind,
    /// Vertices outside `R`; empty for a single edge.
    pub vertices: BTreeSet<VertexId>,
    /// The edge of a single-edge component.
    pub edge: Option<(VertexId, VertexId)>,
    /// Vertices of `R` the component is attached to.
    pub attachments: BTreeSet<VertexId>,
}

/// All grid-components of `g` with respect to the layout's `R`.
pub fn grid_components(g: &Graph, layout: &ZoneLayout) -> Vec<GridComponent> {
    let r = &layout.r_vertices;
    let mut out = Vec::new();
    for (a, b) in g.edges() {
        if r.contains(&a) && r.contains(&b) && !layout.r_edges.contains(&(a, b)) {
            out.push(GridComponent {
                kind: ComponentKind::SingleEdge,
                vertices: BTreeSet::new(),
                edge: Some((a, b)),
                attachments: [a, b].into_iter().collect(),
            });
        }
    }
    let mut seen = BTreeSet::new();
    for v in g.vertices() {
        if r.contains(&v) || seen.contains(&v) {
            continue;
        }
        let mut vertices = BTreeSet::from([v]);
        let mut attachments = BTreeSet::new();
        let mut queue = VecDeque::from([v]);
        seen.insert(v);
        while let Some(x) = queue.pop_front() {
            for y in g.neighbors(x) {
                if r.contains(&y) {
                    attachments.insert(y);
                } else if seen.insert(y) {
                    vertices.insert(y);
                    queue.push_back(y);
                }
            }
        }
        out.push(GridComponent {
            kind: ComponentKind::Component,
            vertices,
            edge: None,
            attachments,
        });
    }
    out
}

/// How a component attached to a zone core sits relative to the grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Placement {
    /// All attachments on one subdivided grid edge.
    Edge,
    /// All attachments on the boundary of one cell.
    Cell,
    Other,
}

/// Per-zone diagnostics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZoneReport {
    pub id: usize,
    pub center: Cell,
    pub open: bool,
    pub flat: bool,
    pub edge_components: usize,
    pub cell_components: usize,
    pub other_components: usize,
}

/// Grid-components of one graph, indexed by the `R`-vertices they attach to.
pub struct ZoneScan<'a> {
    g: &'a Graph,
    layout: &'a ZoneLayout,
    pub components: Vec<GridComponent>,
    attached: BTreeMap<VertexId, Vec<usize>>,
    /// Zones containing each `R`-vertex.
    zones_of: BTreeMap<VertexId, Vec<usize>>,
}

impl<'a> ZoneScan<'a> {
    pub fn new(g: &'a Graph, layout: &'a ZoneLayout) -> Self {
        let components = grid_components(g, layout);
        let mut attached: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
        for (i, c) in components.iter().enumerate() {
            for &a in &c.attachments {
                attached.entry(a).or_default().push(i);
            }
        }
        let mut zones_of: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
        for zone in &layout.zones {
            for &v in &zone.vertices {
                zones_of.entry(v).or_default().push(zone.id);
            }
        }
        ZoneScan {
            g,
            layout,
            components,
            attached,
            zones_of,
        }
    }

    fn core_components(&self, zone: &Zone) -> BTreeSet<usize> {
        zone.core
            .iter()
            .filter_map(|v| self.attached.get(v))
            .flatten()
            .copied()
            .collect()
    }

    /// Open iff some component attached to the zone's core is also attached
    /// to a vertex of another zone. A vertex shared with a neighbouring zone
    /// counts as belonging to that zone too.
    pub fn is_open(&self, zone: &Zone) -> bool {
        self.core_components(zone).into_iter().any(|c| {
            self.components[c].attachments.iter().any(|a| {
                self.zones_of
                    .get(a)
                    .is_some_and(|zs| zs.iter().any(|&z| z != zone.id))
            })
        })
    }

    /// `T(h)`: the subgraph induced by `h` and every component attached only to `h`.
    pub fn t_of(&self, h: &BTreeSet<VertexId>) -> Graph {
        let mut keep = h.clone();
        let touched: BTreeSet<usize> = h
            .iter()
            .filter_map(|v| self.attached.get(v))
            .flatten()
            .copied()
            .collect();
        for c in touched {
            let comp = &self.components[c];
            if comp.attachments.is_subset(h) {
                keep.extend(comp.vertices.iter().copied());
            }
        }
        self.g.induced(&keep)
    }

    pub fn is_flat(&self, zone: &Zone) -> bool {
        !self.is_open(zone) && is_planar(&self.t_of(&zone.vertices))
    }

    /// Where a component sits relative to the zone's grid.
    pub fn placement(&self, zone: &Zone, comp: &GridComponent) -> Placement {
        let sub = &zone.grid;
        let on_edge = sub.paths.iter().any(|p| {
            let vs: BTreeSet<VertexId> = p.vertices().iter().copied().collect();
            comp.attachments.is_subset(&vs)
        });
        if on_edge {
            return Placement::Edge;
        }
        let on_cell = sub
            .grid
            .cells
            .iter()
            .any(|c| comp.attachments.is_subset(&sub.cells_vertex_set([c])));
        if on_cell {
            Placement::Cell
        } else {
            Placement::Other
        }
    }

    pub fn report(&self, zone: &Zone) -> ZoneReport {
        let open = self.is_open(zone);
        let flat = !open && is_planar(&self.t_of(&zone.vertices));
        let mut counts = [0usize; 3];
        for c in self.core_components(zone) {
            counts[self.placement(zone, &self.components[c]) as usize] += 1;
        }
        ZoneReport {
            id: zone.id,
            center: zone.center,
            open,
            flat,
            edge_components: counts[0],
            cell_components: counts[1],
            other_components: counts[2],
        }
    }

    /// The first flat zone by id; zones are tested in parallel.
    pub fn first_flat(&self) -> Option<&'a Zone> {
        let layout = self.layout;
        layout.zones.par_iter().find_first(|z| self.is_flat(z))
    }
}

/// Whether `zone` is open (`true`) or closed.
pub fn classify_zone(g: &Graph, layout: &ZoneLayout, zone: &Zone) -> bool {
    ZoneScan::new(g, layout).is_open(zone)
}

pub fn induced_with_components(g: &Graph, layout: &ZoneLayout, h: &BTreeSet<VertexId>) -> Graph {
    ZoneScan::new(g, layout).t_of(h)
}

pub fn is_flat(g: &Graph, layout: &ZoneLayout, zone: &Zone) -> bool {
    ZoneScan::new(g, layout).is_flat(zone)
}

/// `g - T(R_0)` for a flat zone.
pub fn reduction_a(g: &Graph, layout: &ZoneLayout, zone: &Zone) -> Result<Graph> {
    let scan = ZoneScan::new(g, layout);
    if !scan.is_flat(zone) {
        return Err(ApexError::Domain(format!("zone {} is not flat", zone.id)));
    }
    let t = scan.t_of(&zone.rings[0]);
    let doomed: BTreeSet<VertexId> = t.vertices().collect();
    Ok(g.without(&doomed))
}
