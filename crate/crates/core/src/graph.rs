//! Simple undirected graphs with stable vertex identities.
//!
//! A [`Graph`] never renumbers its vertices: deleting vertices keeps the ids
//! of the survivors, so an apex set computed on a reduced graph is directly a
//! vertex set of the original input.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{ApexError, Result};

/// Identity of a vertex, preserved across every subgraph operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

/// Input formats understood by [`load_graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// One edge per line, two whitespace-separated ids; `#` starts a comment line.
    EdgeList,
    /// `p edge n m` header followed by `e u v` lines.
    Dimacs,
}

/// A simple undirected graph.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    edges: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, m={}, edges=[",
            self.vertex_count(),
            self.edge_count()
        )?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from an edge iterator; loops and duplicates are dropped.
    pub fn from_edges<I, A, B>(edges: I) -> Self
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<VertexId>,
        B: Into<VertexId>,
    {
        let mut g = Graph::new();
        for (u, v) in edges {
            g.add_edge(u.into(), v.into());
        }
        g
    }

    pub fn add_vertex(&mut self, v: VertexId) -> bool {
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, BTreeSet::new());
        true
    }

    /// Inserts `u-v`, creating missing endpoints. Returns `false` for loops and
    /// edges that are already present.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        if u == v {
            self.add_vertex(u);
            return false;
        }
        let fresh = self.adj.entry(u).or_default().insert(v);
        self.adj.entry(v).or_default().insert(u);
        if fresh {
            self.edges += 1;
        }
        fresh
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        let removed = self.adj.get_mut(&u).is_some_and(|n| n.remove(&v));
        if removed {
            if let Some(n) = self.adj.get_mut(&v) {
                n.remove(&u);
            }
            self.edges -= 1;
        }
        removed
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    /// Vertices in ascending id order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.get(&v).into_iter().flat_map(|n| n.iter().copied())
    }

    /// Every edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, n)| n.range(u..).map(move |&v| (u, v)))
    }

    pub fn max_vertex_id(&self) -> Option<VertexId> {
        self.adj.keys().next_back().copied()
    }

    /// `G - S`. Fails if some vertex of `s` is not in the graph.
    pub fn delete_vertices<'a, I>(&self, s: I) -> Result<Graph>
    where
        I: IntoIterator<Item = &'a VertexId>,
    {
        let s: BTreeSet<VertexId> = s.into_iter().copied().collect();
        if let Some(v) = s.iter().find(|v| !self.contains(**v)) {
            return Err(ApexError::Domain(format!("vertex {v} is not in the graph")));
        }
        Ok(self.without(&s))
    }

    /// `G - S`, ignoring members of `s` that are absent.
    pub fn without(&self, s: &BTreeSet<VertexId>) -> Graph {
        if s.is_empty() {
            return self.clone();
        }
        let mut adj = BTreeMap::new();
        let mut twice = 0;
        for (&u, n) in &self.adj {
            if s.contains(&u) {
                continue;
            }
            let kept: BTreeSet<VertexId> = n.iter().copied().filter(|v| !s.contains(v)).collect();
            twice += kept.len();
            adj.insert(u, kept);
        }
        Graph {
            adj,
            edges: twice / 2,
        }
    }

    /// The subgraph induced by `keep` (absent ids are ignored).
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Graph {
        let mut adj = BTreeMap::new();
        let mut twice = 0;
        for &u in keep {
            if let Some(n) = self.adj.get(&u) {
                let kept: BTreeSet<VertexId> =
                    n.iter().copied().filter(|v| keep.contains(v)).collect();
                twice += kept.len();
                adj.insert(u, kept);
            }
        }
        Graph {
            adj,
            edges: twice / 2,
        }
    }

    /// Connected components, each sorted, ordered by their smallest id.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.vertices() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if seen.insert(w) {
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Writes the graph in the given format. Isolated vertices are kept in the
    /// edge-list format as `v v` lines, which the loader reads back as a lone
    /// vertex (and counts as a dropped loop).
    pub fn write<W: Write>(&self, out: &mut W, format: Format) -> std::io::Result<()> {
        match format {
            Format::EdgeList => {
                for v in self.vertices().filter(|&v| self.degree(v) == 0) {
                    writeln!(out, "{v} {v}")?;
                }
                for (u, v) in self.edges() {
                    writeln!(out, "{u} {v}")?;
                }
            }
            Format::Dimacs => {
                let n = self.max_vertex_id().map_or(0, |v| v.0 as u64);
                writeln!(out, "p edge {n} {}", self.edge_count())?;
                for (u, v) in self.edges() {
                    writeln!(out, "e {u} {v}")?;
                }
            }
        }
        Ok(())
    }

    pub fn to_edge_list_string(&self) -> String {
        let mut buf = Vec::new();
        self.write(&mut buf, Format::EdgeList)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ascii output")
    }
}

/// Result of [`load_graph`]: the simple graph plus what was thrown away.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub graph: Graph,
    pub duplicate_edges: usize,
    pub self_loops: usize,
}

fn parse_id(tok: Option<&str>, line: usize) -> Result<VertexId> {
    let tok = tok.ok_or_else(|| ApexError::Parse {
        line,
        message: "missing vertex id".into(),
    })?;
    let value: u64 = tok.parse().map_err(|_| ApexError::Parse {
        line,
        message: format!("invalid vertex id `{tok}`"),
    })?;
    u32::try_from(value)
        .map(VertexId)
        .map_err(|_| ApexError::Capacity(format!("vertex id {value} on line {line} exceeds u32")))
}

/// Reads a graph, silently simplifying it; the counts of dropped duplicate
/// edges and self-loops are reported alongside.
pub fn load_graph<R: BufRead>(source: R, format: Format) -> Result<Loaded> {
    let mut graph = Graph::new();
    let mut duplicate_edges = 0;
    let mut self_loops = 0;
    let mut header_seen = false;
    let mut declared_n: Option<u64> = None;

    for (idx, line) in source.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| ApexError::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        let (u, v) = match format {
            Format::EdgeList => {
                if trimmed.starts_with('#') {
                    continue;
                }
                let u = parse_id(toks.next(), lineno)?;
                let v = parse_id(toks.next(), lineno)?;
                if toks.next().is_some() {
                    return Err(ApexError::Parse {
                        line: lineno,
                        message: "expected two ids".into(),
                    });
                }
                (u, v)
            }
            Format::Dimacs => match toks.next() {
                Some("c") => continue,
                Some("p") => {
                    if header_seen {
                        return Err(ApexError::Parse {
                            line: lineno,
                            message: "duplicate header".into(),
                        });
                    }
                    if toks.next() != Some("edge") {
                        return Err(ApexError::Parse {
                            line: lineno,
                            message: "expected `p edge n m`".into(),
                        });
                    }
                    let n: u64 = toks.next().and_then(|t| t.parse().ok()).ok_or_else(|| {
                        ApexError::Parse {
                            line: lineno,
                            message: "bad vertex count".into(),
                        }
                    })?;
                    toks.next()
                        .and_then(|t| t.parse::<u64>().ok())
                        .ok_or_else(|| ApexError::Parse {
                            line: lineno,
                            message: "bad edge count".into(),
                        })?;
                    if n > u64::from(u32::MAX) {
                        return Err(ApexError::Capacity(format!("{n} vertices exceed u32")));
                    }
                    declared_n = Some(n);
                    header_seen = true;
                    continue;
                }
                Some("e") => {
                    if !header_seen {
                        return Err(ApexError::Parse {
                            line: lineno,
                            message: "edge before header".into(),
                        });
                    }
                    let u = parse_id(toks.next(), lineno)?;
                    let v = parse_id(toks.next(), lineno)?;
                    let n = declared_n.unwrap_or(0);
                    for x in [u, v] {
                        if x.0 == 0 || u64::from(x.0) > n {
                            return Err(ApexError::Parse {
                                line: lineno,
                                message: format!("vertex {x} outside 1..={n}"),
                            });
                        }
                    }
                    (u, v)
                }
                _ => {
                    return Err(ApexError::Parse {
                        line: lineno,
                        message: format!("unexpected line `{trimmed}`"),
                    })
                }
            },
        };
        if u == v {
            self_loops += 1;
            graph.add_vertex(u);
        } else if !graph.add_edge(u, v) {
            duplicate_edges += 1;
        }
    }
    if format == Format::Dimacs && !header_seen && !graph.is_empty() {
        return Err(ApexError::Parse {
            line: 0,
            message: "missing `p edge` header".into(),
        });
    }
    Ok(Loaded {
        graph,
        duplicate_edges,
        self_loops,
    })
}

/// A simple path, stored as its vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathInGraph(pub Vec<VertexId>);

impl PathInGraph {
    pub fn new(vertices: Vec<VertexId>) -> Self {
        PathInGraph(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn start(&self) -> VertexId {
        self.0[0]
    }

    pub fn end(&self) -> VertexId {
        *self.0.last().expect("paths are non-empty")
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn interior(&self) -> &[VertexId] {
        if self.0.len() <= 2 {
            &[]
        } else {
            &self.0[1..self.0.len() - 1]
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }

    /// Consecutive vertices adjacent in `g`, no vertex repeated.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        if self.0.is_empty() {
            return false;
        }
        let distinct: BTreeSet<_> = self.0.iter().collect();
        distinct.len() == self.0.len() && self.edges().all(|(a, b)| g.has_edge(a, b))
    }

    pub fn reversed(&self) -> Self {
        PathInGraph(self.0.iter().rev().copied().collect())
    }
}

/// Outcome of the edge-density test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prefilter {
    Pass,
    Reject,
}

/// Rejects iff `|E| > (k+3)|V|`: deleting `k` vertices removes at most
/// `k(|V|-1)` edges and a planar remainder has at most `3|V|-6`.
pub fn edge_count_prefilter(g: &Graph, k: usize) -> Prefilter {
    let bound = (k as u128 + 3) * g.vertex_count() as u128;
    if g.edge_count() as u128 > bound {
        Prefilter::Reject
    } else {
        Prefilter::Pass
    }
}

/// Dense re-indexing of a [`Graph`] for the array-based algorithms.
#[derive(Clone, Debug)]
pub(crate) struct Indexed {
    pub ids: Vec<VertexId>,
    pub adj: Vec<Vec<usize>>,
}

impl Indexed {
    pub fn new(g: &Graph) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let adj = ids
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .map(|w| ids.binary_search(&w).expect("edge endpoint present"))
                    .collect()
            })
            .collect();
        Indexed { ids, adj }
    }

    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.ids.binary_search(&v).ok()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }
}

/// Small constructors used by tests, examples, and the generator.
pub mod families {
    use super::{Graph, VertexId};

    pub fn complete(n: u32) -> Graph {
        let mut g = Graph::new();
        for u in 0..n {
            g.add_vertex(VertexId(u));
            for v in u + 1..n {
                g.add_edge(VertexId(u), VertexId(v));
            }
        }
        g
    }

    pub fn complete_bipartite(a: u32, b: u32) -> Graph {
        let mut g = Graph::new();
        for u in 0..a {
            g.add_vertex(VertexId(u));
            for v in a..a + b {
                g.add_edge(VertexId(u), VertexId(v));
            }
        }
        g
    }

    pub fn path(n: u32) -> Graph {
        let mut g = Graph::new();
        if n > 0 {
            g.add_vertex(VertexId(0));
        }
        for u in 1..n {
            g.add_edge(VertexId(u - 1), VertexId(u));
        }
        g
    }

    pub fn cycle(n: u32) -> Graph {
        let mut g = path(n);
        if n >= 3 {
            g.add_edge(VertexId(n - 1), VertexId(0));
        }
        g
    }

    /// `rows x cols` rectangular grid, vertex `(i, j)` has id `i * cols + j`.
    pub fn grid(rows: u32, cols: u32) -> Graph {
        let mut g = Graph::new();
        for i in 0..rows {
            for j in 0..cols {
                let v = VertexId(i * cols + j);
                g.add_vertex(v);
                if j + 1 < cols {
                    g.add_edge(v, VertexId(i * cols + j + 1));
                }
                if i + 1 < rows {
                    g.add_edge(v, VertexId((i + 1) * cols + j));
                }
            }
        }
        g
    }

    /// Disjoint union; ids of `b` are shifted past the largest id of `a`.
    pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
        let shift = a.max_vertex_id().map_or(0, |v| v.0 + 1);
        let mut g = a.clone();
        for v in b.vertices() {
            g.add_vertex(VertexId(v.0 + shift));
        }
        for (u, v) in b.edges() {
            g.add_edge(VertexId(u.0 + shift), VertexId(v.0 + shift));
        }
        g
    }

    /// Replaces edge `u-v` by a path through a new vertex, returning its id.
    pub fn subdivide(g: &mut Graph, u: VertexId, v: VertexId) -> Option<VertexId> {
        if !g.remove_edge(u, v) {
            return None;
        }
        let w = VertexId(g.max_vertex_id().map_or(0, |m| m.0 + 1));
        g.add_edge(u, w);
        g.add_edge(w, v);
        Some(w)
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    fn ids(v: &[u32]) -> Vec<VertexId> {
        v.iter().map(|&x| VertexId(x)).collect()
    }

    #[test]
    fn loads_triangle() {
        let l = load_graph("1 2\n2 3\n1 3".as_bytes(), Format::EdgeList).unwrap();
        assert_eq!(l.graph.vertex_count(), 3);
        assert_eq!(l.graph.edge_count(), 3);
        assert_eq!(l.duplicate_edges, 0);
    }

    #[test]
    fn empty_stream_is_empty_graph() {
        let l = load_graph("".as_bytes(), Format::EdgeList).unwrap();
        assert!(l.graph.is_empty());
        let l = load_graph("".as_bytes(), Format::Dimacs).unwrap();
        assert!(l.graph.is_empty());
    }

    #[test]
    fn duplicates_and_loops_are_counted() {
        let l = load_graph("# c\n1 2\n2 1\n1 2\n3 3\n".as_bytes(), Format::EdgeList).unwrap();
        assert_eq!(l.graph.edge_count(), 1);
        assert_eq!(l.duplicate_edges, 2);
        assert_eq!(l.self_loops, 1);
        assert!(l.graph.contains(VertexId(3)));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match load_graph("1 2\nx 3\n".as_bytes(), Format::EdgeList) {
            Err(ApexError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match load_graph("1 2 3\n".as_bytes(), Format::EdgeList) {
            Err(ApexError::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            load_graph("1 99999999999\n".as_bytes(), Format::EdgeList),
            Err(ApexError::Capacity(_))
        ));
    }

    #[test]
    fn dimacs_keeps_one_based_ids() {
        let text = "c comment\np edge 3 2\ne 1 2\ne 2 3\n";
        let l = load_graph(text.as_bytes(), Format::Dimacs).unwrap();
        assert_eq!(l.graph.vertices().collect::<Vec<_>>(), ids(&[1, 2, 3]));
        assert!(matches!(
            load_graph("e 1 2\n".as_bytes(), Format::Dimacs),
            Err(ApexError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            load_graph("p edge 2 1\ne 1 3\n".as_bytes(), Format::Dimacs),
            Err(ApexError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn deletion_examples() {
        let k5 = complete(5);
        let k4 = k5.delete_vertices(&[VertexId(4)]).unwrap();
        assert_eq!(k4, complete(4));
        assert_eq!(k5.delete_vertices(&[]).unwrap(), k5);

        let tri = Graph::from_edges([(1u32, 2u32), (2, 3), (1, 3)]);
        let e = tri.delete_vertices(&[VertexId(2)]).unwrap();
        assert_eq!(e, Graph::from_edges([(1u32, 3u32)]));
        assert!(matches!(
            tri.delete_vertices(&[VertexId(9)]),
            Err(ApexError::Domain(_))
        ));
    }

    #[test]
    fn component_order() {
        let tri = Graph::from_edges([(1u32, 2u32), (2, 3), (1, 3)]);
        assert_eq!(tri.connected_components(), vec![ids(&[1, 2, 3])]);
        assert!(Graph::new().connected_components().is_empty());
        let two = Graph::from_edges([(7u32, 9u32), (2, 5)]);
        assert_eq!(two.connected_components(), vec![ids(&[2, 5]), ids(&[7, 9])]);
    }

    #[test]
    fn prefilter_examples() {
        assert_eq!(edge_count_prefilter(&complete(5), 1), Prefilter::Pass);
        assert_eq!(edge_count_prefilter(&complete(20), 0), Prefilter::Reject);
        assert_eq!(edge_count_prefilter(&Graph::new(), 0), Prefilter::Pass);
    }

    #[test]
    fn path_interior() {
        let p = PathInGraph::new(ids(&[1, 2, 3]));
        assert_eq!(p.interior(), &ids(&[2])[..]);
        assert_eq!(p.len(), 2);
        let g = path(4);
        assert!(PathInGraph::new(ids(&[0, 1, 2])).is_valid_in(&g));
        assert!(!PathInGraph::new(ids(&[0, 2])).is_valid_in(&g));
    }

    proptest::proptest! {
        #[test]
        fn deletion_keeps_surviving_edges(
            edges in proptest::collection::vec((0u32..10, 0u32..10), 0..30),
            dels in proptest::collection::btree_set(0u32..10, 0..5),
        ) {
            let g = Graph::from_edges(edges);
            let s: BTreeSet<VertexId> = dels.into_iter().map(VertexId).filter(|v| g.contains(*v)).collect();
            let h = g.delete_vertices(&s).unwrap();
            let expect: BTreeSet<_> = g.vertices().filter(|v| !s.contains(v)).collect();
            proptest::prop_assert_eq!(h.vertices().collect::<BTreeSet<_>>(), expect);
            for (u, v) in g.edges() {
                let survives = !s.contains(&u) && !s.contains(&v);
                proptest::prop_assert_eq!(h.has_edge(u, v), survives);
            }
            proptest::prop_assert_eq!(h.edges().count(), h.edge_count());
        }

        #[test]
        fn serialization_round_trips(
            edges in proptest::collection::vec((0u32..40, 0u32..40), 0..60),
            dimacs in proptest::bool::ANY,
        ) {
            // DIMACS ids are 1-based.
            let g = Graph::from_edges(edges.into_iter().map(|(a, b)| (a + 1, b + 1)));
            let g = if dimacs { g.without(&g.vertices().filter(|&v| g.degree(v) == 0).collect()) } else { g };
            let fmt = if dimacs { Format::Dimacs } else { Format::EdgeList };
            let mut buf = Vec::new();
            g.write(&mut buf, fmt).unwrap();
            let back = load_graph(buf.as_slice(), fmt).unwrap().graph;
            proptest::prop_assert_eq!(back, g);
        }
    }
}
