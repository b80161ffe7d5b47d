//! Tree decompositions: validation, elimination-ordering heuristics, and an
//! exact subset DP for small graphs.
//!
//! A failed heuristic run says nothing about the treewidth; callers must not
//! treat `None` from [`heuristic_decompose`] as a lower bound.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::io::Write;

use crate::graph::{Graph, Indexed, VertexId};

/// Largest graph handled by [`exact_treewidth`].
pub const EXACT_LIMIT: usize = 14;

/// Width the grid/decomposition dichotomy works with: `24r - 11 + k`.
pub fn width_budget(r: usize, k: usize) -> usize {
    24 * r - 11 + k
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<BTreeSet<VertexId>>,
    pub tree_edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The bag graph is not a tree (wrong edge count, bad endpoint, or disconnected).
    NotATree,
    /// A bag mentions a vertex that is not in the graph.
    UnknownVertex(VertexId),
    VertexNotCovered(VertexId),
    EdgeNotCovered(VertexId, VertexId),
    /// The bags holding this vertex do not form a subtree.
    Incoherent(VertexId),
}

impl TreeDecomposition {
    /// `max |bag| - 1`, zero for decompositions without vertices.
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(BTreeSet::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// The decomposition with a single bag holding every vertex.
    pub fn trivial(g: &Graph) -> Self {
        TreeDecomposition {
            bags: vec![g.vertices().collect()],
            tree_edges: Vec::new(),
        }
    }

    fn tree_adjacency(&self) -> Option<Vec<Vec<usize>>> {
        let n = self.bags.len();
        if n == 0 || self.tree_edges.len() != n - 1 {
            return None;
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.tree_edges {
            if a >= n || b >= n || a == b {
                return None;
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(t) = queue.pop_front() {
            for &s in &adj[t] {
                if !seen[s] {
                    seen[s] = true;
                    count += 1;
                    queue.push_back(s);
                }
            }
        }
        (count == n).then_some(adj)
    }

    /// Checks the three decomposition conditions and reports the first failure.
    pub fn validate(&self, g: &Graph) -> Result<(), Violation> {
        let adj = self.tree_adjacency().ok_or(Violation::NotATree)?;
        let mut holders: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
        for (t, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if !g.contains(v) {
                    return Err(Violation::UnknownVertex(v));
                }
                holders.entry(v).or_default().push(t);
            }
        }
        if let Some(v) = g.vertices().find(|v| !holders.contains_key(v)) {
            return Err(Violation::VertexNotCovered(v));
        }
        for (u, v) in g.edges() {
            if !self.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
                return Err(Violation::EdgeNotCovered(u, v));
            }
        }
        for (&v, ts) in &holders {
            let inside: BTreeSet<usize> = ts.iter().copied().collect();
            let mut seen = BTreeSet::from([ts[0]]);
            let mut queue = VecDeque::from([ts[0]]);
            while let Some(t) = queue.pop_front() {
                for &s in &adj[t] {
                    if inside.contains(&s) && seen.insert(s) {
                        queue.push_back(s);
                    }
                }
            }
            if seen.len() != inside.len() {
                return Err(Violation::Incoherent(v));
            }
        }
        Ok(())
    }

    /// Writes the decomposition in the PACE `.td` format: an `s td` line with
    /// bag count, largest bag size and vertex count, then `b` lines and tree edges
    /// (bags numbered from 1).
    pub fn write_td<W: Write>(&self, out: &mut W, vertex_count: usize) -> std::io::Result<()> {
        let max_bag = self.bags.iter().map(BTreeSet::len).max().unwrap_or(0);
        writeln!(out, "s td {} {} {}", self.bags.len(), max_bag, vertex_count)?;
        for (i, bag) in self.bags.iter().enumerate() {
            write!(out, "b {}", i + 1)?;
            for v in bag {
                write!(out, " {v}")?;
            }
            writeln!(out)?;
        }
        for &(a, b) in &self.tree_edges {
            writeln!(out, "{} {}", a + 1, b + 1)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rule {
    MinDegree,
    MinFill,
}

/// Greedy elimination ordering; ties go to the smallest index (= smallest id).
fn greedy_order(adj: &[Vec<usize>], rule: Rule) -> Vec<usize> {
    let n = adj.len();
    let mut nbrs: Vec<BTreeSet<usize>> = adj.iter().map(|a| a.iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let score = |v: usize| -> usize {
            match rule {
                Rule::MinDegree => nbrs[v].len(),
                Rule::MinFill => {
                    let ns: Vec<usize> = nbrs[v].iter().copied().collect();
                    let mut fill = 0;
                    for (i, &a) in ns.iter().enumerate() {
                        for &b in &ns[i + 1..] {
                            if !nbrs[a].contains(&b) {
                                fill += 1;
                            }
                        }
                    }
                    fill
                }
            }
        };
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (score(v), v))
            .unwrap();
        let ns: Vec<usize> = nbrs[v].iter().copied().collect();
        for &a in &ns {
            nbrs[a].remove(&v);
            for &b in &ns {
                if a != b {
                    nbrs[a].insert(b);
                }
            }
        }
        nbrs[v].clear();
        alive[v] = false;
        order.push(v);
    }
    order
}

/// Tree decomposition induced by an elimination ordering.
fn decomposition_from_order(idx: &Indexed, order: &[usize]) -> TreeDecomposition {
    let n = idx.len();
    if n == 0 {
        return TreeDecomposition {
            bags: vec![BTreeSet::new()],
            tree_edges: Vec::new(),
        };
    }
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut nbrs: Vec<BTreeSet<usize>> = idx
        .adj
        .iter()
        .map(|a| a.iter().copied().collect())
        .collect();
    let mut bags = Vec::with_capacity(n);
    let mut parent_vertex = vec![None; n];
    for &v in order {
        let later: Vec<usize> = nbrs[v]
            .iter()
            .copied()
            .filter(|&w| position[w] > position[v])
            .collect();
        for &a in &later {
            for &b in &later {
                if a != b {
                    nbrs[a].insert(b);
                }
            }
        }
        parent_vertex[v] = later.iter().copied().min_by_key(|&w| position[w]);
        let mut bag: BTreeSet<VertexId> = later.iter().map(|&w| idx.ids[w]).collect();
        bag.insert(idx.ids[v]);
        bags.push(bag);
    }
    let mut tree_edges = Vec::with_capacity(n - 1);
    let mut prev_root: Option<usize> = None;
    for (i, &v) in order.iter().enumerate() {
        match parent_vertex[v] {
            Some(p) => tree_edges.push((i, position[p])),
            None => {
                if let Some(r) = prev_root {
                    tree_edges.push((r, i));
                }
                prev_root = Some(i);
            }
        }
    }
    TreeDecomposition { bags, tree_edges }
}

/// Exact treewidth and an optimal elimination ordering via the subset DP
/// `TW(S) = min_v max(TW(S - v), |Q(S - v, v)|)`. Only for `|V| <= EXACT_LIMIT`.
pub fn exact_treewidth(g: &Graph) -> Option<(usize, Vec<VertexId>)> {
    let idx = Indexed::new(g);
    let order = exact_order(&idx)?;
    let td = decomposition_from_order(&idx, &order);
    Some((td.width(), order.into_iter().map(|v| idx.ids[v]).collect()))
}

fn exact_order(idx: &Indexed) -> Option<Vec<usize>> {
    let n = idx.len();
    if n > EXACT_LIMIT {
        return None;
    }
    if n == 0 {
        return Some(Vec::new());
    }
    let masks: Vec<u32> = idx
        .adj
        .iter()
        .map(|a| a.iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    // Vertices outside S ∪ {v} reachable from v through S.
    let q = |s: u32, v: usize| -> usize {
        let mut reach = 0u32;
        let mut visited = 1u32 << v;
        let mut frontier = 1u32 << v;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let nb = masks[x] & !visited;
            visited |= nb;
            reach |= nb & !s;
            frontier |= nb & s;
        }
        reach.count_ones() as usize
    };
    let full = (1u32 << n) - 1;
    let mut tw = vec![usize::MAX; 1 << n];
    let mut choice = vec![0u8; 1 << n];
    tw[0] = 0;
    for s in 1..=full {
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << v);
            let cand = tw[rest as usize].max(q(rest, v));
            if cand < tw[s as usize] {
                tw[s as usize] = cand;
                choice[s as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = choice[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    Some(order)
}

/// Best of min-degree and min-fill orderings, falling back to the exact DP on
/// graphs with at most [`EXACT_LIMIT`] vertices. Returns a decomposition only if
/// its width is at most `target_width`.
pub fn heuristic_decompose(g: &Graph, target_width: usize) -> Option<TreeDecomposition> {
    let idx = Indexed::new(g);
    let mut best: Option<TreeDecomposition> = None;
    for rule in [Rule::MinDegree, Rule::MinFill] {
        let td = decomposition_from_order(&idx, &greedy_order(&idx.adj, rule));
        if best.as_ref().is_none_or(|b| td.width() < b.width()) {
            best = Some(td);
        }
    }
    let mut best = best.expect("two candidates built");
    if best.width() > target_width {
        if let Some(order) = exact_order(&idx) {
            best = decomposition_from_order(&idx, &order);
        }
    }
    debug_assert!(best.validate(g).is_ok());
    (best.width() <= target_width).then_some(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn v(x: u32) -> VertexId {
        VertexId(x)
    }

    /// Width of the best elimination ordering, by trying all of them.
    fn brute_force_treewidth(g: &Graph) -> usize {
        fn width_of(adj: &[Vec<usize>], order: &[usize]) -> usize {
            let mut nbrs: Vec<BTreeSet<usize>> =
                adj.iter().map(|a| a.iter().copied().collect()).collect();
            let mut done = vec![false; adj.len()];
            let mut w = 0;
            for &x in order {
                let later: Vec<usize> = nbrs[x].iter().copied().filter(|&y| !done[y]).collect();
                w = w.max(later.len());
                for &a in &later {
                    for &b in &later {
                        if a != b {
                            nbrs[a].insert(b);
                        }
                    }
                }
                done[x] = true;
            }
            w
        }
        fn permute(adj: &[Vec<usize>], perm: &mut Vec<usize>, k: usize, best: &mut usize) {
            if k == perm.len() {
                *best = (*best).min(width_of(adj, perm));
                return;
            }
            for i in k..perm.len() {
                perm.swap(k, i);
                permute(adj, perm, k + 1, best);
                perm.swap(k, i);
            }
        }
        let idx = Indexed::new(g);
        let mut perm: Vec<usize> = (0..idx.len()).collect();
        let mut best = usize::MAX;
        permute(&idx.adj, &mut perm, 0, &mut best);
        best
    }

    #[test]
    fn validate_examples() {
        let p = path(3);
        let td = TreeDecomposition {
            bags: vec![[v(0), v(1)].into(), [v(1), v(2)].into()],
            tree_edges: vec![(0, 1)],
        };
        assert_eq!(td.validate(&p), Ok(()));
        assert_eq!(td.width(), 1);
        let bad = TreeDecomposition {
            bags: vec![[v(0)].into(), [v(2)].into()],
            tree_edges: vec![(0, 1)],
        };
        assert_eq!(bad.validate(&p), Err(Violation::VertexNotCovered(v(1))));
        let bad = TreeDecomposition {
            bags: vec![[v(0)].into(), [v(1), v(2)].into()],
            tree_edges: vec![(0, 1)],
        };
        assert_eq!(bad.validate(&p), Err(Violation::EdgeNotCovered(v(0), v(1))));
        let g = complete(6);
        let t = TreeDecomposition::trivial(&g);
        assert_eq!(t.validate(&g), Ok(()));
        assert_eq!(t.width(), 5);
    }

    #[test]
    fn incoherent_and_non_tree() {
        let p = path(3);
        let td = TreeDecomposition {
            bags: vec![[v(0), v(1)].into(), [v(2)].into(), [v(1), v(2)].into()],
            tree_edges: vec![(0, 1), (1, 2)],
        };
        assert_eq!(td.validate(&p), Err(Violation::Incoherent(v(1))));
        let td = TreeDecomposition {
            bags: vec![[v(0), v(1), v(2)].into(), BTreeSet::new()],
            tree_edges: vec![],
        };
        assert_eq!(td.validate(&p), Err(Violation::NotATree));
    }

    #[test]
    fn heuristic_examples() {
        // A spider-ish tree on 10 vertices.
        let tree = Graph::from_edges([
            (0u32, 1u32),
            (0, 2),
            (1, 3),
            (1, 4),
            (2, 5),
            (5, 6),
            (6, 7),
            (2, 8),
            (8, 9),
        ]);
        let td = heuristic_decompose(&tree, 1).unwrap();
        assert_eq!(td.width(), 1);
        assert_eq!(td.validate(&tree), Ok(()));

        let g = grid(3, 3);
        assert_eq!(brute_force_treewidth(&g), 3);
        let td = heuristic_decompose(&g, 3).unwrap();
        assert_eq!(td.width(), 3);
        assert_eq!(td.validate(&g), Ok(()));
        assert!(heuristic_decompose(&g, 2).is_none());

        assert!(heuristic_decompose(&complete(5), 3).is_none());
    }

    #[test]
    fn exact_matches_permutation_search() {
        for g in [
            grid(3, 3),
            complete_bipartite(3, 3),
            cycle(7),
            complete(5),
            path(1),
            Graph::new(),
        ] {
            let (tw, _) = exact_treewidth(&g).unwrap();
            let expect = if g.is_empty() {
                0
            } else {
                brute_force_treewidth(&g)
            };
            assert_eq!(tw, expect, "{g:?}");
        }
        assert!(exact_treewidth(&grid(4, 4)).is_none());
    }

    #[test]
    fn disconnected_graph_decomposes() {
        let g = disjoint_union(&cycle(5), &complete(4));
        let td = heuristic_decompose(&g, 3).unwrap();
        assert_eq!(td.validate(&g), Ok(()));
    }

    #[test]
    fn width_budget_values() {
        assert_eq!(width_budget(1, 0), 13);
        assert_eq!(width_budget(2, 2), 39);
        assert_eq!(width_budget(1, 1), 14);
    }

    #[test]
    fn td_format() {
        let p = path(3);
        let td = heuristic_decompose(&p, 1).unwrap();
        let mut out = Vec::new();
        td.write_td(&mut out, 3).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with(&format!("s td {} 2 3\n", td.bags.len())));
        assert_eq!(
            text.lines().filter(|l| l.starts_with("b ")).count(),
            td.bags.len()
        );
    }
}
