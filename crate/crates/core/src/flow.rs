//! Vertex-disjoint paths from one source to groups of targets, by unit
//! capacity max-flow on the vertex-split network.

use std::collections::VecDeque;

struct Network {
    head: Vec<usize>,
    next: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<u8>,
}

const NONE: usize = usize::MAX;

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            head: vec![NONE; nodes],
            next: Vec::new(),
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add(&mut self, u: usize, v: usize) {
        for (a, b, c) in [(u, v, 1), (v, u, 0)] {
            self.to.push(b);
            self.cap.push(c);
            self.next.push(self.head[a]);
            self.head[a] = self.to.len() - 1;
        }
    }

    /// One BFS augmentation; edges are scanned in insertion order reversed,
    /// so callers add them in descending preference.
    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![NONE; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            let mut e = self.head[u];
            while e != NONE {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    via[v] = e;
                    if v == t {
                        let mut x = t;
                        while x != s {
                            let e = via[x];
                            self.cap[e] -= 1;
                            self.cap[e ^ 1] += 1;
                            x = self.to[e ^ 1];
                        }
                        return true;
                    }
                    q.push_back(v);
                }
                e = self.next[e];
            }
        }
        false
    }
}

/// Up to `limit` paths from `source`, each ending at a vertex with a target
/// group, at most one path per group, pairwise sharing only `source`.
/// Interior vertices must satisfy `interior_ok`; targets are never passed
/// through. A source that is itself a target yields the one-vertex path.
pub(crate) fn paths_to_groups(
    adj: &[Vec<usize>],
    source: usize,
    interior_ok: &[bool],
    group: &[Option<usize>],
    groups: usize,
    limit: usize,
) -> Vec<Vec<usize>> {
    let n = adj.len();
    let (inn, out) = (|v: usize| 2 * v, |v: usize| 2 * v + 1);
    let gnode = |g: usize| 2 * n + g;
    let sink = 2 * n + groups;
    let mut net = Network::new(sink + 1);
    for g in (0..groups).rev() {
        net.add(gnode(g), sink);
    }
    for v in (0..n).rev() {
        if v == source {
            continue;
        }
        if let Some(g) = group[v] {
            net.add(inn(v), gnode(g));
        } else if interior_ok[v] {
            net.add(inn(v), out(v));
        }
    }
    let mut trivial = None;
    if let Some(g) = group[source] {
        net.add(out(source), gnode(g));
        trivial = Some(g);
    }
    for v in (0..n).rev() {
        if v != source && (group[v].is_some() || !interior_ok[v]) {
            continue;
        }
        for &w in adj[v].iter().rev() {
            if w != source && (interior_ok[w] || group[w].is_some()) {
                net.add(out(v), inn(w));
            }
        }
    }
    let mut flow = 0;
    while flow < limit && net.augment(out(source), sink) {
        flow += 1;
    }
    // Walk saturated edges from the source.
    let used = |net: &Network, e: usize| e.is_multiple_of(2) && net.cap[e] == 0;
    let mut paths = Vec::new();
    let mut e = net.head[out(source)];
    while e != NONE {
        if used(&net, e) {
            let first = net.to[e];
            if trivial.is_some() && first >= 2 * n {
                paths.push(vec![source]);
            } else {
                let mut path = vec![source];
                let mut node = first;
                loop {
                    let v = node / 2;
                    path.push(v);
                    if group[v].is_some() {
                        break;
                    }
                    // Through the split edge to the out-node, then onward.
                    let mut f = net.head[out(v)];
                    while f != NONE && !used(&net, f) {
                        f = net.next[f];
                    }
                    node = net.to[f];
                }
                paths.push(path);
            }
        }
        e = net.next[e];
    }
    paths
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adj_of(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    #[test]
    fn star_reaches_every_group() {
        // 0 joined to 1..=4 via private middle vertices 5..=8.
        let adj = adj_of(
            9,
            &[
                (0, 5),
                (5, 1),
                (0, 6),
                (6, 2),
                (0, 7),
                (7, 3),
                (0, 8),
                (8, 4),
            ],
        );
        let ok = vec![true; 9];
        let group = vec![
            None,
            Some(0),
            Some(1),
            Some(2),
            Some(3),
            None,
            None,
            None,
            None,
        ];
        let paths = paths_to_groups(&adj, 0, &ok, &group, 4, 10);
        assert_eq!(paths.len(), 4);
        assert!(paths.iter().all(|p| p.len() == 3 && p[0] == 0));
    }

    #[test]
    fn shared_bottleneck_limits_flow() {
        // Two targets behind one cut vertex 1.
        let adj = adj_of(4, &[(0, 1), (1, 2), (1, 3)]);
        let ok = vec![true; 4];
        let group = vec![None, None, Some(0), Some(1)];
        assert_eq!(paths_to_groups(&adj, 0, &ok, &group, 2, 10).len(), 1);
        // Forbidden interiors block everything.
        let blocked = vec![true, false, true, true];
        assert!(paths_to_groups(&adj, 0, &blocked, &group, 2, 10).is_empty());
    }

    #[test]
    fn one_path_per_group_and_trivial_source() {
        let adj = adj_of(4, &[(0, 1), (0, 2), (0, 3)]);
        let ok = vec![true; 4];
        let group = vec![Some(1), Some(0), Some(0), Some(2)];
        let paths = paths_to_groups(&adj, 0, &ok, &group, 3, 10);
        assert_eq!(paths.len(), 3);
        assert!(paths.contains(&vec![0]));
        assert_eq!(paths_to_groups(&adj, 0, &ok, &group, 3, 2).len(), 2);
    }
}
