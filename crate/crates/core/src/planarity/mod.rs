//! Planarity testing, combinatorial embeddings, and Kuratowski witnesses.
//!
//! A nonplanar graph is certified by a subdivision of `K5` or `K3,3`; a planar
//! one by a rotation system whose face count satisfies Euler's formula. The
//! witness is the branching set of the exact solver, so its extraction is
//! deterministic.

mod kuratowski;
mod lr;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Indexed, VertexId};

pub use kuratowski::{find_kuratowski, KuratowskiKind, KuratowskiWitness};

/// `true` iff `g` has a planar embedding.
pub fn is_planar(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n > 2 && g.edge_count() > 3 * n - 6 {
        return false;
    }
    lr::is_planar(&Indexed::new(g).adj)
}

/// A rotation system: clockwise neighbour order around every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub rotation: BTreeMap<VertexId, Vec<VertexId>>,
}

impl Embedding {
    /// Faces traced by the rule "arrive at `w` from `v`, leave towards the
    /// neighbour preceding `v` clockwise". Each face is a cyclic list of darts.
    pub fn faces(&self) -> Vec<Vec<(VertexId, VertexId)>> {
        let mut pos: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
        for (&v, nbrs) in &self.rotation {
            for (i, &w) in nbrs.iter().enumerate() {
                pos.insert((v, w), i);
            }
        }
        let mut seen: HashSet<(VertexId, VertexId)> = HashSet::new();
        let mut faces = Vec::new();
        for (&v, nbrs) in &self.rotation {
            for &w in nbrs {
                if seen.contains(&(v, w)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (v, w);
                while seen.insert((a, b)) {
                    face.push((a, b));
                    let around = &self.rotation[&b];
                    let i = pos[&(b, a)];
                    let next = around[(i + around.len() - 1) % around.len()];
                    a = b;
                    b = next;
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Face count with the convention that an isolated vertex bounds one face.
    pub fn face_count(&self) -> usize {
        self.faces().len() + self.rotation.values().filter(|n| n.is_empty()).count()
    }

    /// Checks that the rotation matches `g` and that every connected component
    /// satisfies `V - E + F = 2`.
    pub fn satisfies_euler(&self, g: &Graph) -> bool {
        if self.rotation.len() != g.vertex_count() {
            return false;
        }
        for (&v, nbrs) in &self.rotation {
            let as_set: BTreeSet<_> = nbrs.iter().copied().collect();
            if as_set.len() != nbrs.len() || as_set != g.neighbors(v).collect() {
                return false;
            }
        }
        let faces = self.faces();
        for comp in g.connected_components() {
            let members: BTreeSet<_> = comp.iter().copied().collect();
            let e: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
            let f = if e == 0 {
                1
            } else {
                faces
                    .iter()
                    .filter(|face| members.contains(&face[0].0))
                    .count()
            };
            if comp.len() as i64 - e as i64 + f as i64 != 2 {
                return false;
            }
        }
        true
    }
}

/// A combinatorial planar embedding, or `None` if `g` is not planar.
pub fn planar_embedding(g: &Graph) -> Option<Embedding> {
    let idx = Indexed::new(g);
    let rot = lr::embedding(&idx.adj)?;
    let rotation = (0..idx.len())
        .map(|v| {
            (
                idx.ids[v],
                rot.clockwise(v).into_iter().map(|w| idx.ids[w]).collect(),
            )
        })
        .collect();
    Some(Embedding { rotation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn small_examples() {
        assert!(is_planar(&complete(4)));
        assert!(!is_planar(&complete(5)));
        assert!(!is_planar(&complete_bipartite(3, 3)));
        assert!(is_planar(&grid(3, 3)));
        assert!(is_planar(&Graph::new()));
    }

    #[test]
    fn embedding_face_counts() {
        let tri = cycle(3);
        let emb = planar_embedding(&tri).unwrap();
        assert_eq!(emb.face_count(), 2);
        assert!(emb.satisfies_euler(&tri));
        let k4 = complete(4);
        let emb = planar_embedding(&k4).unwrap();
        assert_eq!(emb.face_count(), 4);
        assert!(emb.satisfies_euler(&k4));
        assert!(planar_embedding(&complete(5)).is_none());
    }

    #[test]
    fn disconnected_and_isolated() {
        let mut g = disjoint_union(&complete(4), &cycle(5));
        g.add_vertex(VertexId(100));
        let emb = planar_embedding(&g).unwrap();
        assert!(emb.satisfies_euler(&g));
        let g = disjoint_union(&cycle(4), &complete(5));
        assert!(!is_planar(&g));
    }

    #[test]
    fn long_path_does_not_overflow() {
        let g = path(200_000);
        assert!(is_planar(&g));
        assert!(planar_embedding(&g).unwrap().satisfies_euler(&g));
    }

    #[test]
    fn large_grid_embeds() {
        let g = grid(60, 60);
        let emb = planar_embedding(&g).unwrap();
        assert!(emb.satisfies_euler(&g));
        assert_eq!(emb.face_count(), 59 * 59 + 1);
    }
}
