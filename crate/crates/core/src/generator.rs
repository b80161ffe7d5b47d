//! Planted k-apex instances: a subdivided hexagonal grid decorated with
//! pendant trees, plus `k` apex vertices joined to random grid vertices.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{ApexError, Result};
use crate::graph::{Graph, VertexId};
use crate::hexgrid::HexGrid;
use crate::zones::{ConstantsMode, ZoneShape};

/// Smallest base grid radius for which Phase I can find its host grid.
pub fn base_radius(k: usize, mode: ConstantsMode) -> usize {
    if k < 2 {
        2
    } else {
        ZoneShape::for_k(k, mode).host_radius()
    }
}

/// A graph with about `n` vertices and a known apex set of size `k`.
///
/// The base is `H_R` with `R = floor(sqrt((n - k) / 6))`, at least 2; the
/// remaining vertex budget goes half to edge subdivisions and half to pendant
/// trees. Phase I can only reduce the instance when `R` reaches
/// [`base_radius`]; smaller instances go straight to the exact solver. Each
/// apex is joined to 5% of the grid vertices (at least `k + 3`), so the
/// planted set is a valid, not necessarily minimum, solution.
pub fn generate_planted_instance(
    n: usize,
    k: usize,
    seed: u64,
) -> Result<(Graph, BTreeSet<VertexId>)> {
    if n < 24 + k {
        return Err(ApexError::Domain(format!(
            "n = {n} is too small: need at least {} vertices",
            24 + k
        )));
    }
    let r = (((n - k) / 6) as f64).sqrt() as usize;
    let grid = HexGrid::build(r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = grid.to_graph();
    let base = grid.vertex_count();
    let mut next = base as u32;
    let mut fresh = || {
        next += 1;
        VertexId(next - 1)
    };
    let spare = n.saturating_sub(base + k);
    let subdivisions = spare / 2;
    let mut edges: Vec<(VertexId, VertexId)> = g.edges().collect();
    for _ in 0..subdivisions {
        let i = rng.gen_range(0..edges.len());
        let (a, b) = edges[i];
        let v = fresh();
        g.remove_edge(a, b);
        g.add_edge(a, v);
        g.add_edge(v, b);
        edges[i] = (a, v);
        edges.push((v, b));
    }
    let mut left = spare - subdivisions;
    while left > 0 {
        let size = rng.gen_range(1..=left.min(8));
        let root = VertexId(rng.gen_range(0..base) as u32);
        let mut tree = vec![root];
        for _ in 0..size {
            let v = fresh();
            let parent = tree[rng.gen_range(0..tree.len())];
            g.add_edge(parent, v);
            tree.push(v);
        }
        left -= size;
    }
    let mut apices = BTreeSet::new();
    let reach = (base / 20).max(k + 3).min(base);
    for _ in 0..k {
        let a = fresh();
        for i in sample(&mut rng, base, reach) {
            g.add_edge(a, VertexId(i as u32));
        }
        apices.insert(a);
    }
    Ok((g, apices))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planarity::is_planar;

    #[test]
    fn planted_set_is_a_solution() {
        for k in 0..=2 {
            let (g, x) = generate_planted_instance(600, k, 7).unwrap();
            assert_eq!(x.len(), k);
            assert!(is_planar(&g.without(&x)));
            assert_eq!(is_planar(&g), k == 0);
        }
    }

    #[test]
    fn size_and_determinism() {
        let (a, _) = generate_planted_instance(500, 1, 3).unwrap();
        let (b, _) = generate_planted_instance(500, 1, 3).unwrap();
        let (c, _) = generate_planted_instance(500, 1, 4).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(
            (490..=510).contains(&a.vertex_count()),
            "{}",
            a.vertex_count()
        );
    }

    #[test]
    fn too_small_is_a_domain_error() {
        assert!(matches!(
            generate_planted_instance(20, 1, 0),
            Err(ApexError::Domain(_))
        ));
        assert!(generate_planted_instance(26, 2, 0).is_ok());
    }

    #[test]
    fn large_enough_instances_hold_the_host_grid() {
        let n = 6 * 26 * 26 + 2;
        assert_eq!(base_radius(2, ConstantsMode::Reduced), 26);
        let (g, _) = generate_planted_instance(n, 2, 0).unwrap();
        assert_eq!(g.vertex_count(), n);
    }
}
