//! Benchmark inputs shared by the criterion benches.

use apex_core::graph::families::{complete, disjoint_union, grid};
use apex_core::{generate_planted_instance, Graph};

/// A `side x side` square grid next to `copies` disjoint `K5`s.
pub fn grid_with_k5s(side: u32, copies: usize) -> Graph {
    (0..copies).fold(grid(side, side), |g, _| disjoint_union(&g, &complete(5)))
}

/// A planted instance; panics on sizes the generator rejects.
pub fn planted(n: usize, k: usize, seed: u64) -> Graph {
    generate_planted_instance(n, k, seed)
        .expect("benchmark sizes are valid")
        .0
}
