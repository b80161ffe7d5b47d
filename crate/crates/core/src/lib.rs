//! Exact solver for the k-apex problem: find at most `k` vertices whose
//! deletion leaves a planar graph.
//!
//! The pipeline first shrinks large instances with two safe reductions that
//! operate on a subdivided hexagonal grid found in the input (flat-zone
//! deletion and forced well-attached vertices), then decides the remaining
//! instance with a Kuratowski-hitting branch and bound. Every feasible answer
//! is re-checked by a planarity test on the original graph before it is
//! returned.

pub mod error;
pub mod generator;
pub mod graph;
pub mod hexgrid;
pub mod pipeline;
pub mod planarity;
pub mod solver;
pub mod treewidth;
pub mod wellattached;
pub mod zones;

mod flow;

pub use error::{ApexError, Result};
pub use generator::generate_planted_instance;
pub use graph::{
    edge_count_prefilter, load_graph, Format, Graph, PathInGraph, Prefilter, VertexId,
};
pub use hexgrid::{find_hex_subdivision, HexGrid, HexSubdivision, SearchBudget};
pub use pipeline::{run_pipeline, Event, PipelineConfig, PipelineReport};
pub use planarity::{
    find_kuratowski, is_planar, planar_embedding, KuratowskiKind, KuratowskiWitness,
};
pub use solver::{
    brute_force_oracle, solve_exact, solve_exact_with, verify_solution, ApexOutcome, Justification,
    SolverLimits, Stats, Status,
};
pub use treewidth::TreeDecomposition;
pub use wellattached::WellAttachedWitness;
pub use zones::{ConstantsMode, ZoneLayout};
