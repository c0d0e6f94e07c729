//! Graph k-colorability toolkit.
//!
//! - [`graph`], [`dimacs`], [`generate`]: simple undirected graphs, DIMACS
//!   `.col` I/O and reproducible graph families.
//! - [`bipartite`]: 2-coloring or an odd-cycle certificate in linear time.
//! - [`coloring`]: verification, first-fit greedy, exact k-colorability and
//!   chromatic number.
//! - [`bounds`]: exact ω, α and minimum vertex cover with an inequality audit.
//! - [`holes`]: a sound, incomplete 3-coloring heuristic.
//! - [`reductions`]: 3-SAT to 3-colorability and back.

pub mod bipartite;
pub mod bounds;
pub mod coloring;
pub mod dimacs;
pub mod generate;
pub mod graph;
pub mod holes;
pub mod reductions;
pub mod rng;

pub use bipartite::{dfi_levels, two_color, DfiTrace, OddCycleCertificate, TwoColorResult};
pub use bounds::{bounds_report, clique_number, independence_number, min_vertex_cover, BoundsReport};
pub use coloring::{
    chromatic_number, decide_k_colorable, greedy_color, verify_coloring, Chromatic, Coloring,
    Decision, GreedyResult, SearchLimits, SearchStats,
};
pub use dimacs::{emit_dimacs_col, parse_dimacs_col};
pub use generate::{generate, GeneratorSpec};
pub use graph::{build_graph, max_degree, Graph, GraphError, Vertex};
pub use holes::{find_odd_cycles, three_color_heuristic, HeuristicOutcome, HoleState};
pub use reductions::{lift_coloring_to_assignment, parse_dimacs_cnf, reduce_3sat_to_3col, CnfFormula, ReductionMap};
