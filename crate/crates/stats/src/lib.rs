//! Structural statistics of permutations and the TOTO sentences that
//! express them.

pub mod arith;
pub mod error;
pub mod graph;
pub mod interval;
pub mod sentences;
pub mod structure;

pub use arith::{arith_check, even_size_graph_check, even_size_oracle, ground_truth_graphs, matching_check, ArithGraphs};
pub use error::StatsError;
pub use graph::DirectedGraph;
pub use interval::{Interval, IntervalSeq};
pub use sentences::{
    build_j1_witness, build_k1_witness, build_lambda, build_omega, build_oscillating, build_rho, build_universal_phi,
    build_xi1, build_xi2, build_zeta, Builder, Region, VertexSet,
};
pub use structure::{
    admissible, arith_graphs_on, bigger_graph, bigger_witness, induced_edge, induced_graph, j1, k1, minimal_intervals,
    positions, s_set, w_count, w_set, xy_pair,
};
