//! Exact and Monte Carlo engines for satisfaction probabilities, total
//! variation distances, cycle counts and the regeneration chain.

pub mod chain;
pub mod cycles;
pub mod displacement;
pub mod error;
pub mod exact;
pub mod montecarlo;
pub mod records;
pub mod schedule;
pub mod tv;

pub use chain::{
    chain_occupancy, chain_trace, mean_first_regeneration, trace_stream, tv_between, ChainState, ChainTrace, ClassRegistry,
    Occupancy, OccupancyKey,
};
pub use cycles::{poisson_cycle_distance, poisson_cycle_distance_exact, poisson_cycle_estimate, CycleDistance, CYCLE_CAP};
pub use displacement::{displacement_bound_check, DisplacementReport};
pub use error::LabError;
pub use exact::{exact_first_displacement, exact_pushforward, exact_sat_prob, exact_sat_prob_rational, tv_exact_mallows, MAX_EXACT_N};
pub use montecarlo::{count_hits, estimate_sat_prob, ExperimentConfig, SatEstimate, SizeEstimate};
pub use records::{write_csv, write_json_lines, Record};
pub use schedule::QSchedule;
pub use tv::{coupling_bound, log_log_slope, tv_tgeo_uniform};
