//! Permutations, Mallows distributions and the tower function family.

pub mod error;
pub mod mallows;
pub mod perm;
pub mod rng;
pub mod stream;
pub mod tgeo;
pub mod towers;

pub use error::CoreError;
pub use mallows::{
    inversion_weight_exact, ln_normalizing_constant, mallows_pmf_exact, normalizing_constant,
    normalizing_constant_exact, rational, sample_mallows, MallowsParams,
};
pub use perm::{all_permutations, rank, rank_integers, Permutation};
pub use stream::{shifted_images, tail_rank, RegenerativeStream};
pub use tgeo::{sample_truncated_geometric, TruncatedGeometric};
pub use towers::{log_star, log_star_star, tower, tower_ge, wowzer, BigNat};

/// `P(p) = q^inv(p) / Z(n, q)` with `n = p.len()`.
pub fn mallows_pmf(params: &MallowsParams, p: &Permutation) -> Result<f64, CoreError> {
    params.pmf(p)
}
