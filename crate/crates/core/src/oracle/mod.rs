//! Independent checkers: an exhaustive finite-model verifier and
//! brute-force pointwise deciders for the symbolic algebra.

mod finite;
mod pointwise;

pub use finite::{CorrespondenceReport, FiniteFilter, FiniteModel, MAX_MODEL_SIZE};
pub use pointwise::{
    brute_force_coset_eq, brute_force_le_set, brute_force_leq, brute_force_zero_set, members_below,
    required_horizon, Evaluator,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("finite model size must be between 1 and {MAX_MODEL_SIZE}, got {0}")]
    ModelSize(usize),
    #[error("horizon {horizon} is below the required {required}")]
    HorizonTooSmall { required: u64, horizon: u64 },
    #[error("elements and filter live on different index sets")]
    CarrierMismatch,
}
