//! Independent checks: an exact-rational solver for small cutoffs and a
//! seedable simulation of the raw process.

mod dp;
mod montecarlo;

use core::fmt;

use crate::walkmodel::WalkError;

pub use dp::{exact_dp, exact_dp_table, ExactTable, EXACT_MAX_CUTOFF};
#[cfg(feature = "std")]
pub use montecarlo::simulate_hitting_parallel;
pub use montecarlo::{
    chunk_count, chunk_rng, roll, simulate_chunk, simulate_ever_hit, simulate_hitting, EverHitEstimate,
    McAccumulator, McConfig, McResult, CHUNK_TRIALS, DEFAULT_MAX_STEPS,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    CutoffTooLarge { cutoff: u64, max: u64 },
    InvalidConfig,
    Unreachable,
    AllCapped { trials: u64 },
    Walk(WalkError),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::CutoffTooLarge { cutoff, max } => {
                write!(f, "exact solver is limited to N <= {max}, got {cutoff}")
            }
            Self::InvalidConfig => f.write_str("trials, steps and n must be positive"),
            Self::Unreachable => f.write_str("target has no member at or above the start"),
            Self::AllCapped { trials } => write!(f, "all {trials} trials hit the step cap"),
            Self::Walk(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for OracleError {}

impl From<WalkError> for OracleError {
    fn from(e: WalkError) -> Self {
        Self::Walk(e)
    }
}
