use thiserror::Error;

/// Everything that can stop a certified computation.
///
/// Numerical failures are reported as values so callers can tell a bound
/// that could not be established apart from a bound with the wrong sign.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid ball: {0}")]
    InvalidBall(String),

    #[error("enclosure meets the branch cut (-inf, 0]")]
    BranchCut,

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("power method did not converge after {iterations} iterations (last step {residual:e})")]
    Convergence { iterations: usize, residual: f64 },

    #[error("candidate eigenfunction is not certified positive at rank {rank}")]
    NonPositiveEigenfunction { rank: usize },

    #[error("no certified decision reached up to rank {max_rank}")]
    RankExhausted { max_rank: usize },

    #[error("initial bracket invalid: {0}")]
    Bracket(String),

    #[error("precision of {prec} bits is insufficient, at least {required} bits are needed")]
    PrecisionInsufficient { prec: u32, required: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
