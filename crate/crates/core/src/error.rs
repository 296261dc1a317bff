use thiserror::Error;

/// Error type shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GbecError {
    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// `F_n(0)` requested for an order with a divergent series (n ≤ 1).
    #[error("series diverges: F_n(0) is infinite for n = {n}")]
    DivergentSeries { n: f64 },

    /// The equation has no root in the admissible range.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// Iteration budget exhausted before reaching tolerance.
    #[error("no convergence after {iterations} iterations (last iterate {last:e})")]
    NonConvergence { iterations: usize, last: f64 },

    /// Box scaling exponents violate ordering or normalization.
    #[error("invalid exponents: {0}")]
    InvalidExponents(String),

    /// A fit was requested with too few points.
    #[error("insufficient data: need at least {needed} points, got {got}")]
    InsufficientData { needed: usize, got: usize },

    /// The enumerated spectrum cannot represent the requested state to the
    /// tail tolerance; enlarge the cutoff or loosen `eps_tail`.
    #[error("cutoff too tight: tail estimate {tail:e} exceeds budget {budget:e}")]
    CutoffTooTight { tail: f64, budget: f64 },

    /// A bracketing solver was handed endpoints that do not bracket a root.
    #[error("bracket failure: {0}")]
    BracketFailure(String),
}

pub type Result<T> = std::result::Result<T, GbecError>;
