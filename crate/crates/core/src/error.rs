use thiserror::Error;

/// Errors raised by the physics and linear-algebra routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A closed-form expression hit a vanishing denominator.
    #[error("singular operating point: {0}")]
    Singular(String),

    /// The drift matrix has an eigenvalue with non-negative real part.
    #[error("drift matrix is unstable (max eigenvalue real part {max_real_part:e} rad/s)")]
    Unstable { max_real_part: f64 },

    /// A numerical kernel failed or lost too much accuracy.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// The self-consistent detuning iteration did not settle.
    #[error(
        "detuning iteration did not converge after {iterations} steps \
         (last iterates {last:e}, {previous:e} rad/s); the operating point may be bistable"
    )]
    NonConvergence {
        iterations: usize,
        last: f64,
        previous: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
