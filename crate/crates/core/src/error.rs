use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("indices {u} and {v} do not have the same parity")]
    ParityMismatch { u: i64, v: i64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("argument must be positive, got {0}")]
    NonPositiveArgument(f64),

    #[error("product would contain pi^4, which the pi^2-linear coefficient ring cannot hold")]
    PiFourthPower,

    #[error("expression term pi^2 * ln(a)^{0} has no image in the golden basis")]
    OutsideGoldenBasis(u32),

    #[error("integrand rejected: {0}")]
    NotIntegrable(String),

    #[error(
        "oracle did not converge: best estimate {estimate:e} (error estimate {error_estimate:e}) \
         after {evaluations} evaluations"
    )]
    NoConvergence {
        estimate: f64,
        error_estimate: f64,
        evaluations: usize,
    },
}
