use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid potential: {0}")]
    InvalidPotential(String),
    #[error("operation requires a smooth potential, got a {0}")]
    NonSmooth(&'static str),
    #[error("derivative of order {order} is not resolved by the sampling grid; refine the grid")]
    OrderTooHigh { order: usize },
    #[error("spectral parameter |lambda| = {modulus:e} lies inside the exclusion radius {radius:e}")]
    PoleProximity { modulus: f64, radius: f64 },
    #[error("kernel evaluated on the diagonal (r = 0)")]
    DiagonalSingularity,
    #[error("Bessel recurrence overflow for ell = {ell}, |z| = {modulus:e}")]
    RecurrenceOverflow { ell: usize, modulus: f64 },
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("function (nearly) vanishes on the contour near {re} {im:+}i; perturb the region")]
    ZeroOnBoundary { re: f64, im: f64 },
    #[error("cell budget of {0} exceeded during subdivision")]
    BudgetExceeded(usize),
    #[error("invalid search region: {0}")]
    InvalidRegion(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("inequality violated: {0}")]
    InequalityViolated(String),
    #[error("only {found} singular values exceed {threshold:e}; at least {needed} required")]
    InsufficientSingularValues { found: usize, needed: usize, threshold: f64 },
    #[error("least-squares fit is ill-conditioned (condition estimate {0:e})")]
    IllConditionedFit(f64),
    #[error("resolution insufficient: extrapolation disagreement {0:e}")]
    ResolutionInsufficient(f64),
    #[error("integral diverges: {0}")]
    DivergentIntegral(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of a numerical procedure, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence(_)
                | Error::ZeroOnBoundary { .. }
                | Error::BudgetExceeded(_)
                | Error::RecurrenceOverflow { .. }
                | Error::InequalityViolated(_)
                | Error::InsufficientSingularValues { .. }
                | Error::IllConditionedFit(_)
                | Error::ResolutionInsufficient(_)
                | Error::OrderTooHigh { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
