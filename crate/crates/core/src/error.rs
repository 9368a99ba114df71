use thiserror::Error;

pub type Result<T> = std::result::Result<T, VacpolError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VacpolError {
    /// Argument outside the mathematical domain of a function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Physical parameters rejected (positivity, unitarity, ranges).
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("infrared divergence: {0}")]
    InfraredDivergence(String),

    /// Quadrature budget exhausted or a fit failed its quality check.
    #[error("numerical failure: {what} (best estimate {estimate:e}, error bound {error:e})")]
    NumericalFailure {
        what: String,
        estimate: f64,
        error: f64,
    },

    #[error("pole of the regularized polarization at u = {u}")]
    Pole { u: f64 },

    /// Parameter point where the massless value is not defined by a closed form.
    #[error("boundary case: {0}")]
    BoundaryCase(String),
}

impl VacpolError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        VacpolError::Domain(msg.into())
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        VacpolError::Parameter(msg.into())
    }

    pub(crate) fn infrared(msg: impl Into<String>) -> Self {
        VacpolError::InfraredDivergence(msg.into())
    }

    /// Same kind of error with `ctx: ` prepended to its message.
    pub fn with_context(self, ctx: &str) -> Self {
        match self {
            VacpolError::Domain(m) => VacpolError::Domain(format!("{ctx}: {m}")),
            VacpolError::Parameter(m) => VacpolError::Parameter(format!("{ctx}: {m}")),
            VacpolError::InfraredDivergence(m) => {
                VacpolError::InfraredDivergence(format!("{ctx}: {m}"))
            }
            VacpolError::BoundaryCase(m) => VacpolError::BoundaryCase(format!("{ctx}: {m}")),
            VacpolError::NumericalFailure {
                what,
                estimate,
                error,
            } => VacpolError::NumericalFailure {
                what: format!("{ctx}: {what}"),
                estimate,
                error,
            },
            pole @ VacpolError::Pole { .. } => pole,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            VacpolError::Domain(_) | VacpolError::Parameter(_) | VacpolError::BoundaryCase(_) => 2,
            VacpolError::InfraredDivergence(_) => 3,
            VacpolError::NumericalFailure { .. } | VacpolError::Pole { .. } => 4,
        }
    }
}
