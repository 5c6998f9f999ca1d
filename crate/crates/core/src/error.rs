use thiserror::Error;

/// Domain failures raised by the arithmetic, transform and recurrence layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The complex-valued norm vanishes, so no inverse exists.
    #[error("zero divisor: |complex norm| = {modulus:e} is below the invertibility threshold")]
    ZeroDivisor { modulus: f64 },

    /// The evaluation point of a transform is a zero divisor.
    #[error("evaluation point is not invertible")]
    NotInvertible,

    /// A geometric series was requested outside its domain of convergence.
    #[error("divergent series: real norm {real_norm}, spectral radius {spectral_radius} (both must be < 1)")]
    DivergentSeries { real_norm: f64, spectral_radius: f64 },

    /// Truncated summation hit its term budget while the terms kept growing.
    #[error("no convergence after {terms} terms (term growth ratio {ratio})")]
    NoConvergence { terms: usize, ratio: f64 },

    /// The evaluation point lies on or inside the radius of convergence.
    #[error("outside region of convergence: norm {norm} <= radius {radius}")]
    OutsideRoc { norm: f64, radius: f64 },

    /// A component was NaN or infinite.
    #[error("non-finite component")]
    NonFinite,

    #[error("invalid recurrence: {0}")]
    InvalidRecurrence(String),

    #[error("invalid catalog parameters: {0}")]
    InvalidParams(String),
}

impl Error {
    /// Stable identifier used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroDivisor { .. } => "ZeroDivisor",
            Error::NotInvertible => "NotInvertible",
            Error::DivergentSeries { .. } => "DivergentSeries",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::OutsideRoc { .. } => "OutsideROC",
            Error::NonFinite => "NonFinite",
            Error::InvalidRecurrence(_) => "InvalidRecurrence",
            Error::InvalidParams(_) => "InvalidParams",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
