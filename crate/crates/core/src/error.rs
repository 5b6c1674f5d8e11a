use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A partition, spacing or problem parameter is outside its valid range.
    #[error("domain error: {0}")]
    Domain(String),

    /// Forward elimination hit a (numerically) zero pivot.
    #[error("zero pivot in row {row} (pivot = {pivot:e})")]
    ZeroPivot { row: usize, pivot: f64 },

    #[error("series did not converge within {max_terms} terms (last term {last_term:e})")]
    NonConvergence { max_terms: usize, last_term: f64 },

    /// The series denominator is lost to cancellation in f64.
    #[error("series ill-conditioned: denominator {denominator:e} against term scale {scale:e}")]
    IllConditioned { denominator: f64, scale: f64 },

    #[error("overflow: {0}")]
    Overflow(String),

    /// A requested sample time does not fall on the time-step grid.
    #[error("sample time {time} is not a multiple of dt = {dt}")]
    MisalignedTime { time: f64, dt: f64 },

    /// A requested sample abscissa is not a knot of the partition.
    #[error("sample point x = {0} is not a knot of the partition")]
    NotAKnot(f64),

    #[error("invalid config field `{field}`: {reason}")]
    Config { field: String, reason: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
