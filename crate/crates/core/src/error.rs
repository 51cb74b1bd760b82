use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain of a function.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// Parameters violate a precondition of the selection rules.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The integrand produced a non-finite transformed sample.
    #[error("non-finite sample at node j = {index}: {value}")]
    Sampling { index: i64, value: f64 },

    /// A caller broke a structural precondition (length, symmetry, order).
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unknown problem id {0} (expected 1..=4)")]
    UnknownProblem(u32),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        op,
        detail: detail.into(),
    }
}
