use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure kinds surfaced by the library.
///
/// The CLI maps `Argument` to a usage failure and everything else to a
/// numeric failure.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("not a double well: a = {a}, b = {b} (need a < 0, b > 0)")]
    NotDoubleWell { a: f64, b: f64 },

    #[error("{value} is outside the domain of {what}")]
    Domain { what: &'static str, value: f64 },

    /// E = E_c: the separatrix carries no closed orbit.
    #[error("energy {energy} lies on the separatrix (E = E_c)")]
    Separatrix { energy: f64 },

    #[error("numeric failure in {context}: {detail}")]
    Numeric { context: &'static str, detail: String },

    /// Requested EBK action lies outside the range of the chosen branch.
    #[error("target action {target} is outside the {branch} branch range (boundary {limit})")]
    BranchOverflow {
        branch: &'static str,
        target: f64,
        limit: f64,
    },

    #[error("analysis error: {0}")]
    Analysis(String),

    #[error("data integrity: {0}")]
    DataIntegrity(String),

    #[error("fit error: {0}")]
    Fit(String),
}

impl Error {
    pub(crate) fn numeric(context: &'static str, detail: impl Into<String>) -> Self {
        Error::Numeric {
            context,
            detail: detail.into(),
        }
    }

    /// True for errors caused by malformed input rather than numerics.
    pub fn is_argument(&self) -> bool {
        matches!(self, Error::Argument(_) | Error::NotDoubleWell { .. })
    }
}
