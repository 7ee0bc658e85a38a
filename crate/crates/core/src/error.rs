use thiserror::Error;

use crate::krull::MonomialFamily;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Rank or coefficient ring of two operands disagree.
    #[error("structural mismatch: {0}")]
    Structural(String),

    #[error("coefficients {0} do not form a field")]
    UnsupportedCoefficients(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("quotient has dimension {dimension}, fewer than the {target} requested monomials (found {})", .achieved.monomials.len())]
    DimensionDeficit {
        dimension: String,
        target: usize,
        achieved: MonomialFamily,
    },

    #[error("report is only an upper bound; an exact report is required")]
    NotExact,

    #[error("element budget of {budget} exceeded ({reached} elements)")]
    Budget { budget: usize, reached: usize },

    #[error("fit failed: {0}")]
    Fit(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
