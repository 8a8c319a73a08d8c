use thiserror::Error;

use crate::region::Point;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("binomial upper index must be nonnegative, got {0}")]
    NegativeBinomialTop(i64),

    #[error("alternating sum over T needs both steps <= -1, got step_a={step_a} step_b={step_b}")]
    UnboundedSum { step_a: i64, step_b: i64 },

    #[error("matrix is not square: {rows} rows of length {cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("malformed region: {0}")]
    MalformedRegion(String),

    #[error("point {0} is outside the region")]
    OutsideRegion(Point),

    #[error("enumeration cap of {cap} exceeded")]
    CapExceeded { cap: usize },

    #[error("endpoint configuration violates: {}", .0.join(", "))]
    InvalidEndpoints(Vec<String>),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}
