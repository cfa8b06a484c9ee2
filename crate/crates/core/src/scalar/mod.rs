//! Scalar fields: Q, Q(σ), quadratic extensions of Q(σ), and complex
//! numbers at a fixed binary precision.

mod complex;
mod expr;
mod field;
mod matrix;
mod poly;
mod quad;
mod ratfunc;
mod sparse;

pub use complex::{Complex, Real};
pub use expr::{parse_expr, Expr, ExprError, ParseError};
pub use field::{specialize, Field, FieldElement, Point, Specialization};
pub use matrix::Matrix;
pub use poly::{rational_sqrt, Poly};
pub use quad::QuadElement;
pub use ratfunc::RatFunc;
pub use sparse::SparseEchelon;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("pole at s = {point}: denominator {denominator} vanishes")]
    Pole { point: String, denominator: String },
    #[error("this field has no symbolic sigma")]
    NoSigma,
    #[error("this field has no theta")]
    NoTheta,
    #[error("invalid delta: {0}")]
    InvalidDelta(String),
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape error: {0}")]
    Shape(String),
}
