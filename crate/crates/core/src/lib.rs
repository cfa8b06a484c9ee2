//! Exact algebra for Temperley-Lieb type Hecke symmetries: construction of
//! the operators, the canonical pairing of the quantum matrix bialgebra, the
//! quantum determinant, Gram determinants and Poincaré series.
//!
//! Indices are 0-based throughout the library. Parsers and `Display`
//! implementations use the 1-based convention of the word syntax
//! (`t[1,2]`).

pub mod fleet;
pub mod gram;
pub mod pairing;
pub mod poincare;
pub mod qdet;
pub mod scalar;
pub mod tensorop;
pub mod tlhecke;

use scalar::ScalarError;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("position {position} out of range for arity {arity}")]
    Position { position: usize, arity: usize },
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("trace constraint tr Z = 1+q violated: sum of z_i is {sum}")]
    Trace { sum: String },
    #[error("pairing constraint z_i z_(n+1-i) = q violated at i = {i}: product is {product}")]
    PairConstraint { i: usize, product: String },
    #[error("middle constraint z_{i} = m(1+q) violated: z_{i} = {value}, m(1+q) = {expected}")]
    Middle {
        i: usize,
        value: String,
        expected: String,
    },
    #[error("c is not representable in {field}: {hint}")]
    CNotRepresentable { field: String, hint: String },
    #[error("M and N are not scalar, so det t is not central")]
    NotCentral,
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Outcome of a verification routine. Failures carry a witness.
#[derive(Clone, Debug, PartialEq)]
pub enum Check<W> {
    Pass,
    Fail(W),
}

impl<W> Check<W> {
    pub fn passed(&self) -> bool {
        matches!(self, Check::Pass)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Check::Pass => None,
            Check::Fail(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Check<V> {
        match self {
            Check::Pass => Check::Pass,
            Check::Fail(w) => Check::Fail(f(w)),
        }
    }
}
