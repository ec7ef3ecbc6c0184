//! Computational checks for double twist knots: exact continued-fraction and
//! surgery-slope identities, Alexander polynomials, fibered monodromy, a census
//! of shared fillings with the figure-eight knot, and Turaev–Viro growth rates
//! computed from colored Jones polynomials at roots of unity.
//!
//! Exact layers (`arith`, `twistknots`, `surgery`, `mcg`, `census`) use
//! arbitrary-precision integers. The numeric layer (`quantum`) is generic over
//! a [`Real`] scalar; the aliases below name the instantiations used in
//! practice.

pub mod acceptance;
pub mod arith;
pub mod census;
pub mod mcg;
pub mod properties;
pub mod quantum;
pub mod surgery;
pub mod twistknots;

pub use arith::{alternating_cfe, cfe_eval, negate_slope, ContinuedFraction, ExactRational, Slope};
pub use census::{CensusRow, KnotTableRow};
pub use quantum::multifloat::MultiFloat;
pub use quantum::real::Real;
pub use quantum::{GrowthEstimate, Precision, RootOfUnityContext, TVSample};
pub use twistknots::{DoubleTwistKnot, Family, LaurentPolynomial, TwoBridgeFraction};

/// Single-precision scalar.
pub type Real32 = f32;
/// Double-precision scalar, the default for cheap evaluations.
pub type Real64 = f64;
/// 256-bit binary float.
pub type Real256 = MultiFloat<4>;
/// 512-bit binary float, enough for the cancellation in the fusion sums up to r ≈ 600.
pub type Real512 = MultiFloat<8>;
/// Complex double.
pub type Complex64 = num_complex::Complex<f64>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("rejected continued fraction: {0}")]
    RejectedSequence(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("operation undefined at infinity: {0}")]
    Infinity(String),
    #[error("D({m},{n}) is not a two-bridge knot: {reason}")]
    NotTwoBridgeKnot { m: i64, n: i64, reason: String },
    #[error("not a knot: {0}")]
    NotAKnot(String),
    #[error("unknown component: {0}")]
    UnknownComponent(String),
    #[error("component {id} cannot be blown down: coefficient {coefficient} is not -1/t")]
    NotBlowdownable { id: String, coefficient: String },
    #[error("exceptional filling: {0}")]
    ExceptionalFilling(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("oracle too expensive: {0}")]
    OracleTooExpensive(String),
    #[error("invalid slope: {0}")]
    InvalidSlope(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("malformed census name: {0}")]
    MalformedName(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
