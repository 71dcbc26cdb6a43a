//! Exact truncated power series over the rationals.
//!
//! Every series carries the order through which its coefficients are
//! known. Terms beyond that order are unknown, not zero, and operations
//! only report coefficients they can prove from their inputs.

mod algebraic;
mod bivariate;
mod power;
mod rational;

pub use algebraic::{solve_algebraic, TruncatedSeries};
pub use bivariate::BivariateSeries;
pub use power::PowerSeries;
pub(crate) use rational::render_scaled;
pub use rational::{binomial, decimal, factorial, int, rat, rational_sqrt, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("division by zero series")]
    DivisionByZero,
    #[error("valuation mismatch: numerator has valuation {numerator}, divisor {divisor}")]
    ValuationMismatch { numerator: usize, divisor: usize },
    #[error("inner constant term nonzero")]
    InnerConstantNonzero,
    #[error("not invertible: {0}")]
    NotInvertible(&'static str),
    #[error("constant term {0} not a rational square")]
    NotASquare(Rational),
    #[error("constant term {0} is not 1")]
    LogConstantTerm(Rational),
    #[error("exp requires a vanishing constant term, found {0}")]
    ExpConstantTerm(Rational),
    #[error("seed is not a root")]
    SeedNotRoot,
    #[error("degenerate root (derivative vanishes)")]
    DegenerateRoot,
    #[error("newton iteration did not converge")]
    NotConverged,
    #[error("no coefficient of the result is provable from the inputs")]
    OrderExhausted,
}

pub type Result<T> = std::result::Result<T, SeriesError>;
