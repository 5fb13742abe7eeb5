//! Exact symbolic algebra over ℚ: univariate polynomials and rational
//! functions in `z`, plus sparse multivariate polynomials for checking
//! polynomial identities.

mod expr;
mod mpoly;
mod ratfunc;
mod upoly;

pub use expr::{parse_ratfunc, parse_upoly};
pub use mpoly::{mpoly_identity_equal, MPoly, PolyRing};
pub use ratfunc::RatFunc;
pub use upoly::UPoly;

pub(crate) use upoly::fmt_rat;

use alloc::string::String;

use crate::lexer::Span;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymbolicError {
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("{span}: {message}")]
    Parse { span: Span, message: String },
    #[error("expression is not a polynomial")]
    NotPolynomial,
}
