//! Compiler from integer polynomial systems to diagonal quadratic systems.
//!
//! The pipeline is [`parse`] → [`lower_tac`] → [`eliminate_mul`] →
//! [`encode_square`], wrapped by [`compile`]. Every squaring `q = t²` is
//! replaced by a run of `M` squares with constant second difference 2 tied
//! to `q = u_1` and `u_2 − u_1 = 2t + 1`. Lifting solutions is always
//! possible; the converse holds only if every length-`M` Büchi sequence is
//! trivial, and each target carries that condition in its metadata.

use alloc::collections::BTreeMap;
use alloc::string::String;

use num_bigint::BigInt;

use crate::lexer::Span;
use crate::surfaces::SurfaceError;

mod check;
mod compile;
mod formulas;
mod parse;
mod tac;

pub use check::{
    assignment_count, bounded_equisat, bounded_equisat_range, gadget_solutions_bruteforce,
    gadget_values, EquisatReport, GadgetSolution, MAX_ASSIGNMENTS, MAX_GADGET_TARGET,
};
pub use compile::{
    check_diagonal, compile, eliminate_mul, encode_square, translate_witness, validate_diagonal,
    CompileStats, DiagonalViolation, Gadget, LinearEq, SquareEq, SquaringSystem, TargetSystem,
    DEFAULT_M,
};
pub use formulas::{print_formulas, Formula, FormulaMode, MEROMORPHIC_M};
pub use parse::{parse, Equation, Expr, SourceSystem, MAX_EXPONENT};
pub use tac::{lower_tac, Instr, TacProgram};

/// Values of variables by name.
pub type Witness = BTreeMap<String, BigInt>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("{span}: {message}")]
    Syntax { span: Span, message: String },
    #[error("{span}: exponent {exponent} exceeds the limit of 64")]
    ExponentOverflow { span: Span, exponent: BigInt },
    #[error("no value for variable '{0}'")]
    MissingVariable(String),
    #[error("gadget length must be at least 3, got {0}")]
    GadgetTooShort(usize),
    #[error("witness violates source equation {}", .equation + 1)]
    NotASolution { equation: usize },
    #[error("lifted witness violates target equation {}", .equation + 1)]
    LiftFailed { equation: usize },
    #[error("box must be positive")]
    EmptyBox,
    #[error("box {box_size} over {vars} variables exceeds {limit} assignments")]
    BoxTooLarge { box_size: u64, vars: usize, limit: u64 },
    #[error("unknown formula '{0}', expected F, G, H or Psi")]
    UnknownFormula(String),
    #[error(transparent)]
    Surface(SurfaceError),
}
