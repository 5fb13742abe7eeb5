//! Exact-arithmetic workbench for Büchi's n-squares problem.
//!
//! The crate is `no_std` and only needs an allocator. It covers:
//!
//! - [`exact`]: integer square roots, square tests and p-adic valuations.
//! - [`symbolic`]: univariate polynomials and rational functions over ℚ,
//!   sparse multivariate polynomials for identity checks.
//! - [`sequences`]: Büchi sequences over ℤ and their exhaustive bounded search.
//! - [`surfaces`]: Büchi surfaces, trivial lines, and the correspondence
//!   between rational points and monic quadratics.
//! - [`nevanlinna`]: Gauss norms, Newton polygons and the Nevanlinna
//!   functions `n`, `N`, `m` of rational functions, with exact checks.
//! - [`reduction`]: a compiler from polynomial Diophantine systems to
//!   diagonal quadratic systems through the second-difference gadget.
//!
//! Everything is exact; no floating point is used anywhere.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod exact;
pub mod lexer;
pub mod nevanlinna;
pub mod reduction;
pub mod sequences;
pub mod surfaces;
pub mod symbolic;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Exact integers.
pub type Int = BigInt;
/// Exact rationals, always kept in lowest terms with a positive denominator.
pub type Rat = BigRational;
