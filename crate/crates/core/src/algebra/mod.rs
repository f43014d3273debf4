//! Exact arithmetic layer: rationals, bivariate and univariate polynomials,
//! resultants, and fraction-free linear algebra.

pub mod matrix;
pub mod poly;
pub mod rational;
pub mod resultant;
pub mod roots;
pub mod upoly;

pub use matrix::{exact_solve, poly_determinant, solve_with_pivots, FractionFreeEchelon, RatMatrix};
pub use poly::{BiPoly, Monomial, NumPoly, Var};
pub use rational::Rational;
pub use resultant::resultant;
pub use upoly::UniPoly;

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("matrix dimensions are inconsistent")]
    DimensionMismatch,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("degenerate input: {0}")]
    Degenerate(String),
}
