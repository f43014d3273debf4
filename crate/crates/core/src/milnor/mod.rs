//! The Milnor (Jacobian) algebra `Q[x,y]/<H_x, H_y>` of a Hamiltonian regular
//! at infinity: regularity test, monomial basis, degree-controlled division
//! by the gradient, the matrix of multiplication by `H`, and a numeric
//! critical-point oracle that does not depend on any of the above.

mod basis;
mod critical;
mod reduce;
mod regularity;

pub use basis::{monomial_basis, BasisKind, MilnorBasis};
pub use critical::{
    critical_points_numeric, critical_value_clusters, CriticalPoint, OracleOptions,
};
pub use reduce::{divide_two_form, multiplication_matrix, reduce_mod_gradient, GradientReduction};
pub use regularity::{check_regular_at_infinity, RegularityReport};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum MilnorError {
    #[error("degree of H must be at least 2 (got {0})")]
    DegreeTooSmall(i64),
    #[error("H is not regular at infinity: {0}")]
    NotRegular(String),
    #[error("inconsistent rank in gradient reduction: {0}")]
    InternalRank(String),
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
