//! Exact construction of irredundant Picard-Fuchs systems for Abelian
//! integrals of a bivariate polynomial regular at infinity, together with
//! algebraic and numeric verification of the resulting system.

pub mod algebra;
pub mod forms;
pub mod milnor;
pub mod parse;
pub mod periods;
pub mod petrov;
pub mod system;

pub use algebra::{AlgebraError, BiPoly, Monomial, RatMatrix, Rational, UniPoly, Var};
pub use forms::{OneForm, TwoForm};
pub use milnor::{check_regular_at_infinity, monomial_basis, MilnorBasis, MilnorError, RegularityReport};
pub use parse::{parse_one_form, parse_polynomial, ParseError};
pub use periods::{system_residual, trace_cycle, Cycle, PeriodError, PeriodSample, TraceMode, TraceOptions};
pub use petrov::{petrov_class_is_zero, petrov_decompose, PetrovDecomposition, PetrovError};
pub use system::{build_system, classify_singularities, validate_system, PfSystem, SystemError, ValidationReport};
