//! The irredundant system `(t - A) İ = (B0 + t B1) I` for the periods
//! `I_i(t)` of the basis forms `ω_i` over any continuous family of cycles on
//! the level curves `{H = t}`.

mod classify;
mod serialize;
mod spectrum;
mod validate;

pub use classify::{classify_singularities, Classification};
pub use serialize::{parse_system_json, serialize_system, Format, SerializedSystem};
pub use spectrum::{expand_multiset, matching_error, roots_with_multiplicity};
pub use validate::{validate_system, validate_system_with, ValidationReport};

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{RatMatrix, Rational, UniPoly};
use crate::forms::{OneForm, TwoForm};
use crate::milnor::{divide_two_form, monomial_basis, MilnorBasis, MilnorError};
use crate::petrov::{petrov_decompose, PetrovDecomposition, PetrovError};
use crate::BiPoly;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SystemError {
    #[error(transparent)]
    Milnor(#[from] MilnorError),
    #[error(transparent)]
    Petrov(#[from] PetrovError),
    #[error(transparent)]
    Algebra(#[from] crate::AlgebraError),
}

#[derive(Clone, Debug)]
pub struct PfSystem {
    pub basis: MilnorBasis,
    /// Multiplication by `H` on the Milnor algebra (row `i` is `H m_i`).
    pub a: RatMatrix,
    pub b0: RatMatrix,
    pub b1: RatMatrix,
    /// `d_i = deg ω_i / (n + 1)`.
    pub d: Vec<Rational>,
    pub char_poly: UniPoly,
    /// Eigenvalues of `A` with multiplicities, from the exact characteristic
    /// polynomial.
    pub critical_values: Vec<(Complex64, usize)>,
    /// `H dω_i = dH ^ η_i + sum_j A_ij dω_j`.
    pub etas: Vec<OneForm>,
    /// `η_i = sum_j (B0_ij + B1_ij H) ω_j + g_i dH + df_i`.
    pub certificates: Vec<PetrovDecomposition>,
}

impl PfSystem {
    pub fn hamiltonian(&self) -> &BiPoly {
        self.basis.hamiltonian()
    }

    pub fn mu(&self) -> usize {
        self.basis.mu()
    }
}

/// Builds the system for `h`, which must be regular at infinity.
///
/// Row `i` comes from dividing `H m_i dx^dy` by `dH` (giving `η_i` and row
/// `i` of `A`) and decomposing `η_i` in the Petrov module. Since
/// `deg η_i <= deg ω_i < 2(n + 1)` the coefficients are at most linear in `t`.
pub fn build_system(h: &BiPoly) -> Result<PfSystem, SystemError> {
    let basis = monomial_basis(h)?;
    build_system_for_basis(basis)
}

/// As [`build_system`], for a given (possibly reordered) basis.
pub fn build_system_for_basis(basis: MilnorBasis) -> Result<PfSystem, SystemError> {
    let mu = basis.mu();
    let h = basis.hamiltonian();
    let rows: Result<Vec<_>, SystemError> = (0..mu)
        .into_par_iter()
        .map(|i| {
            let omega = TwoForm::new(h.mul_monomial(basis.monomials()[i]));
            let (eta, a_row) = divide_two_form(&omega, &basis)?;
            let cert = petrov_decompose(&eta, &basis)?;
            Ok((eta, a_row, cert))
        })
        .collect();
    let rows = rows?;

    let mut a = Vec::with_capacity(mu);
    let mut b0 = Vec::with_capacity(mu);
    let mut b1 = Vec::with_capacity(mu);
    let mut etas = Vec::with_capacity(mu);
    let mut certificates = Vec::with_capacity(mu);
    for (eta, a_row, cert) in rows {
        if let Some(j) = cert.coeff_polys.iter().position(|p| p.degree().unwrap_or(0) > 1) {
            return Err(PetrovError::NoSolution(format!("coefficient on ω_{j} has degree above 1")).into());
        }
        b0.push(cert.coeff_polys.iter().map(|p| p.coeff(0)).collect());
        b1.push(cert.coeff_polys.iter().map(|p| p.coeff(1)).collect());
        a.push(a_row);
        etas.push(eta);
        certificates.push(cert);
    }
    let a = RatMatrix::from_rows(a)?;
    let char_poly = a.char_poly()?;
    let critical_values = roots_with_multiplicity(&char_poly);
    let n1 = Rational::from_integer((basis.n() + 1).into());
    let d = (0..mu)
        .map(|i| Rational::from_integer(basis.form_degree(i).into()) / &n1)
        .collect();
    Ok(PfSystem {
        a,
        b0: RatMatrix::from_rows(b0)?,
        b1: RatMatrix::from_rows(b1)?,
        d,
        char_poly,
        critical_values,
        etas,
        certificates,
        basis,
    })
}
