//! Coordinates of polynomial 1-forms in the Petrov module, the quotient of
//! all polynomial 1-forms by `{g dH + df}`, over the basis `[ω_i]` of
//! canonical primitives with `t` acting as multiplication by `H`.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{solve_with_pivots, AlgebraError, BiPoly, Monomial, RatMatrix, Rational, UniPoly, Var};
use crate::forms::{closed_form_potential, exterior_derivative, wedge_with_dh, OneForm};
use crate::milnor::MilnorBasis;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PetrovError {
    #[error("no decomposition exists within the degree bounds: {0}")]
    NoSolution(String),
    #[error("Petrov coefficients are not determined by the truncated system: {0}")]
    NotUnique(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `ω = sum_i p_i(H) ω_i + g dH + df`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PetrovDecomposition {
    pub coeff_polys: Vec<UniPoly>,
    pub witness_g: BiPoly,
    pub witness_f: BiPoly,
}

impl PetrovDecomposition {
    /// True when the class of the decomposed form is zero.
    pub fn is_zero_class(&self) -> bool {
        self.coeff_polys.iter().all(UniPoly::is_zero)
    }

    /// The right-hand side `sum_i p_i(H) ω_i + g dH + df`, expanded.
    pub fn expand(&self, basis: &MilnorBasis) -> OneForm {
        let h = basis.hamiltonian();
        let mut acc = OneForm::exact(&self.witness_f);
        acc = &acc + &OneForm::new(&self.witness_g * basis.hx(), &self.witness_g * basis.hy());
        for (p, w) in self.coeff_polys.iter().zip(basis.primitives()) {
            if p.is_zero() {
                continue;
            }
            let mut hp = BiPoly::zero();
            for c in p.coeffs().iter().rev() {
                hp = &hp * h;
                hp.add_term(Monomial::ONE, c.clone());
            }
            acc = &acc + &w.mul_poly(&hp);
        }
        acc
    }

    /// Re-expands the certificate and compares it with `omega` exactly.
    pub fn verify(&self, omega: &OneForm, basis: &MilnorBasis) -> bool {
        self.expand(basis) == *omega
    }
}

/// Decomposes `omega` in the Petrov module.
///
/// With `D = deg ω` the unknowns are `c_{i,k}` for `(n+1) k + deg ω_i <= D`
/// and the coefficients of `g` with `deg g <= D - (n+1)`. Taking `d` of the
/// identity removes `f`:
/// `dω = sum c_{i,k} d(H^k ω_i) + dg ^ dH`, a linear system over the
/// monomials of degree `<= D - 2`. The closed remainder
/// `ω - sum c H^k ω_i - g dH` is then integrated for `f`.
///
/// The `g` columns come first, so the `c` part is unique exactly when every
/// `c` column is a pivot column; this is checked on each call.
pub fn petrov_decompose(omega: &OneForm, basis: &MilnorBasis) -> Result<PetrovDecomposition, PetrovError> {
    let mu = basis.mu();
    let Some(big_d) = omega.degree() else {
        return Ok(PetrovDecomposition {
            coeff_polys: vec![UniPoly::zero(); mu],
            witness_g: BiPoly::zero(),
            witness_f: BiPoly::zero(),
        });
    };
    let n = basis.n();
    let h = basis.hamiltonian();

    let g_monos: Vec<Monomial> = match big_d.checked_sub(n + 1) {
        Some(e) => Monomial::up_to_degree(e).filter(|m| m.degree() > 0).collect(),
        None => Vec::new(),
    };
    let mut c_slots: Vec<(usize, u32)> = Vec::new();
    for i in 0..mu {
        let di = basis.form_degree(i);
        let mut k = 0;
        while (n + 1) * k + di <= big_d {
            c_slots.push((i, k));
            k += 1;
        }
    }

    let mut columns: Vec<BiPoly> = Vec::with_capacity(g_monos.len() + c_slots.len());
    let (hx, hy) = (basis.hx(), basis.hy());
    for m in &g_monos {
        let g = BiPoly::monomial(*m);
        columns.push(&(&g.partial(Var::X) * hy) - &(&g.partial(Var::Y) * hx));
    }
    let max_k = c_slots.iter().map(|s| s.1).max().unwrap_or(0);
    let mut h_pows = vec![BiPoly::one()];
    for k in 1..=max_k {
        let next = &h_pows[k as usize - 1] * h;
        h_pows.push(next);
    }
    let c_columns: Vec<BiPoly> = c_slots
        .par_iter()
        .map(|&(i, k)| {
            let m = BiPoly::monomial(basis.monomials()[i]);
            let mut col = &h_pows[k as usize] * &m;
            if k > 0 {
                let wedge = wedge_with_dh(h, &basis.primitives()[i]).f;
                col = &col + &(&h_pows[k as usize - 1] * &wedge).scale(&Rational::from_integer(k.into()));
            }
            col
        })
        .collect();
    columns.extend(c_columns);

    let target = exterior_derivative(omega).f;
    let mut solution = vec![Rational::zero(); columns.len()];
    if big_d >= 2 && !columns.is_empty() {
        let rows: BTreeMap<Monomial, usize> = Monomial::up_to_degree(big_d - 2)
            .enumerate()
            .map(|(r, m)| (m, r))
            .collect();
        let mut mat = RatMatrix::zeros(rows.len(), columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (m, c) in col.terms() {
                let r = *rows
                    .get(m)
                    .ok_or_else(|| PetrovError::NoSolution(format!("column term {m} exceeds the degree bound")))?;
                mat[(r, j)] = c.clone();
            }
        }
        let mut rhs = vec![Rational::zero(); rows.len()];
        for (m, c) in target.terms() {
            let r = *rows
                .get(m)
                .ok_or_else(|| PetrovError::NoSolution(format!("dω term {m} exceeds the degree bound")))?;
            rhs[r] = c.clone();
        }
        let (x, pivots) = solve_with_pivots(&mat, &rhs).map_err(|e| match e {
            AlgebraError::NoSolution => {
                PetrovError::NoSolution("H may not be regular at infinity or the basis is invalid".into())
            }
            other => other.into(),
        })?;
        let offset = g_monos.len();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.into_iter().collect();
        if let Some(j) = (offset..columns.len()).find(|j| !pivot_set.contains(j)) {
            let (i, k) = c_slots[j - offset];
            return Err(PetrovError::NotUnique(format!("coefficient of t^{k} on ω_{i}")));
        }
        solution = x;
    } else if !target.is_zero() {
        return Err(PetrovError::NoSolution("dω is nonzero but no unknowns are available".into()));
    }

    let offset = g_monos.len();
    let witness_g = BiPoly::from_terms(g_monos.iter().copied().zip(solution[..offset].iter().cloned()));
    let mut coeffs = vec![vec![Rational::zero(); max_k as usize + 1]; mu];
    for (&(i, k), c) in c_slots.iter().zip(&solution[offset..]) {
        coeffs[i][k as usize] = c.clone();
    }
    let coeff_polys: Vec<UniPoly> = coeffs.into_iter().map(UniPoly::new).collect();

    let partial = PetrovDecomposition {
        coeff_polys,
        witness_g,
        witness_f: BiPoly::zero(),
    };
    let closed = omega - &partial.expand(basis);
    let witness_f = closed_form_potential(&closed);
    if OneForm::exact(&witness_f) != closed {
        return Err(PetrovError::NoSolution("remainder is not exact".into()));
    }
    Ok(PetrovDecomposition { witness_f, ..partial })
}

/// Whether `omega` vanishes in the Petrov module, i.e. equals `g dH + df`.
pub fn petrov_class_is_zero(omega: &OneForm, basis: &MilnorBasis) -> Result<bool, PetrovError> {
    Ok(petrov_decompose(omega, basis)?.is_zero_class())
}
