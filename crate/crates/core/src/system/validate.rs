use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{poly_determinant, Monomial, Rational, UniPoly};
use crate::forms::wedge_with_dh;
use crate::milnor::{critical_points_numeric, critical_value_clusters, OracleOptions};

use super::spectrum::{expand_multiset, matching_error};
use super::PfSystem;

pub const SPECTRUM_TOL: f64 = 1e-8;
pub const EIGENVECTOR_TOL: f64 = 1e-6;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub identity_ok: bool,
    pub spectrum_ok: bool,
    pub eigenvector_ok: bool,
    pub b0_triangular_ok: bool,
    pub b0_diagonal_ok: bool,
    pub b1_triangular_ok: bool,
    pub b1_square_zero_ok: bool,
    pub b_invertible_ok: bool,
    pub details: Vec<String>,
}

impl ValidationReport {
    pub fn all_ok(&self) -> bool {
        self.identity_ok
            && self.spectrum_ok
            && self.eigenvector_ok
            && self.b0_triangular_ok
            && self.b0_diagonal_ok
            && self.b1_triangular_ok
            && self.b1_square_zero_ok
            && self.b_invertible_ok
    }
}

pub fn validate_system(sys: &PfSystem) -> ValidationReport {
    validate_system_with(sys, &OracleOptions::default())
}

/// Re-checks every structural property of `sys`; failures are reported, never
/// raised.
pub fn validate_system_with(sys: &PfSystem, opts: &OracleOptions) -> ValidationReport {
    let mut r = ValidationReport::default();
    let basis = &sys.basis;
    let h = basis.hamiltonian();
    let mu = sys.mu();
    let deg: Vec<u32> = (0..mu).map(|i| basis.form_degree(i)).collect();

    r.identity_ok = (0..mu).all(|i| {
        let mut rest = &h.mul_monomial(basis.monomials()[i]) - &wedge_with_dh(h, &sys.etas[i]).f;
        for (j, m) in basis.monomials().iter().enumerate() {
            rest.add_term(*m, -sys.a[(i, j)].clone());
        }
        let division_ok = rest.is_zero();
        let cert = &sys.certificates[i];
        let petrov_ok = cert.verify(&sys.etas[i], basis)
            && (0..mu).all(|j| cert.coeff_polys[j].coeff(0) == sys.b0[(i, j)] && cert.coeff_polys[j].coeff(1) == sys.b1[(i, j)]);
        if !division_ok {
            r.details.push(format!("division identity fails in row {i}"));
        }
        if !petrov_ok {
            r.details.push(format!("Petrov certificate fails in row {i}"));
        }
        division_ok && petrov_ok
    });

    match critical_points_numeric(h, opts) {
        Ok(points) => {
            let values = critical_value_clusters(&points, opts.cluster_radius);
            let oracle: Vec<Complex64> = points
                .iter()
                .flat_map(|p| std::iter::repeat_n(p.value, p.multiplicity))
                .collect();
            let eig = expand_multiset(&sys.critical_values);
            match matching_error(&eig, &oracle) {
                Some(e) if e <= SPECTRUM_TOL => r.spectrum_ok = true,
                Some(e) => r.details.push(format!("spectrum differs from critical values by {e:.3e}")),
                None => r.details.push("spectrum and critical values differ in count".into()),
            }
            r.eigenvector_ok = eigenvectors_align(sys, &points, &values, &mut r.details);
        }
        Err(e) => r.details.push(format!("critical point oracle failed: {e}")),
    }

    r.b0_triangular_ok = (0..mu).all(|i| {
        (0..mu).all(|j| i == j || sys.b0[(i, j)].is_zero() || deg[j] < deg[i])
    });
    if !r.b0_triangular_ok {
        r.details.push("B0 has an entry above the degree filtration".into());
    }
    r.b0_diagonal_ok = (0..mu).all(|i| sys.b0[(i, i)] == sys.d[i]);
    if !r.b0_diagonal_ok {
        r.details.push("diagonal of B0 differs from D".into());
    }
    r.b1_triangular_ok = (0..mu).all(|i| (0..mu).all(|j| sys.b1[(i, j)].is_zero() || deg[j] < deg[i]));
    if !r.b1_triangular_ok {
        r.details.push("B1 is not strictly lower triangular in degree order".into());
    }
    r.b1_square_zero_ok = (0..mu).all(|i| sys.b1[(i, i)].is_zero()) && (&sys.b1 * &sys.b1).is_zero();
    if !r.b1_square_zero_ok {
        r.details.push("B1^2 is not zero".into());
    }

    let expected: Rational = sys.d.iter().product();
    let pencil: Vec<Vec<UniPoly>> = (0..mu)
        .map(|i| {
            (0..mu)
                .map(|j| UniPoly::new(vec![sys.b0[(i, j)].clone(), sys.b1[(i, j)].clone()]))
                .collect()
        })
        .collect();
    r.b_invertible_ok = match poly_determinant(pencil) {
        Ok(det) => {
            let ok = !expected.is_zero() && det == UniPoly::constant(expected);
            if !ok {
                r.details.push(format!("det(B0 + t B1) = {det}"));
            }
            ok
        }
        Err(e) => {
            r.details.push(format!("determinant failed: {e}"));
            false
        }
    };
    r
}

/// At a critical point `p` with value `t`, `H m_i = sum_j A_ij m_j` modulo
/// the gradient gives `A v = t v` for `v_i = m_i(p)`. Checked for values of
/// multiplicity one.
fn eigenvectors_align(
    sys: &PfSystem,
    points: &[crate::milnor::CriticalPoint],
    values: &[(Complex64, usize)],
    details: &mut Vec<String>,
) -> bool {
    let a = sys.a.to_f64();
    let norm_a = a
        .iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let monomials: &[Monomial] = sys.basis.monomials();
    let mut ok = true;
    for p in points.iter().filter(|p| p.multiplicity == 1) {
        let simple = values
            .iter()
            .any(|(v, k)| *k == 1 && (v - p.value).norm() <= 1e-6 * (1.0 + v.norm()));
        if !simple {
            continue;
        }
        let v: Vec<Complex64> = monomials.iter().map(|m| m.eval_complex(p.x, p.y)).collect();
        let vnorm = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let resid = a
            .iter()
            .zip(&v)
            .map(|(row, vi)| {
                let av: Complex64 = row.iter().zip(&v).map(|(aij, vj)| vj * *aij).sum();
                (av - p.value * vi).norm()
            })
            .fold(0.0, f64::max);
        if resid > EIGENVECTOR_TOL * (norm_a + p.value.norm()).max(1.0) * vnorm {
            details.push(format!("eigenvector check fails at critical value {:.6}", p.value));
            ok = false;
        }
    }
    ok
}
