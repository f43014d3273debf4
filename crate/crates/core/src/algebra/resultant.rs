//! Sylvester resultants of bivariate polynomials.

use num_traits::Zero;

use super::matrix::poly_determinant;
use super::poly::{BiPoly, Var};
use super::upoly::UniPoly;
use super::AlgebraError;

/// Coefficients of `p` as a polynomial in `var`, each a univariate
/// polynomial in the other variable. Index `k` holds the coefficient of `var^k`.
pub fn coefficients_in(p: &BiPoly, var: Var) -> Vec<UniPoly> {
    let deg = p.degree_in(var).unwrap_or(0) as usize;
    let mut raw: Vec<Vec<_>> = vec![Vec::new(); deg + 1];
    for (m, c) in p.terms() {
        let (k, e) = match var {
            Var::X => (m.a, m.b),
            Var::Y => (m.b, m.a),
        };
        let slot = &mut raw[k as usize];
        if slot.len() <= e as usize {
            slot.resize(e as usize + 1, num_rational::BigRational::zero());
        }
        slot[e as usize] = c.clone();
    }
    raw.into_iter().map(UniPoly::new).collect()
}

/// Resultant of `p` and `q` eliminating `var`; a univariate polynomial in
/// the remaining variable.
pub fn resultant(p: &BiPoly, q: &BiPoly, var: Var) -> Result<UniPoly, AlgebraError> {
    if p.is_zero() || q.is_zero() {
        return Err(AlgebraError::Degenerate("resultant of the zero polynomial".into()));
    }
    let pc = coefficients_in(p, var);
    let qc = coefficients_in(q, var);
    let (dp, dq) = (pc.len() - 1, qc.len() - 1);
    if dp == 0 && dq == 0 {
        return Err(AlgebraError::Degenerate(
            "both polynomials are constant in the eliminated variable".into(),
        ));
    }
    let n = dp + dq;
    let mut sylvester = vec![vec![UniPoly::zero(); n]; n];
    for i in 0..dq {
        for (k, c) in pc.iter().rev().enumerate() {
            sylvester[i][i + k] = c.clone();
        }
    }
    for i in 0..dp {
        for (k, c) in qc.iter().rev().enumerate() {
            sylvester[dq + i][i + k] = c.clone();
        }
    }
    poly_determinant(sylvester)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Monomial;
    use crate::algebra::rational::int;

    fn poly(terms: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_terms(terms.iter().map(|&(a, b, c)| (Monomial::new(a, b), int(c))))
    }

    #[test]
    fn substitution_case() {
        // Res_y(y^2 - x, y - 1) = 1 - x
        let p = poly(&[(0, 2, 1), (1, 0, -1)]);
        let q = poly(&[(0, 1, 1), (0, 0, -1)]);
        assert_eq!(resultant(&p, &q, Var::Y).unwrap(), UniPoly::from_ints(&[1, -1]));
    }

    #[test]
    fn folium_gradient() {
        // Res_y(3x^2 - 3y, 3y^2 - 3x), Sylvester determinant by hand:
        // |-3   3x^2  0   |
        // | 0  -3    3x^2 |  = -3(-3*-3x - 0) - 3x^2(0 - 3*3x^2) = -27x + 27x^4
        // | 3   0   -3x   |
        let p = poly(&[(2, 0, 3), (0, 1, -3)]);
        let q = poly(&[(0, 2, 3), (1, 0, -3)]);
        assert_eq!(
            resultant(&p, &q, Var::Y).unwrap(),
            UniPoly::from_ints(&[0, -27, 0, 0, 27])
        );
    }

    #[test]
    fn common_factor_vanishes() {
        let p = poly(&[(3, 0, 1), (1, 1, 2), (0, 2, -1), (0, 0, 4)]);
        assert!(resultant(&p, &p, Var::X).unwrap().is_zero());
    }

    #[test]
    fn degenerate_when_both_constant() {
        let p = poly(&[(0, 2, 1)]);
        let q = poly(&[(0, 1, 1)]);
        assert!(matches!(resultant(&p, &q, Var::X), Err(AlgebraError::Degenerate(_))));
    }
}
