use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{exact_solve, AlgebraError, BiPoly, Monomial, RatMatrix, Rational};
use crate::forms::{OneForm, TwoForm};

use super::basis::{ideal_slice, slice_vector};
use super::{MilnorBasis, MilnorError};

/// `P = sum_i c_i m_i + B H_x - A H_y`, with `deg A, deg B <= deg P - n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradientReduction {
    pub remainder: Vec<Rational>,
    pub quot_a: BiPoly,
    pub quot_b: BiPoly,
}

impl GradientReduction {
    /// Re-expands the identity and compares with `p`.
    pub fn verify(&self, p: &BiPoly, basis: &MilnorBasis) -> bool {
        let mut rhs = &(&self.quot_b * basis.hx()) - &(&self.quot_a * basis.hy());
        for (c, m) in self.remainder.iter().zip(basis.monomials()) {
            rhs.add_term(*m, c.clone());
        }
        rhs == *p
    }
}

/// Division of `p` by the gradient ideal with remainder in the span of the
/// basis monomials.
///
/// The top homogeneous slice `P_d` is written as
/// `sum c_i m_i + U Ĥ_x + V Ĥ_y` (only basis monomials of degree `d` take
/// part), then `sum c_i m_i + U H_x + V H_y` is subtracted from `P`, which
/// strictly lowers its degree. Quotient degrees stay below `deg P - n + 1`.
pub fn reduce_mod_gradient(p: &BiPoly, basis: &MilnorBasis) -> Result<GradientReduction, MilnorError> {
    let n = basis.n();
    let (top_hx, top_hy) = basis.top_gradient();
    let mu = basis.mu();
    let mut rest = p.clone();
    let mut remainder = vec![Rational::zero(); mu];
    let mut quot_a = BiPoly::zero();
    let mut quot_b = BiPoly::zero();

    while let Some(d) = rest.degree() {
        let target = slice_vector(&rest, d);
        let local: Vec<usize> = (0..mu).filter(|&i| basis.monomials()[i].degree() == d).collect();
        let ideal = ideal_slice(top_hx, top_hy, n, d);
        let ncols = local.len() + ideal.len();
        if ncols == 0 {
            return Err(MilnorError::InternalRank(format!(
                "degree {d} slice has no basis monomials and no ideal elements"
            )));
        }
        let mut m = RatMatrix::zeros(d as usize + 1, ncols);
        for (j, &i) in local.iter().enumerate() {
            let v = slice_vector(&BiPoly::monomial(basis.monomials()[i]), d);
            for (r, val) in v.into_iter().enumerate() {
                m[(r, j)] = val;
            }
        }
        for (j, col) in ideal.iter().enumerate() {
            for (r, val) in col.iter().enumerate() {
                m[(r, local.len() + j)] = val.clone();
            }
        }
        let sol = exact_solve(&m, &target).map_err(|e| match e {
            AlgebraError::NoSolution => MilnorError::InternalRank(format!(
                "degree {d} slice is not spanned by the basis and the gradient ideal"
            )),
            other => other.into(),
        })?;

        for (j, &i) in local.iter().enumerate() {
            if !sol[j].is_zero() {
                remainder[i] += &sol[j];
                rest.add_term(basis.monomials()[i], -sol[j].clone());
            }
        }
        if !ideal.is_empty() {
            let k = d - n;
            let half = ideal.len() / 2;
            let u = BiPoly::from_terms(
                Monomial::of_degree(k).zip(sol[local.len()..local.len() + half].iter().cloned()),
            );
            let v = BiPoly::from_terms(Monomial::of_degree(k).zip(sol[local.len() + half..].iter().cloned()));
            rest = &(&rest - &(&u * basis.hx())) - &(&v * basis.hy());
            quot_b = &quot_b + &u;
            quot_a = &quot_a - &v;
        }
        if rest.degree().is_some_and(|e| e >= d) {
            return Err(MilnorError::InternalRank(format!("degree {d} slice did not cancel")));
        }
    }
    Ok(GradientReduction {
        remainder,
        quot_a,
        quot_b,
    })
}

/// Writes `Ω = dH ^ η + sum_i c_i dw_i` with `deg η <= deg Ω - (n + 1)`.
pub fn divide_two_form(omega: &TwoForm, basis: &MilnorBasis) -> Result<(OneForm, Vec<Rational>), MilnorError> {
    let red = reduce_mod_gradient(&omega.f, basis)?;
    Ok((OneForm::new(red.quot_a, red.quot_b), red.remainder))
}

/// Matrix of multiplication by `H` on the Milnor algebra, row convention:
/// `H m_i = sum_j A_ij m_j` modulo the gradient ideal.
pub fn multiplication_matrix(basis: &MilnorBasis) -> Result<RatMatrix, MilnorError> {
    let h = basis.hamiltonian();
    let rows: Result<Vec<Vec<Rational>>, MilnorError> = basis
        .monomials()
        .par_iter()
        .map(|m| reduce_mod_gradient(&h.mul_monomial(*m), basis).map(|r| r.remainder))
        .collect();
    Ok(RatMatrix::from_rows(rows?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::forms::{canonical_primitive, wedge_with_dh};
    use crate::milnor::monomial_basis;
    use crate::parse::parse_polynomial;
    use proptest::prelude::*;

    fn basis(src: &str) -> MilnorBasis {
        monomial_basis(&parse_polynomial(src).unwrap()).unwrap()
    }

    fn poly(src: &str) -> BiPoly {
        parse_polynomial(src).unwrap()
    }

    #[test]
    fn circle_reduction() {
        let b = basis("x^2+y^2");
        let p = poly("3 + x + x y");
        let r = reduce_mod_gradient(&p, &b).unwrap();
        assert_eq!(r.remainder, vec![int(3)]);
        assert_eq!(r.quot_b, poly("(1+y)/2"));
        assert!(r.quot_a.is_zero());
        assert!(r.verify(&p, &b));
    }

    #[test]
    fn folium_single_step() {
        let b = basis("x^3+y^3-3xy");
        let r = reduce_mod_gradient(&poly("x^2"), &b).unwrap();
        let y = b.index_of(Monomial::new(0, 1)).unwrap();
        for (i, c) in r.remainder.iter().enumerate() {
            assert_eq!(*c, if i == y { int(1) } else { int(0) });
        }
        assert!(r.verify(&poly("x^2"), &b));
    }

    #[test]
    fn basis_element_is_its_own_remainder() {
        let b = basis("x^5+y^5+x^2*y^2+x+y");
        let p = poly("2 x^3 y^2 - x y + 7");
        let r = reduce_mod_gradient(&p, &b).unwrap();
        assert!(r.quot_a.is_zero() && r.quot_b.is_zero());
        assert!(r.verify(&p, &b));
    }

    #[test]
    fn euler_identity_division() {
        let b = basis("x^2+y^2");
        let (eta, c) = divide_two_form(&TwoForm::new(poly("x^2+y^2")), &b).unwrap();
        assert_eq!(eta, canonical_primitive(Monomial::ONE));
        assert_eq!(c, vec![int(0)]);

        let (eta, c) = divide_two_form(&TwoForm::new(BiPoly::one()), &b).unwrap();
        assert!(eta.is_zero());
        assert_eq!(c, vec![int(1)]);
    }

    #[test]
    fn homogeneous_division_has_zero_remainder() {
        let h = poly("x^4+y^4");
        let b = monomial_basis(&h).unwrap();
        for m in b.monomials() {
            let omega = TwoForm::new(h.mul_monomial(*m));
            let (eta, c) = divide_two_form(&omega, &b).unwrap();
            assert!(c.iter().all(Zero::is_zero));
            assert_eq!(wedge_with_dh(&h, &eta), omega);
            assert!(eta.degree().unwrap() <= omega.degree().unwrap() - 4);
        }
    }

    #[test]
    fn multiplication_matrices() {
        assert!(multiplication_matrix(&basis("x^3+y^3")).unwrap().is_zero());
        assert!(multiplication_matrix(&basis("x^2+y^2")).unwrap().is_zero());
        let a = multiplication_matrix(&basis("x^3+y^3-3xy")).unwrap();
        // basis (1, x, y, xy): 1 -> -xy, x -> -x, y -> -y, xy -> -xy
        let expected = RatMatrix::from_ints(&[&[0, 0, 0, -1], &[0, -1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -1]]);
        assert_eq!(a, expected);
        assert_eq!(a.char_poly().unwrap(), crate::algebra::UniPoly::from_ints(&[0, 1, 3, 3, 1]));
    }

    fn arb_poly(max_deg: u32) -> impl Strategy<Value = BiPoly> {
        proptest::collection::vec((0..=max_deg, 0..=max_deg, -9i64..=9), 0..12).prop_map(move |ts| {
            BiPoly::from_terms(
                ts.into_iter()
                    .filter(|(a, b, _)| a + b <= max_deg)
                    .map(|(a, b, c)| (Monomial::new(a, b), int(c))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn reduction_identity_and_degree_bound(p in arb_poly(9)) {
            // n = 3, polynomials up to degree 3n
            let b = basis("x^4 - x*y^3 + 2 y^4 + x^2 y - y");
            let r = reduce_mod_gradient(&p, &b).unwrap();
            prop_assert!(r.verify(&p, &b));
            if let Some(d) = p.degree() {
                for q in [&r.quot_a, &r.quot_b] {
                    if let Some(dq) = q.degree() {
                        prop_assert!(dq + 3 <= d);
                    }
                }
            }
        }
    }
}
