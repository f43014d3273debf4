//! Sparse bivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, to_f64, Rational};
use super::AlgebraError;

/// One of the two coordinates of the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }
}

/// The monomial `x^a y^b`.
///
/// Monomials are ordered by total degree first; within one degree the larger
/// power of `x` comes first, so ascending order reads `1, x, y, x^2, xy, y^2, ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0 };

    pub fn new(a: u32, b: u32) -> Self {
        Monomial { a, b }
    }

    pub fn degree(&self) -> u32 {
        self.a + self.b
    }

    pub fn mul(self, other: Monomial) -> Monomial {
        Monomial::new(self.a + other.a, self.b + other.b)
    }

    /// All monomials of total degree `d`, in ascending order.
    pub fn of_degree(d: u32) -> impl Iterator<Item = Monomial> {
        (0..=d).rev().map(move |a| Monomial::new(a, d - a))
    }

    /// All monomials of total degree at most `d`, in ascending order.
    pub fn up_to_degree(d: u32) -> impl Iterator<Item = Monomial> {
        (0..=d).flat_map(Monomial::of_degree)
    }

    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Complex64 {
        x.powu(self.a) * y.powu(self.b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.a.cmp(&self.a))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factor = |f: &mut fmt::Formatter<'_>, v: &str, e: u32| match e {
            0 => Ok(()),
            1 => write!(f, "{v}"),
            _ => write!(f, "{v}^{e}"),
        };
        match (self.a, self.b) {
            (0, 0) => write!(f, "1"),
            (a, 0) => factor(f, "x", a),
            (0, b) => factor(f, "y", b),
            (a, b) => {
                factor(f, "x", a)?;
                write!(f, "*")?;
                factor(f, "y", b)
            }
        }
    }
}

/// Sparse polynomial in `x, y` with rational coefficients. No stored
/// coefficient is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        BiPoly::term(c, Monomial::ONE)
    }

    pub fn x() -> Self {
        BiPoly::term(Rational::one(), Monomial::new(1, 0))
    }

    pub fn y() -> Self {
        BiPoly::term(Rational::one(), Monomial::new(0, 1))
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::X => BiPoly::x(),
            Var::Y => BiPoly::y(),
        }
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        BiPoly::term(Rational::one(), m)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = BiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Degree in a single variable; `None` for zero.
    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| match v {
                Var::X => m.a,
                Var::Y => m.b,
            })
            .max()
    }

    pub fn homogeneous_part(&self, d: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Sum of the terms of maximal total degree.
    pub fn highest_homogeneous_part(&self) -> Result<BiPoly, AlgebraError> {
        let d = self.degree().ok_or(AlgebraError::ZeroPolynomial)?;
        Ok(self.homogeneous_part(d))
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.degree() {
            None => true,
            Some(d) => self.terms.keys().all(|m| m.degree() == d),
        }
    }

    pub fn scale(&self, c: &Rational) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative.
    pub fn partial(&self, v: Var) -> BiPoly {
        let mut out = BiPoly::zero();
        for (m, c) in &self.terms {
            let (e, dm) = match v {
                Var::X if m.a > 0 => (m.a, Monomial::new(m.a - 1, m.b)),
                Var::Y if m.b > 0 => (m.b, Monomial::new(m.a, m.b - 1)),
                _ => continue,
            };
            out.add_term(dm, c * Rational::from_integer(e.into()));
        }
        out
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            acc += c * num_traits::pow(x.clone(), m.a as usize) * num_traits::pow(y.clone(), m.b as usize);
        }
        acc
    }

    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Complex64 {
        let mut acc = Complex64::zero();
        for (m, c) in &self.terms {
            acc += m.eval_complex(x, y) * to_f64(c);
        }
        acc
    }

    /// Compiles to floating-point coefficients for repeated numeric evaluation.
    pub fn to_numeric(&self) -> NumPoly {
        NumPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.a, m.b, to_f64(c)))
                .collect(),
        }
    }

    /// Substitutes `x -> x + s*y`, a linear shear of the plane.
    pub fn shear_x(&self, s: &Rational) -> BiPoly {
        let shifted = &BiPoly::x() + &BiPoly::y().scale(s);
        let mut out = BiPoly::zero();
        for (m, c) in &self.terms {
            let t = &shifted.pow(m.a) * &BiPoly::monomial(Monomial::new(0, m.b));
            out = &out + &t.scale(c);
        }
        out
    }

    /// Maximum absolute coefficient, as f64.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| to_f64(&c.abs())).fold(0.0, f64::max)
    }
}

impl fmt::Display for BiPoly {
    // Highest degree first, x before y within a degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|(m, _)| (std::cmp::Reverse(m.degree()), std::cmp::Reverse(m.a)));
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if *m == Monomial::ONE {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(*m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: BiPoly) -> BiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: &BiPoly) -> BiPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

/// Floating-point image of a [`BiPoly`] for fast complex evaluation.
#[derive(Clone, Debug)]
pub struct NumPoly {
    terms: Vec<(u32, u32, f64)>,
}

impl NumPoly {
    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        let mut acc = Complex64::zero();
        for &(a, b, c) in &self.terms {
            acc += x.powu(a) * y.powu(b) * c;
        }
        acc
    }

    /// Sum of |c| |x|^a |y|^b, the natural scale for rounding error in `eval`.
    pub fn magnitude(&self, x: Complex64, y: Complex64) -> f64 {
        let (ax, ay) = (x.norm(), y.norm());
        self.terms
            .iter()
            .map(|&(a, b, c)| c.abs() * ax.powi(a as i32) * ay.powi(b as i32))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn quintic() -> BiPoly {
        BiPoly::from_terms([
            (Monomial::new(5, 0), int(1)),
            (Monomial::new(0, 5), int(1)),
            (Monomial::new(2, 2), int(1)),
            (Monomial::new(1, 0), int(1)),
            (Monomial::new(0, 1), int(1)),
        ])
    }

    #[test]
    fn monomial_order_is_graded_x_first() {
        let listed: Vec<_> = Monomial::up_to_degree(2).collect();
        assert_eq!(
            listed,
            vec![
                Monomial::new(0, 0),
                Monomial::new(1, 0),
                Monomial::new(0, 1),
                Monomial::new(2, 0),
                Monomial::new(1, 1),
                Monomial::new(0, 2)
            ]
        );
        let mut sorted = listed.clone();
        sorted.sort();
        assert_eq!(listed, sorted);
    }

    #[test]
    fn ring_identities() {
        let x = BiPoly::x();
        let y = BiPoly::y();
        let lhs = &(&x + &y) * &(&x - &y);
        let rhs = &(&x * &x) - &(&y * &y);
        assert_eq!(lhs, rhs);
        assert_eq!(&quintic() + &BiPoly::zero(), quintic());
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn evaluation() {
        assert_eq!(quintic().eval(&int(1), &int(1)), int(5));
        let v = quintic().eval_complex(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
        assert!((v - Complex64::new(5.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn partial_derivatives() {
        let dx = quintic().partial(Var::X);
        let expected = BiPoly::from_terms([
            (Monomial::new(4, 0), int(5)),
            (Monomial::new(1, 2), int(2)),
            (Monomial::ONE, int(1)),
        ]);
        assert_eq!(dx, expected);
        assert!(BiPoly::constant(rat(3, 7)).partial(Var::Y).is_zero());
    }

    #[test]
    fn highest_part() {
        let top = quintic().highest_homogeneous_part().unwrap();
        assert_eq!(top.to_string(), "x^5 + y^5");
        assert!(top.is_homogeneous());
        assert_eq!(top.highest_homogeneous_part().unwrap(), top);
        assert!(matches!(
            BiPoly::zero().highest_homogeneous_part(),
            Err(AlgebraError::ZeroPolynomial)
        ));
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(BiPoly::zero().degree(), None);
        assert_eq!(quintic().degree(), Some(5));
        assert_eq!(BiPoly::one().degree(), Some(0));
    }

    #[test]
    fn display() {
        let p = BiPoly::from_terms([
            (Monomial::new(1, 1), rat(3, 2)),
            (Monomial::new(0, 3), int(-1)),
            (Monomial::ONE, int(-2)),
        ]);
        assert_eq!(p.to_string(), "-y^3 + 3/2*x*y - 2");
    }

    #[test]
    fn shear_preserves_values() {
        let p = quintic();
        let s = rat(2, 3);
        let q = p.shear_x(&s);
        // q(x, y) = p(x + s y, y)
        let (x0, y0) = (rat(1, 2), rat(-3, 5));
        assert_eq!(q.eval(&x0, &y0), p.eval(&(&x0 + &s * &y0), &y0));
    }
}
