//! Polynomial differential forms on the plane.
//!
//! Degrees follow the weighted convention `deg(x^a y^b dx) = a + b + 1` and
//! `deg(x^a y^b dx^dy) = a + b + 2`; the zero form has no degree.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::algebra::{BiPoly, Monomial, Rational, Var};

/// `P dx + Q dy`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OneForm {
    pub p: BiPoly,
    pub q: BiPoly,
}

/// `F dx^dy`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TwoForm {
    pub f: BiPoly,
}

impl OneForm {
    pub fn new(p: BiPoly, q: BiPoly) -> Self {
        OneForm { p, q }
    }

    pub fn zero() -> Self {
        OneForm::default()
    }

    /// The differential `df = f_x dx + f_y dy`.
    pub fn exact(f: &BiPoly) -> Self {
        OneForm::new(f.partial(Var::X), f.partial(Var::Y))
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        self.p.degree().max(self.q.degree()).map(|d| d + 1)
    }

    pub fn scale(&self, c: &Rational) -> OneForm {
        OneForm::new(self.p.scale(c), self.q.scale(c))
    }

    pub fn mul_poly(&self, g: &BiPoly) -> OneForm {
        OneForm::new(g * &self.p, g * &self.q)
    }

    /// Part of form degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> OneForm {
        match d.checked_sub(1) {
            Some(k) => OneForm::new(self.p.homogeneous_part(k), self.q.homogeneous_part(k)),
            None => OneForm::zero(),
        }
    }
}

impl TwoForm {
    pub fn new(f: BiPoly) -> Self {
        TwoForm { f }
    }

    pub fn monomial(m: Monomial) -> Self {
        TwoForm::new(BiPoly::monomial(m))
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        self.f.degree().map(|d| d + 2)
    }
}

/// `d(P dx + Q dy) = (Q_x - P_y) dx^dy`.
pub fn exterior_derivative(w: &OneForm) -> TwoForm {
    TwoForm::new(&w.q.partial(Var::X) - &w.p.partial(Var::Y))
}

/// `dH ^ (A dx + B dy) = (H_x B - H_y A) dx^dy`.
pub fn wedge_with_dh(h: &BiPoly, eta: &OneForm) -> TwoForm {
    TwoForm::new(&(&h.partial(Var::X) * &eta.q) - &(&h.partial(Var::Y) * &eta.p))
}

/// Radial primitive of `x^a y^b dx^dy`:
/// `(x^(a+1) y^b dy - x^a y^(b+1) dx) / (a + b + 2)`.
pub fn canonical_primitive(m: Monomial) -> OneForm {
    let c = Rational::new(1.into(), (m.degree() + 2).into());
    OneForm::new(
        BiPoly::term(-c.clone(), Monomial::new(m.a, m.b + 1)),
        BiPoly::term(c, Monomial::new(m.a + 1, m.b)),
    )
}

/// Radial primitive of an arbitrary polynomial 2-form, term by term.
pub fn radial_primitive(w: &TwoForm) -> OneForm {
    w.f.terms().fold(OneForm::zero(), |acc, (m, c)| {
        &acc + &canonical_primitive(*m).scale(c)
    })
}

/// Polynomial `f` with `df = w` for a closed form `w`, normalised by `f(0) = 0`.
///
/// Uses the Euler homotopy on each homogeneous component: if `w_e` has form
/// degree `e` then `f_e = (x P_e + y Q_e) / e`. The result is meaningful only
/// when `w` is closed; callers verify `df = w`.
pub fn closed_form_potential(w: &OneForm) -> BiPoly {
    let x = BiPoly::x();
    let y = BiPoly::y();
    let top = w.degree().unwrap_or(0);
    let mut f = BiPoly::zero();
    for e in 1..=top {
        let part = w.homogeneous_part(e);
        if part.is_zero() {
            continue;
        }
        let euler = &(&x * &part.p) + &(&y * &part.q);
        f = &f + &euler.scale(&Rational::new(1.into(), e.into()));
    }
    f
}

impl Add for &OneForm {
    type Output = OneForm;
    fn add(self, rhs: &OneForm) -> OneForm {
        OneForm::new(&self.p + &rhs.p, &self.q + &rhs.q)
    }
}

impl Sub for &OneForm {
    type Output = OneForm;
    fn sub(self, rhs: &OneForm) -> OneForm {
        OneForm::new(&self.p - &rhs.p, &self.q - &rhs.q)
    }
}

impl Neg for &OneForm {
    type Output = OneForm;
    fn neg(self) -> OneForm {
        OneForm::new(-&self.p, -&self.q)
    }
}

impl Add for &TwoForm {
    type Output = TwoForm;
    fn add(self, rhs: &TwoForm) -> TwoForm {
        TwoForm::new(&self.f + &rhs.f)
    }
}

impl Sub for &TwoForm {
    type Output = TwoForm;
    fn sub(self, rhs: &TwoForm) -> TwoForm {
        TwoForm::new(&self.f - &rhs.f)
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p.is_zero(), self.q.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "({}) dx", self.p),
            (true, false) => write!(f, "({}) dy", self.q),
            (false, false) => write!(f, "({}) dx + ({}) dy", self.p, self.q),
        }
    }
}

impl fmt::Display for TwoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.f.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "({}) dx^dy", self.f)
        }
    }
}

/// Sum of the degrees of the canonical primitives of `monomials`.
pub fn total_primitive_degree(monomials: &[Monomial]) -> u32 {
    monomials.iter().map(|m| m.degree() + 2).sum()
}
