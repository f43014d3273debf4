use std::borrow::Cow;
use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

use crate::algebra::{BiPoly, NumPoly};
use crate::forms::OneForm;

use super::cycle::{Curve, Cycle, Point};
use super::PeriodError;

const LOW_ORDER: usize = 10;
const HIGH_ORDER: usize = 20;

fn compute_rule(order: usize) -> Vec<(f64, f64)> {
    GaussLegendre::new(NonZeroUsize::new(order).expect("positive order"))
        .as_node_weight_pairs()
        .to_vec()
}

fn rule(order: usize) -> Cow<'static, [(f64, f64)]> {
    static LOW: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    static HIGH: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    match order {
        LOW_ORDER => Cow::Borrowed(LOW.get_or_init(|| compute_rule(LOW_ORDER))),
        HIGH_ORDER => Cow::Borrowed(HIGH.get_or_init(|| compute_rule(HIGH_ORDER))),
        _ => Cow::Owned(compute_rule(order)),
    }
}

/// A quadrature value with the difference between two Gauss-Legendre orders
/// as its error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: Complex64,
    pub error: f64,
}

/// Integrates `f(point, velocity)` along the closed curve.
///
/// Between consecutive samples `a`, `b` the curve is parametrized as
/// `γ(s) = a + s (b - a) + λ(s) n`, `n` the conjugate gradient at the
/// midpoint and `λ` fixed by `H(γ(s)) = t`; then
/// `λ' = -(∇H · (b - a)) / (∇H · n)`. The parametrization is exact on the
/// curve, so Gauss-Legendre converges at its full order on every segment.
pub(crate) fn integrate_along<F>(cycle: &Cycle, tol: f64, orders: (usize, usize), f: F) -> Result<Quadrature, PeriodError>
where
    F: Fn(Point, Point) -> Result<Complex64, PeriodError>,
{
    let curve = Curve::new(&cycle.h, cycle.t);
    let mut high = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    for seg in cycle.points.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        let chord = [b[0] - a[0], b[1] - a[1]];
        let mid = [(a[0] + b[0]) * 0.5, (a[1] + b[1]) * 0.5];
        let g = curve.grad(mid);
        let n = [g[0].conj(), g[1].conj()];
        let mut seg_val = [Complex64::new(0.0, 0.0); 2];
        for (slot, order) in [(0, orders.0), (1, orders.1)] {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(node, weight) in rule(order).iter() {
                let s = 0.5 * (node + 1.0);
                let lin = [a[0] + chord[0] * s, a[1] + chord[1] * s];
                let p = curve
                    .project_along(lin, n, tol)
                    .ok_or_else(|| PeriodError::TraceDiverged("quadrature node left the level curve".into()))?;
                let gp = curve.grad(p);
                let denom = gp[0] * n[0] + gp[1] * n[1];
                let dl = -(gp[0] * chord[0] + gp[1] * chord[1]) / denom;
                let vel = [chord[0] + dl * n[0], chord[1] + dl * n[1]];
                acc += f(p, vel)? * (0.5 * weight);
            }
            seg_val[slot] = acc;
        }
        high += seg_val[1];
        error += (seg_val[1] - seg_val[0]).norm();
    }
    Ok(Quadrature { value: high, error })
}

/// `∮ P dx + Q dy` along the cycle.
pub fn integrate_form(w: &OneForm, cycle: &Cycle) -> Result<Quadrature, PeriodError> {
    integrate_form_with_orders(w, cycle, (LOW_ORDER, HIGH_ORDER))
}

/// [`integrate_form`] with explicit Gauss-Legendre orders `(estimate, value)`.
pub fn integrate_form_with_orders(w: &OneForm, cycle: &Cycle, orders: (usize, usize)) -> Result<Quadrature, PeriodError> {
    let (p, q) = (w.p.to_numeric(), w.q.to_numeric());
    integrate_along(cycle, 1e-13, orders, |pt, v| Ok(p.eval(pt[0], pt[1]) * v[0] + q.eval(pt[0], pt[1]) * v[1]))
}

/// `d/dt ∮ ω` for any `ω` with `dω = m dx^dy`, as `∮ θ` with `dH ^ θ = m dx^dy`.
///
/// On the curve `θ = m dy / H_x = -m dx / H_y`; the blend
/// `m (conj(H_x) dy - conj(H_y) dx) / |∇H|^2` agrees with both and needs only
/// `∇H ≠ 0`.
pub fn gelfand_leray_derivative(m: &BiPoly, cycle: &Cycle) -> Result<Quadrature, PeriodError> {
    let curve = Curve::new(&cycle.h, cycle.t);
    let mn: NumPoly = m.to_numeric();
    integrate_along(cycle, 1e-13, (LOW_ORDER, HIGH_ORDER), |pt, v| {
        let g = curve.grad(pt);
        let g2 = g[0].norm_sqr() + g[1].norm_sqr();
        let scale = curve.scale(pt) / (1.0 + pt[0].norm() + pt[1].norm());
        if g2.sqrt() <= 1e-10 * scale {
            return Err(PeriodError::SingularDenominator(format!(
                "|grad H| = {:.3e} at ({:.6}, {:.6})",
                g2.sqrt(),
                pt[0],
                pt[1]
            )));
        }
        Ok(mn.eval(pt[0], pt[1]) * (g[0].conj() * v[1] - g[1].conj() * v[0]) / g2)
    })
}
