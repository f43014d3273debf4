//! Numeric periods: cycles on level curves, quadrature of 1-forms along
//! them, Gelfand-Leray derivatives, and residuals of a built system.

mod cycle;
mod quadrature;

pub use cycle::{trace_cycle, Cycle, Point, TraceMode, TraceOptions};
pub use quadrature::{gelfand_leray_derivative, integrate_form, integrate_form_with_orders, Quadrature};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::rational::to_f64;
use crate::algebra::RatMatrix;
use crate::system::PfSystem;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PeriodError {
    #[error("level t is a critical value ({0})")]
    CriticalLevel(Complex64),
    #[error("trace diverged: {0}")]
    TraceDiverged(String),
    #[error("cycle did not close (gap {0:.3e}); iterate the loop")]
    NotClosed(f64),
    #[error("singular denominator: {0}")]
    SingularDenominator(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// One column of the period matrix and its derivative at a level `t`.
#[derive(Clone, Debug, Serialize)]
pub struct PeriodSample {
    pub t: Complex64,
    #[serde(rename = "I")]
    pub periods: Vec<Complex64>,
    #[serde(rename = "Idot")]
    pub derivatives: Vec<Complex64>,
    /// `|(t - A) İ - (B0 + t B1) I|_inf / max(1, |I|_inf)`.
    pub residual: f64,
    /// Sum of the quadrature error estimates.
    pub quadrature_error: f64,
}

fn to_complex(m: &RatMatrix) -> Vec<Vec<Complex64>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|q| Complex64::new(to_f64(q), 0.0)).collect())
        .collect()
}

/// Residual of `(t - A) İ = (B0 + t B1) I` for the given matrices.
pub fn residual_of(
    a: &RatMatrix,
    b0: &RatMatrix,
    b1: &RatMatrix,
    t: Complex64,
    periods: &[Complex64],
    derivatives: &[Complex64],
) -> f64 {
    let (a, b0, b1) = (to_complex(a), to_complex(b0), to_complex(b1));
    let mu = periods.len();
    let mut worst: f64 = 0.0;
    for i in 0..mu {
        let mut lhs = t * derivatives[i];
        let mut rhs = Complex64::new(0.0, 0.0);
        for j in 0..mu {
            lhs -= a[i][j] * derivatives[j];
            rhs += (b0[i][j] + t * b1[i][j]) * periods[j];
        }
        worst = worst.max((lhs - rhs).norm());
    }
    let scale = periods.iter().map(|z| z.norm()).fold(1.0, f64::max);
    worst / scale
}

/// Evaluates the system on one traced cycle.
pub fn system_residual(sys: &PfSystem, cycle: &Cycle) -> Result<PeriodSample, PeriodError> {
    let basis = &sys.basis;
    let cols: Result<Vec<(Quadrature, Quadrature)>, PeriodError> = (0..sys.mu())
        .into_par_iter()
        .map(|i| {
            Ok((
                integrate_form(&basis.primitives()[i], cycle)?,
                gelfand_leray_derivative(&crate::BiPoly::monomial(basis.monomials()[i]), cycle)?,
            ))
        })
        .collect();
    let cols = cols?;
    let periods: Vec<Complex64> = cols.iter().map(|c| c.0.value).collect();
    let derivatives: Vec<Complex64> = cols.iter().map(|c| c.1.value).collect();
    let quadrature_error = cols.iter().map(|c| c.0.error + c.1.error).sum();
    let residual = residual_of(&sys.a, &sys.b0, &sys.b1, cycle.t, &periods, &derivatives);
    Ok(PeriodSample {
        t: cycle.t,
        periods,
        derivatives,
        residual,
        quadrature_error,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExponentFit {
    pub form: usize,
    /// Least-squares slope of `log |I_i|` against `log |t|`; `None` when the
    /// period vanishes numerically on the family.
    pub fitted: Option<f64>,
    pub expected: f64,
}

/// Fits the growth exponent of each period over a family of cycles at
/// increasing `|t|` and pairs it with `d_i = deg ω_i / (n + 1)`.
pub fn asymptotic_exponent_check(sys: &PfSystem, cycles: &[Cycle]) -> Result<Vec<ExponentFit>, PeriodError> {
    if cycles.len() < 2 {
        return Err(PeriodError::InvalidInput("need at least two cycles".into()));
    }
    let periods: Result<Vec<Vec<Complex64>>, PeriodError> = cycles
        .par_iter()
        .map(|c| {
            sys.basis
                .primitives()
                .iter()
                .map(|w| integrate_form(w, c).map(|q| q.value))
                .collect()
        })
        .collect();
    let periods = periods?;
    let logt: Vec<f64> = cycles.iter().map(|c| c.t.norm().ln()).collect();
    Ok((0..sys.mu())
        .map(|i| {
            let mags: Vec<f64> = periods.iter().map(|p| p[i].norm()).collect();
            // periods cancelled by a symmetry of H are pure rounding noise
            let negligible = periods.iter().zip(&mags).any(|(p, &m)| {
                let scale = p.iter().map(|z| z.norm()).fold(0.0, f64::max);
                m <= 1e-8 * scale || m == 0.0
            });
            let fitted = (!negligible).then(|| {
                let ys: Vec<f64> = mags.iter().map(|m| m.ln()).collect();
                slope(&logt, &ys)
            });
            ExponentFit {
                form: i,
                fitted,
                expected: to_f64(&sys.d[i]),
            }
        })
        .collect())
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
