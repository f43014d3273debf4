//! Numeric roots of univariate polynomials in double precision.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::upoly::UniPoly;

/// All complex roots of `sum coeffs[k] z^k` (lowest degree first).
///
/// Initial approximations are eigenvalues of the companion matrix; they are
/// then refined with simultaneous Aberth-Ehrlich iterations on the original
/// coefficients. Leading coefficients below `1e-14` relative to the largest
/// are treated as zero.
pub fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    let mut n = coeffs.len();
    while n > 0 && coeffs[n - 1].norm() <= 1e-14 * scale {
        n -= 1;
    }
    let coeffs = &coeffs[..n];
    let deg = n.saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let mut companion = DMatrix::<Complex64>::zeros(deg, deg);
    for i in 1..deg {
        companion[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for k in 0..deg {
        companion[(k, deg - 1)] = -coeffs[k] / lead;
    }
    let mut roots: Vec<Complex64> = match companion.clone().try_schur(f64::EPSILON, 10_000) {
        Some(s) => match s.eigenvalues() {
            Some(ev) => ev.iter().copied().collect(),
            None => fallback_guess(coeffs),
        },
        None => fallback_guess(coeffs),
    };
    aberth(coeffs, &mut roots, 50);
    roots
}

pub fn real_poly_roots(p: &UniPoly) -> Vec<Complex64> {
    let c: Vec<Complex64> = p
        .to_f64_coeffs()
        .into_iter()
        .map(|v| Complex64::new(v, 0.0))
        .collect();
    complex_roots(&c)
}

fn fallback_guess(coeffs: &[Complex64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg].norm();
    // Cauchy bound on root moduli.
    let r = 1.0 + coeffs[..deg].iter().map(|c| c.norm() / lead).fold(0.0, f64::max);
    (0..deg)
        .map(|k| Complex64::from_polar(r, 0.4 + std::f64::consts::TAU * k as f64 / deg as f64))
        .collect()
}

fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn aberth(coeffs: &[Complex64], roots: &mut [Complex64], iters: usize) {
    let n = roots.len();
    for _ in 0..iters {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let z = roots[i];
            let (p, dp) = eval_with_derivative(coeffs, z);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for (j, &w) in roots.iter().enumerate() {
                if j != i {
                    let d = z - w;
                    if d.norm() > 0.0 {
                        s += d.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - ratio * s;
            let step = if denom.norm() > 0.0 { ratio / denom } else { ratio };
            if step.is_finite() {
                roots[i] = z - step;
                max_step = max_step.max(step.norm() / (1.0 + z.norm()));
            }
        }
        if max_step < 1e-16 {
            break;
        }
    }
}
