use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::rational::{rat, to_f64};
use crate::algebra::resultant::coefficients_in;
use crate::algebra::roots::{complex_roots, real_poly_roots};
use crate::algebra::{resultant, BiPoly, NumPoly, Rational, Var};

use super::{check_regular_at_infinity, MilnorError};

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    /// Two critical values closer than this (relative to `1 + |v|`) are
    /// reported as one.
    pub cluster_radius: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { cluster_radius: 1e-6 }
    }
}

/// A complex critical point of `H` with its Milnor number.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CriticalPoint {
    pub x: Complex64,
    pub y: Complex64,
    pub value: Complex64,
    pub multiplicity: usize,
}

const SHEARS: [(i64, i64); 14] = [
    (0, 1),
    (1, 1),
    (-1, 1),
    (2, 1),
    (-2, 1),
    (1, 2),
    (-1, 2),
    (3, 1),
    (-3, 1),
    (1, 3),
    (2, 3),
    (-3, 2),
    (5, 7),
    (-7, 5),
];

/// Complex critical points of `H` computed without the Milnor algebra.
///
/// After a shear `x -> x + s y` the resultant `Res_y(G_x, G_y)` has degree
/// `mu` and distinct critical points have distinct `x` coordinates. Each root
/// `x0` of the squarefree part of multiplicity `k` carries exactly one
/// critical point, of Milnor number `k`. Shears are retried until both
/// conditions hold.
pub fn critical_points_numeric(h: &BiPoly, opts: &OracleOptions) -> Result<Vec<CriticalPoint>, MilnorError> {
    let report = check_regular_at_infinity(h)?;
    if !report.regular {
        return Err(MilnorError::NotRegular(report.reason.unwrap_or_default()));
    }
    let mu = report.mu.unwrap_or(0) as usize;
    let hn = h.to_numeric();
    for &(p, q) in &SHEARS {
        let s = rat(p, q);
        if let Some(points) = try_shear(h, &s, mu) {
            return Ok(points
                .into_iter()
                .map(|(x, y, k)| CriticalPoint {
                    x,
                    y,
                    value: hn.eval(x, y),
                    multiplicity: k,
                })
                .collect());
        }
    }
    let _ = opts;
    Err(MilnorError::NumericalFailure(
        "no shear separated the critical points".into(),
    ))
}

fn try_shear(h: &BiPoly, s: &Rational, mu: usize) -> Option<Vec<(Complex64, Complex64, usize)>> {
    let g = h.shear_x(s);
    let gx = g.partial(Var::X);
    let gy = g.partial(Var::Y);
    let res = resultant(&gx, &gy, Var::Y).ok()?;
    if res.degree()? != mu {
        return None;
    }
    let (ngx, ngy) = (gx.to_numeric(), gy.to_numeric());
    let (cx, cy) = (coefficients_in(&gx, Var::Y), coefficients_in(&gy, Var::Y));
    let sf = to_f64(s);
    let mut out = Vec::with_capacity(mu);
    let mut total = 0;
    for (factor, k) in res.squarefree_decomposition() {
        if factor.degree().unwrap_or(0) == 0 {
            continue;
        }
        for x0 in real_poly_roots(&factor) {
            let y0 = lift(x0, &cx, &cy, &ngx, &ngy)?;
            let (x1, y1) = if k == 1 { newton(&g, x0, y0) } else { (x0, y0) };
            out.push((x1 + y1 * sf, y1, k));
            total += k;
        }
    }
    (total == mu).then_some(out)
}

/// Unique `y` with `G_x(x0, y) = G_y(x0, y) = 0`, if there is exactly one.
fn lift(
    x0: Complex64,
    cx: &[crate::algebra::UniPoly],
    cy: &[crate::algebra::UniPoly],
    ngx: &NumPoly,
    ngy: &NumPoly,
) -> Option<Complex64> {
    let mut candidates = Vec::new();
    for coeffs in [cx, cy] {
        let c: Vec<Complex64> = coeffs.iter().map(|u| u.eval_complex(x0)).collect();
        candidates.extend(complex_roots(&c));
    }
    let accepted: Vec<Complex64> = candidates
        .into_iter()
        .filter(|&y| {
            let r = ngx.eval(x0, y).norm() / (1.0 + ngx.magnitude(x0, y))
                + ngy.eval(x0, y).norm() / (1.0 + ngy.magnitude(x0, y));
            r < 1e-6
        })
        .collect();
    let first = *accepted.first()?;
    let spread = 1e-3 * (1.0 + first.norm());
    if accepted.iter().any(|y| (y - first).norm() > spread) {
        return None;
    }
    Some(accepted.iter().sum::<Complex64>() / accepted.len() as f64)
}

fn newton(g: &BiPoly, mut x: Complex64, mut y: Complex64) -> (Complex64, Complex64) {
    let gx = g.partial(Var::X);
    let gy = g.partial(Var::Y);
    let (f1, f2) = (gx.to_numeric(), gy.to_numeric());
    let (h11, h12, h22) = (
        gx.partial(Var::X).to_numeric(),
        gx.partial(Var::Y).to_numeric(),
        gy.partial(Var::Y).to_numeric(),
    );
    for _ in 0..8 {
        let (a, b) = (f1.eval(x, y), f2.eval(x, y));
        let (p, q, r) = (h11.eval(x, y), h12.eval(x, y), h22.eval(x, y));
        let det = p * r - q * q;
        if det.norm() == 0.0 {
            break;
        }
        let dx = (r * a - q * b) / det;
        let dy = (p * b - q * a) / det;
        x -= dx;
        y -= dy;
        if dx.norm() + dy.norm() <= 1e-15 * (1.0 + x.norm() + y.norm()) {
            break;
        }
    }
    (x, y)
}

/// Groups critical values that agree up to `radius * (1 + |v|)`, summing
/// Milnor numbers. Order follows first appearance.
pub fn critical_value_clusters(points: &[CriticalPoint], radius: f64) -> Vec<(Complex64, usize)> {
    let mut clusters: Vec<(Complex64, usize, usize)> = Vec::new();
    for p in points {
        match clusters
            .iter_mut()
            .find(|(v, _, n)| (*v / *n as f64 - p.value).norm() <= radius * (1.0 + p.value.norm()))
        {
            Some(c) => {
                c.0 += p.value;
                c.1 += p.multiplicity;
                c.2 += 1;
            }
            None => clusters.push((p.value, p.multiplicity, 1)),
        }
    }
    clusters
        .into_iter()
        .map(|(sum, k, n)| (sum / n as f64, k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn values(src: &str) -> Vec<(Complex64, usize)> {
        let h = parse_polynomial(src).unwrap();
        let pts = critical_points_numeric(&h, &OracleOptions::default()).unwrap();
        let mut v = critical_value_clusters(&pts, 1e-6);
        v.sort_by(|a, b| a.0.re.total_cmp(&b.0.re));
        v
    }

    #[test]
    fn folium_values() {
        let v = values("x^3+y^3-3xy");
        assert_eq!(v.len(), 2);
        assert!((v[0].0 + 1.0).norm() < 1e-10 && v[0].1 == 3);
        assert!(v[1].0.norm() < 1e-10 && v[1].1 == 1);
    }

    #[test]
    fn homogeneous_point_is_degenerate() {
        let v = values("x^4+y^4");
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].1, 9);
        assert!(v[0].0.norm() < 1e-8);
    }

    #[test]
    fn points_are_critical() {
        let h = parse_polynomial("x^5+y^5+x^2*y^2+x+y").unwrap();
        let pts = critical_points_numeric(&h, &OracleOptions::default()).unwrap();
        assert_eq!(pts.iter().map(|p| p.multiplicity).sum::<usize>(), 16);
        let (hx, hy) = (h.partial(Var::X).to_numeric(), h.partial(Var::Y).to_numeric());
        for p in &pts {
            assert!(hx.eval(p.x, p.y).norm() < 1e-9 * (1.0 + hx.magnitude(p.x, p.y)));
            assert!(hy.eval(p.x, p.y).norm() < 1e-9 * (1.0 + hy.magnitude(p.x, p.y)));
        }
    }

    #[test]
    fn shared_x_coordinate_needs_shear() {
        // critical points (±1, ±1) pair up on vertical lines
        let v = values("x^3 - 3x + y^3 - 3y");
        let re: Vec<f64> = v.iter().map(|c| c.0.re).collect();
        assert_eq!(v.iter().map(|c| c.1).collect::<Vec<_>>(), vec![1, 2, 1]);
        assert!((re[0] + 4.0).abs() < 1e-10 && re[1].abs() < 1e-10 && (re[2] - 4.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_irregular() {
        let h = parse_polynomial("y^2 + x^3 - x").unwrap();
        assert!(matches!(
            critical_points_numeric(&h, &OracleOptions::default()),
            Err(MilnorError::NotRegular(_))
        ));
    }
}
