use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{BiPoly, NumPoly, Var};
use crate::milnor::{critical_points_numeric, OracleOptions};
use crate::parse::parse_polynomial;

use super::PeriodError;

/// A point of `C^2`.
pub type Point = [Complex64; 2];

/// Closed sampled path on the level curve `{H = t}`.
#[derive(Clone, Debug)]
pub struct Cycle {
    pub h: BiPoly,
    pub t: Complex64,
    /// Samples in order; the last one repeats the first.
    pub points: Vec<Point>,
    pub closure_error: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TraceMode {
    /// Real closed component through the seed, traced counterclockwise
    /// (interior on the left of the direction `(-H_y, H_x)`).
    RealOval,
    /// `x` runs `turns` times around the circle centred at `center` through
    /// the seed's `x`, and `y` follows by continuation.
    XLoop { center: Complex64, turns: u32 },
}

#[derive(Clone, Debug)]
pub struct TraceOptions {
    pub newton_tol: f64,
    /// Largest arc-length step for real ovals.
    pub step: f64,
    pub min_step: f64,
    pub max_steps: usize,
    /// Largest turn of the tangent per step, in radians.
    pub max_angle: f64,
    pub closure_tol: f64,
    /// Levels this close (relative) to a critical value are refused.
    pub critical_tol: f64,
    /// Critical values to check against; computed from `H` when absent.
    pub critical_values: Option<Vec<Complex64>>,
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions {
            newton_tol: 1e-12,
            step: 0.05,
            min_step: 1e-10,
            max_steps: 1_000_000,
            max_angle: 0.05,
            closure_tol: 1e-8,
            critical_tol: 1e-6,
            critical_values: None,
        }
    }
}

pub(crate) struct Curve {
    pub h: NumPoly,
    pub hx: NumPoly,
    pub hy: NumPoly,
    pub t: Complex64,
}

impl Curve {
    pub fn new(h: &BiPoly, t: Complex64) -> Self {
        Curve {
            h: h.to_numeric(),
            hx: h.partial(Var::X).to_numeric(),
            hy: h.partial(Var::Y).to_numeric(),
            t,
        }
    }

    pub fn value(&self, p: Point) -> Complex64 {
        self.h.eval(p[0], p[1]) - self.t
    }

    pub fn grad(&self, p: Point) -> Point {
        [self.hx.eval(p[0], p[1]), self.hy.eval(p[0], p[1])]
    }

    /// Scale of the rounding error of `H(p) - t`.
    pub fn scale(&self, p: Point) -> f64 {
        1.0 + self.h.magnitude(p[0], p[1]) + self.t.norm()
    }

    /// Newton's method for `H(p + s n) = t` in the scalar `s`.
    pub fn project_along(&self, p: Point, n: Point, tol: f64) -> Option<Point> {
        let mut q = p;
        for _ in 0..30 {
            let f = self.value(q);
            if f.norm() <= tol * self.scale(q) {
                return Some(q);
            }
            let g = self.grad(q);
            let dfds = g[0] * n[0] + g[1] * n[1];
            if dfds.norm() == 0.0 {
                return None;
            }
            let s = f / dfds;
            q = [q[0] - s * n[0], q[1] - s * n[1]];
        }
        (self.value(q).norm() <= tol * self.scale(q) * 1e3).then_some(q)
    }
}

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn conj_grad(c: &Curve, p: Point) -> Point {
    let g = c.grad(p);
    [g[0].conj(), g[1].conj()]
}

/// Traces a closed cycle on `{H = t}` starting near `seed`.
pub fn trace_cycle(
    h: &BiPoly,
    t: Complex64,
    seed: Point,
    mode: TraceMode,
    opts: &TraceOptions,
) -> Result<Cycle, PeriodError> {
    let critical = match &opts.critical_values {
        Some(v) => v.clone(),
        None => critical_points_numeric(h, &OracleOptions::default())
            .map_err(|e| PeriodError::InvalidInput(e.to_string()))?
            .into_iter()
            .map(|p| p.value)
            .collect(),
    };
    if let Some(v) = critical
        .iter()
        .find(|v| (t - **v).norm() <= opts.critical_tol * (1.0 + v.norm()))
    {
        return Err(PeriodError::CriticalLevel(*v));
    }
    let curve = Curve::new(h, t);
    let points = match mode {
        TraceMode::RealOval => real_oval(&curve, seed, opts)?,
        TraceMode::XLoop { center, turns } => x_loop(&curve, seed, center, turns, opts)?,
    };
    let (points, closure_error) = points;
    Ok(Cycle {
        h: h.clone(),
        t,
        points,
        closure_error,
    })
}

/// Moves `seed` onto the real curve: directly by Newton if it is already
/// close, otherwise along the first ray on which `H - t` changes sign.
fn real_seed(c: &Curve, seed: [f64; 2], opts: &TraceOptions) -> Option<[f64; 2]> {
    let at = |p: [f64; 2]| c.value([real(p[0]), real(p[1])]).re;
    let grad = |p: [f64; 2]| {
        let g = c.grad([real(p[0]), real(p[1])]);
        [g[0].re, g[1].re]
    };
    let f0 = at(seed);
    let g0 = grad(seed);
    let gn = g0[0].hypot(g0[1]);
    let mut dirs = Vec::new();
    if gn > 1e-8 {
        let sgn = if f0 > 0.0 { -1.0 } else { 1.0 };
        dirs.push([sgn * g0[0] / gn, sgn * g0[1] / gn]);
    }
    for k in 0..8 {
        let a = k as f64 * TAU / 8.0;
        dirs.push([a.cos(), a.sin()]);
    }
    let reach = 1e3 * (1.0 + seed[0].hypot(seed[1]));
    for d in dirs {
        let mut lo = 0.0;
        let mut s = 1e-3;
        while s < reach {
            let f = at([seed[0] + s * d[0], seed[1] + s * d[1]]);
            if f0 == 0.0 || f.signum() != f0.signum() {
                let (mut a, mut b) = (lo, s);
                for _ in 0..200 {
                    let m = 0.5 * (a + b);
                    let fm = at([seed[0] + m * d[0], seed[1] + m * d[1]]);
                    if fm.signum() == f0.signum() && f0 != 0.0 {
                        a = m;
                    } else {
                        b = m;
                    }
                    if b - a <= 1e-15 * (1.0 + b) {
                        break;
                    }
                }
                let p = [seed[0] + b * d[0], seed[1] + b * d[1]];
                let q = c.project_along(
                    [real(p[0]), real(p[1])],
                    conj_grad(c, [real(p[0]), real(p[1])]),
                    opts.newton_tol,
                )?;
                return Some([q[0].re, q[1].re]);
            }
            lo = s;
            s *= 1.5;
        }
    }
    None
}

fn real_oval(c: &Curve, seed: Point, opts: &TraceOptions) -> Result<(Vec<Point>, f64), PeriodError> {
    if c.t.im != 0.0 || seed[0].im != 0.0 || seed[1].im != 0.0 {
        return Err(PeriodError::InvalidInput("real oval tracing needs a real level and seed".into()));
    }
    let p0 = real_seed(c, [seed[0].re, seed[1].re], opts)
        .ok_or_else(|| PeriodError::TraceDiverged("no real point of the level curve found from the seed".into()))?;
    let tangent = |p: [f64; 2]| -> Option<[f64; 2]> {
        let g = c.grad([real(p[0]), real(p[1])]);
        let n = g[0].re.hypot(g[1].re);
        (n > 0.0).then(|| [-g[1].re / n, g[0].re / n])
    };
    let correct = |q: [f64; 2]| -> Option<[f64; 2]> {
        let p = [real(q[0]), real(q[1])];
        let r = c.project_along(p, conj_grad(c, p), opts.newton_tol)?;
        Some([r[0].re, r[1].re])
    };
    let t0 = tangent(p0).ok_or_else(|| PeriodError::TraceDiverged("seed is a critical point".into()))?;
    let along = |p: [f64; 2]| (p[0] - p0[0]) * t0[0] + (p[1] - p0[1]) * t0[1];
    let dist = |p: [f64; 2]| (p[0] - p0[0]).hypot(p[1] - p0[1]);

    let mut pts = vec![p0];
    let mut p = p0;
    let mut h = opts.step;
    for _ in 0..opts.max_steps {
        let tan = tangent(p).ok_or_else(|| PeriodError::TraceDiverged("gradient vanished".into()))?;
        let candidate = correct([p[0] + h * tan[0], p[1] + h * tan[1]]).and_then(|q| {
            let tq = tangent(q)?;
            let cos = tq[0] * tan[0] + tq[1] * tan[1];
            let chord = dist2(p, q);
            (cos >= opts.max_angle.cos() && chord <= 2.0 * h && chord >= 0.25 * h).then_some(q)
        });
        let Some(q) = candidate else {
            h *= 0.5;
            if h < opts.min_step {
                return Err(PeriodError::TraceDiverged(format!(
                    "step size underflow near ({:.6}, {:.6})",
                    p[0], p[1]
                )));
            }
            continue;
        };
        if pts.len() >= 3 && along(p) < 0.0 && along(q) >= 0.0 && dist(q) <= 3.0 * h.max(dist2(p, q)) {
            let end = close_on_plane(c, p, q, p0, t0, opts.newton_tol);
            let err = end.map_or(f64::INFINITY, dist);
            if err > opts.closure_tol * (1.0 + p0[0].hypot(p0[1])) {
                return Err(PeriodError::NotClosed(err));
            }
            pts.push(p0);
            let out = pts.into_iter().map(|p| [real(p[0]), real(p[1])]).collect();
            return Ok((out, err));
        }
        pts.push(q);
        p = q;
        h = (h * 1.25).min(opts.step);
    }
    Err(PeriodError::TraceDiverged("step budget exhausted before the oval closed".into()))
}

fn dist2(p: [f64; 2], q: [f64; 2]) -> f64 {
    (p[0] - q[0]).hypot(p[1] - q[1])
}

/// Intersection of the curve with the line through `p0` normal to `t0`,
/// found by Newton from the chord `p q` that crosses it.
fn close_on_plane(c: &Curve, p: [f64; 2], q: [f64; 2], p0: [f64; 2], t0: [f64; 2], tol: f64) -> Option<[f64; 2]> {
    let sp = (p[0] - p0[0]) * t0[0] + (p[1] - p0[1]) * t0[1];
    let sq = (q[0] - p0[0]) * t0[0] + (q[1] - p0[1]) * t0[1];
    let a = sp / (sp - sq);
    let mut z = [p[0] + a * (q[0] - p[0]), p[1] + a * (q[1] - p[1])];
    for _ in 0..50 {
        let pc = [real(z[0]), real(z[1])];
        let f1 = c.value(pc).re;
        let f2 = (z[0] - p0[0]) * t0[0] + (z[1] - p0[1]) * t0[1];
        let g = c.grad(pc);
        let (j11, j12, j21, j22) = (g[0].re, g[1].re, t0[0], t0[1]);
        let det = j11 * j22 - j12 * j21;
        if det == 0.0 {
            return None;
        }
        let dx = (j22 * f1 - j12 * f2) / det;
        let dy = (j11 * f2 - j21 * f1) / det;
        z = [z[0] - dx, z[1] - dy];
        if dx.hypot(dy) <= 1e-3 * tol * (1.0 + z[0].hypot(z[1])) {
            break;
        }
    }
    Some(z)
}

fn x_loop(
    c: &Curve,
    seed: Point,
    center: Complex64,
    turns: u32,
    opts: &TraceOptions,
) -> Result<(Vec<Point>, f64), PeriodError> {
    let r = (seed[0] - center).norm();
    if r == 0.0 || turns == 0 {
        return Err(PeriodError::InvalidInput("x loop needs a positive radius and at least one turn".into()));
    }
    let theta0 = (seed[0] - center).arg();
    let newton_y = |x: Complex64, y: Complex64| -> Option<Complex64> {
        c.project_along([x, y], [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)], opts.newton_tol)
            .map(|p| p[1])
    };
    let y0 = newton_y(seed[0], seed[1])
        .ok_or_else(|| PeriodError::TraceDiverged("seed does not project onto the level curve".into()))?;
    let total = TAU * turns as f64;
    let max_dtheta = TAU / 128.0;
    let mut pts = vec![[seed[0], y0]];
    let (mut theta, mut dtheta) = (0.0, max_dtheta);
    let (mut x, mut y) = (seed[0], y0);
    let mut steps = 0;
    while theta < total {
        steps += 1;
        if steps > opts.max_steps {
            return Err(PeriodError::TraceDiverged("step budget exhausted along the x loop".into()));
        }
        let step = dtheta.min(total - theta);
        let xn = center + Complex64::from_polar(r, theta0 + theta + step);
        let g = c.grad([x, y]);
        if g[1].norm() <= 1e-300 {
            return Err(PeriodError::TraceDiverged("H_y vanished on the lift".into()));
        }
        let pred = y - g[0] / g[1] * (xn - x);
        let accepted = newton_y(xn, pred).filter(|yn| (yn - pred).norm() <= 0.1 * (pred - y).norm() + 1e-12 * (1.0 + yn.norm()));
        match accepted {
            Some(yn) => {
                x = xn;
                y = yn;
                pts.push([x, y]);
                theta += step;
                dtheta = (dtheta * 1.5).min(max_dtheta);
            }
            None => {
                dtheta *= 0.5;
                if dtheta < opts.min_step {
                    return Err(PeriodError::TraceDiverged(format!(
                        "lift failed near x = {x:.6}, likely a branch point"
                    )));
                }
            }
        }
    }
    let err = (y - y0).norm();
    if err > opts.closure_tol * (1.0 + y0.norm()) {
        return Err(PeriodError::NotClosed(err));
    }
    let last = pts.len() - 1;
    pts[last] = pts[0];
    Ok((pts, err))
}

#[derive(Serialize, Deserialize)]
struct SampleJson {
    x: [f64; 2],
    y: [f64; 2],
}

#[derive(Serialize, Deserialize)]
struct CycleJson {
    hamiltonian: String,
    t: [f64; 2],
    closure_error: f64,
    samples: Vec<SampleJson>,
}

impl Cycle {
    pub fn to_json(&self) -> String {
        let c = CycleJson {
            hamiltonian: self.h.to_string(),
            t: [self.t.re, self.t.im],
            closure_error: self.closure_error,
            samples: self
                .points
                .iter()
                .map(|p| SampleJson {
                    x: [p[0].re, p[0].im],
                    y: [p[1].re, p[1].im],
                })
                .collect(),
        };
        serde_json::to_string(&c).expect("cycle serializes")
    }

    pub fn from_json(src: &str) -> Result<Cycle, PeriodError> {
        let c: CycleJson = serde_json::from_str(src).map_err(|e| PeriodError::InvalidInput(e.to_string()))?;
        let h = parse_polynomial(&c.hamiltonian).map_err(|e| PeriodError::InvalidInput(e.to_string()))?;
        Ok(Cycle {
            h,
            t: Complex64::new(c.t[0], c.t[1]),
            closure_error: c.closure_error,
            points: c
                .samples
                .iter()
                .map(|s| [Complex64::new(s.x[0], s.x[1]), Complex64::new(s.y[0], s.y[1])])
                .collect(),
        })
    }

    /// Largest `|H - t|` over the samples.
    pub fn max_level_error(&self) -> f64 {
        let curve = Curve::new(&self.h, self.t);
        self.points.iter().map(|p| curve.value(*p).norm()).fold(0.0, f64::max)
    }
}
