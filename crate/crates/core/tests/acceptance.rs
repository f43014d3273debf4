//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use num_traits::Zero;
use pf_core::algebra::rational::{int, rat};
use pf_core::forms::wedge_with_dh;
use pf_core::milnor::{critical_points_numeric, critical_value_clusters, OracleOptions};
use pf_core::periods::integrate_form;
use pf_core::system::{expand_multiset, matching_error};
use pf_core::{
    build_system, check_regular_at_infinity, classify_singularities, monomial_basis, parse_polynomial,
    petrov_decompose, system_residual, trace_cycle, BiPoly, Monomial, OneForm, PfSystem, Rational, TraceMode,
    TraceOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const QUINTIC: &str = "x^5+y^5+x^2*y^2+x+y";
const FOLIUM: &str = "x^3+y^3-3xy";
const SPECTRUM_TOL: f64 = 1e-8;
const FOLIUM_RESIDUAL_TOL: f64 = 1e-6;
const CIRCLE_TOL: f64 = 1e-10;

type Outcome = Result<String, String>;

fn system(src: &str) -> PfSystem {
    build_system(&parse_polynomial(src).unwrap()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_poly(rng: &mut ChaCha8Rng, deg: u32) -> BiPoly {
    let mut p = BiPoly::zero();
    for m in Monomial::up_to_degree(deg) {
        let c: i64 = rng.gen_range(-5..=5);
        if c != 0 {
            p.add_term(m, int(c));
        }
    }
    p
}

/// Random H of the given degree whose critical points are all nondegenerate
/// with distinct values, as seen by the numeric oracle.
fn random_morse_plus(rng: &mut ChaCha8Rng, deg: u32) -> BiPoly {
    loop {
        let h = random_poly(rng, deg);
        if !check_regular_at_infinity(&h).map(|r| r.regular).unwrap_or(false) {
            continue;
        }
        let Ok(points) = critical_points_numeric(&h, &OracleOptions::default()) else {
            continue;
        };
        let mu = ((deg - 1) * (deg - 1)) as usize;
        let values = critical_value_clusters(&points, 1e-6);
        if points.len() == mu && values.len() == mu {
            return h;
        }
    }
}

fn random_regular(rng: &mut ChaCha8Rng, deg: u32) -> BiPoly {
    loop {
        let h = random_poly(rng, deg);
        if check_regular_at_infinity(&h).map(|r| r.regular).unwrap_or(false) {
            return h;
        }
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let sys = system(QUINTIC);
    let elapsed = start.elapsed().as_secs_f64();
    let b = &sys.basis;
    let grid: Vec<Monomial> = (0..4).flat_map(|a| (0..4).map(move |c| Monomial::new(a, c))).collect();
    let mut sorted = grid.clone();
    sorted.sort();
    ensure(b.monomials() == sorted.as_slice(), || "basis is not the 4x4 grid in graded order".into())?;
    let row = b.index_of(Monomial::new(3, 3)).unwrap();
    let col = b.index_of(Monomial::ONE).unwrap();
    for j in 0..sys.mu() {
        let expected = if j == col { rat(1, 175) } else { int(0) };
        ensure(sys.b1[(row, j)] == expected, || format!("B1[w33, {}] = {}", b.monomials()[j], sys.b1[(row, j)]))?;
    }
    for (i, m) in b.monomials().iter().enumerate() {
        let expected = rat((m.a + m.b + 2) as i64, 5);
        ensure(sys.b0[(i, i)] == expected, || format!("B0 diagonal at {m} is {}", sys.b0[(i, i)]))?;
    }
    ensure((&sys.b1 * &sys.b1).is_zero(), || "B1^2 != 0".into())?;
    ensure(elapsed < 30.0, || format!("build took {elapsed:.1} s"))?;
    Ok(format!("B1[w33,w00] = 1/175, row otherwise zero, B0 diag (i+j+2)/5, B1^2 = 0, built in {elapsed:.2} s"))
}

fn certificates_exact(sys: &PfSystem) -> Result<(), String> {
    let b = &sys.basis;
    let h = b.hamiltonian();
    for i in 0..sys.mu() {
        let mut rest = &h.mul_monomial(b.monomials()[i]) - &wedge_with_dh(h, &sys.etas[i]).f;
        for (j, m) in b.monomials().iter().enumerate() {
            rest.add_term(*m, -sys.a[(i, j)].clone());
        }
        ensure(rest.is_zero(), || format!("division identity for row {i} of {h} leaves {rest}"))?;

        let cert = &sys.certificates[i];
        let mut expansion = OneForm::exact(&cert.witness_f);
        expansion = &expansion + &OneForm::new(&cert.witness_g * b.hx(), &cert.witness_g * b.hy());
        for j in 0..sys.mu() {
            let w = &b.primitives()[j];
            expansion = &expansion + &w.scale(&sys.b0[(i, j)]);
            expansion = &expansion + &w.mul_poly(h).scale(&sys.b1[(i, j)]);
        }
        ensure(expansion == sys.etas[i], || format!("Petrov certificate for row {i} of {h} fails"))?;
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut hs = vec![parse_polynomial(QUINTIC).unwrap()];
    for deg in [3, 3, 3, 3, 3, 4, 4, 4, 4, 4] {
        hs.push(random_morse_plus(&mut rng, deg));
    }
    let mut rows = 0;
    for h in &hs {
        let sys = build_system(h).map_err(|e| format!("{h}: {e}"))?;
        certificates_exact(&sys)?;
        rows += sys.mu();
    }
    Ok(format!("{} Hamiltonians, {rows} rows, all identities exact", hs.len()))
}

fn criterion_3() -> Outcome {
    let mut worst: f64 = 0.0;
    for src in [QUINTIC, FOLIUM] {
        let sys = system(src);
        let points = critical_points_numeric(sys.hamiltonian(), &OracleOptions::default()).map_err(|e| e.to_string())?;
        let oracle: Vec<Complex64> = points
            .iter()
            .flat_map(|p| std::iter::repeat_n(p.value, p.multiplicity))
            .collect();
        let eig = expand_multiset(&sys.critical_values);
        ensure(eig.len() == sys.mu(), || format!("{src}: {} eigenvalues", eig.len()))?;
        let err = matching_error(&eig, &oracle).ok_or_else(|| format!("{src}: oracle found {} values", oracle.len()))?;
        ensure(err <= SPECTRUM_TOL, || format!("{src}: matching error {err:.3e}"))?;
        worst = worst.max(err);
    }
    let folium = expand_multiset(&system(FOLIUM).critical_values);
    let expected = [0.0, -1.0, -1.0, -1.0].map(|v| Complex64::new(v, 0.0));
    let err = matching_error(&folium, &expected).unwrap();
    ensure(err <= SPECTRUM_TOL, || format!("folium spectrum off by {err:.3e}"))?;
    Ok(format!("quintic (16) and folium {{0,-1,-1,-1}} match the oracle, worst {worst:.1e}"))
}

fn criterion_4() -> Outcome {
    for src in ["x^2+y^2", "x^3+y^3", "x^4+y^4"] {
        let sys = system(src);
        ensure(sys.a.is_zero(), || format!("{src}: A != 0"))?;
        ensure(sys.b1.is_zero(), || format!("{src}: B1 != 0"))?;
        let n1 = (sys.basis.n() + 1) as i64;
        for i in 0..sys.mu() {
            for j in 0..sys.mu() {
                let expected = if i == j {
                    rat(sys.basis.form_degree(i) as i64, n1)
                } else {
                    Rational::zero()
                };
                ensure(sys.b0[(i, j)] == expected, || format!("{src}: B0[{i},{j}] = {}", sys.b0[(i, j)]))?;
            }
        }
    }
    Ok("A = 0, B1 = 0, B0 = diag(deg w_i/(n+1)) for x^2+y^2, x^3+y^3, x^4+y^4".into())
}

fn random_form(rng: &mut ChaCha8Rng, max_form_deg: u32) -> OneForm {
    let deg = rng.gen_range(1..=max_form_deg);
    let mut sparse = |d: u32| {
        let mut p = BiPoly::zero();
        for m in Monomial::up_to_degree(d - 1) {
            if rng.gen_bool(0.35) {
                p.add_term(m, int(rng.gen_range(-7..=7)));
            }
        }
        p
    };
    OneForm::new(sparse(deg), sparse(deg))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let hs: Vec<BiPoly> = [3, 3, 3, 4, 4].iter().map(|&d| random_regular(&mut rng, d)).collect();
    let mut count = 0;
    for h in &hs {
        let basis = monomial_basis(h).map_err(|e| e.to_string())?;
        let n = basis.n();
        for _ in 0..40 {
            let w = random_form(&mut rng, 3 * (n + 1));
            let dec = petrov_decompose(&w, &basis).map_err(|e| format!("{h}: {e}"))?;
            ensure(dec.verify(&w, &basis), || format!("{h}: certificate fails for {w}"))?;
            if let Some(d) = w.degree() {
                for (i, p) in dec.coeff_polys.iter().enumerate() {
                    if let Some(k) = p.degree() {
                        ensure((n + 1) * k as u32 + basis.form_degree(i) <= d, || {
                            format!("{h}: degree bound fails on w_{i} for {w}")
                        })?;
                    }
                }
            }
            let g = random_poly(&mut rng, 3);
            let f = random_poly(&mut rng, 5);
            let moved = &(&w + &OneForm::exact(&f)) + &OneForm::new(&g * basis.hx(), &g * basis.hy());
            let again = petrov_decompose(&moved, &basis).map_err(|e| e.to_string())?;
            ensure(again.coeff_polys == dec.coeff_polys, || format!("{h}: class changed under g dH + df"))?;
            count += 1;
        }
    }
    Ok(format!("{count} forms over {} Hamiltonians: bounds hold, coefficients class-invariant", hs.len()))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let opts = TraceOptions::default();
    let c = |v: f64| Complex64::new(v, 0.0);

    let folium = system(FOLIUM);
    let mut worst: f64 = 0.0;
    for t in [-0.9, -0.7, -0.5, -0.3, -0.1] {
        let cycle = trace_cycle(folium.hamiltonian(), c(t), [c(1.0), c(1.0)], TraceMode::RealOval, &opts)
            .map_err(|e| format!("t = {t}: {e}"))?;
        let s = system_residual(&folium, &cycle).map_err(|e| e.to_string())?;
        ensure(s.residual < FOLIUM_RESIDUAL_TOL, || format!("folium residual {:.3e} at t = {t}", s.residual))?;
        worst = worst.max(s.residual);
    }

    let circle = system("x^2+y^2");
    let cycle = trace_cycle(circle.hamiltonian(), c(1.0), [c(1.0), c(0.0)], TraceMode::RealOval, &opts)
        .map_err(|e| e.to_string())?;
    let period = integrate_form(&circle.basis.primitives()[0], &cycle).map_err(|e| e.to_string())?.value;
    ensure((period - PI).norm() < CIRCLE_TOL, || format!("circle period {period}"))?;
    let s = system_residual(&circle, &cycle).map_err(|e| e.to_string())?;
    ensure(s.residual < CIRCLE_TOL, || format!("circle residual {:.3e}", s.residual))?;
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 60.0, || format!("took {elapsed:.1} s"))?;
    Ok(format!(
        "folium worst residual {worst:.1e}; circle period error {:.1e}, residual {:.1e}; {elapsed:.2} s",
        (period - PI).norm(),
        s.residual
    ))
}

fn criterion_7() -> Outcome {
    for (src, top) in [("y^2+x^3-x", "x^3"), ("y^2+x^4-x^2", "x^4")] {
        let r = check_regular_at_infinity(&parse_polynomial(src).unwrap()).map_err(|e| e.to_string())?;
        let expected = format!("highest homogeneous part {top} has a repeated factor");
        ensure(!r.regular, || format!("{src} accepted"))?;
        ensure(r.reason.as_deref() == Some(expected.as_str()), || format!("{src}: reason {:?}", r.reason))?;
    }
    Ok("y^2+x^3-x and y^2+x^4-x^2 rejected with the repeated-factor reason".into())
}

fn criterion_8() -> Outcome {
    let q = classify_singularities(&system(QUINTIC));
    ensure(!q.infinity_fuchsian_form, || "quintic reported Fuchsian at infinity".into())?;
    for src in ["x^2+y^2", "x^3+y^3", "x^4+y^4"] {
        let c = classify_singularities(&system(src));
        ensure(c.infinity_fuchsian_form, || format!("{src}: B1 != 0"))?;
    }
    Ok(format!(
        "quintic non-Fuchsian at infinity (finite singularities Fuchsian: {}); homogeneous cases have B1 = 0",
        q.finite_fuchsian
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("golden quintic system", criterion_1),
        ("exact certificates", criterion_2),
        ("spectrum oracle", criterion_3),
        ("homogeneous degeneration", criterion_4),
        ("degree-bound property suite", criterion_5),
        ("numeric end-to-end", criterion_6),
        ("rejection", criterion_7),
        ("singularity classification", criterion_8),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(msg) => println!("criterion {}: PASS  {name}: {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {msg}", k + 1);
            }
        }
    }
    println!("acceptance: {}/{} passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
