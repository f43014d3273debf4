use std::fmt;
use std::fs;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use pf_core::milnor::OracleOptions;
use pf_core::periods::PeriodSample;
use pf_core::system::{serialize_system, validate_system_with, Format};
use pf_core::{
    build_system, check_regular_at_infinity, classify_singularities, monomial_basis, parse_one_form,
    parse_polynomial, petrov_decompose, system_residual, trace_cycle, BiPoly, MilnorError, PeriodError, PfSystem,
    SystemError, TraceMode, TraceOptions,
};

use crate::args::{Command, Mode, OracleArgs, Output, SystemFormat, TraceArgs};
use crate::complex::{parse_complex, parse_point};

#[derive(Debug)]
pub enum Failure {
    /// Bad input: unparsable, not regular at infinity, invalid options.
    Input(String),
    /// The system or a numeric check did not validate.
    Validation(String),
    /// A numeric procedure failed on valid input.
    Numeric(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Validation(_) | Failure::Numeric(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Input(_) => "input",
            Failure::Validation(_) => "validation",
            Failure::Numeric(_) => "numeric",
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Validation(m) | Failure::Numeric(m) => f.write_str(m),
        }
    }
}

impl From<SystemError> for Failure {
    fn from(e: SystemError) -> Self {
        match e {
            SystemError::Milnor(MilnorError::NotRegular(_) | MilnorError::DegreeTooSmall(_)) => {
                Failure::Input(e.to_string())
            }
            other => Failure::Numeric(other.to_string()),
        }
    }
}

impl From<PeriodError> for Failure {
    fn from(e: PeriodError) -> Self {
        match e {
            PeriodError::CriticalLevel(_) | PeriodError::InvalidInput(_) => Failure::Input(e.to_string()),
            other => Failure::Numeric(other.to_string()),
        }
    }
}

fn hamiltonian(src: &str) -> Result<BiPoly, Failure> {
    parse_polynomial(src).map_err(|e| Failure::Input(format!("cannot parse H: {e}")))
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable output"));
}

fn build(src: &str) -> Result<PfSystem, Failure> {
    Ok(build_system(&hamiltonian(src)?)?)
}

fn trace_options(args: &TraceArgs, sys: &PfSystem) -> TraceOptions {
    TraceOptions {
        newton_tol: args.newton_tol,
        step: args.step,
        closure_tol: args.closure_tol,
        critical_tol: args.critical_tol,
        critical_values: Some(sys.critical_values.iter().map(|v| v.0).collect()),
        ..TraceOptions::default()
    }
}

fn trace_mode(args: &TraceArgs) -> Result<TraceMode, Failure> {
    Ok(match args.mode {
        Mode::RealOval => TraceMode::RealOval,
        Mode::XLoop => TraceMode::XLoop {
            center: parse_complex(&args.center).map_err(Failure::Input)?,
            turns: args.turns,
        },
    })
}

fn oracle(args: &OracleArgs) -> OracleOptions {
    OracleOptions {
        cluster_radius: args.cluster_radius,
    }
}

fn sample(sys: &PfSystem, t: Complex64, seed: [Complex64; 2], args: &TraceArgs) -> Result<(PeriodSample, pf_core::Cycle), Failure> {
    let cycle = trace_cycle(sys.hamiltonian(), t, seed, trace_mode(args)?, &trace_options(args, sys))?;
    let s = system_residual(sys, &cycle)?;
    Ok((s, cycle))
}

pub fn run(cmd: Command) -> Result<u8, Failure> {
    match cmd {
        Command::Check { hamiltonian: src } => {
            let h = hamiltonian(&src)?;
            let report = check_regular_at_infinity(&h).map_err(|e| Failure::Input(e.to_string()))?;
            print_json(&report);
            match report.reason {
                Some(reason) if !report.regular => Err(Failure::Input(format!("not regular at infinity: {reason}"))),
                _ => Ok(0),
            }
        }
        Command::Basis { hamiltonian: src, format } => {
            let basis = monomial_basis(&hamiltonian(&src)?).map_err(|e| Failure::from(SystemError::from(e)))?;
            match format {
                Output::Json => {
                    let entries: Vec<_> = basis
                        .monomials()
                        .iter()
                        .enumerate()
                        .map(|(i, m)| json!({"a": m.a, "b": m.b, "deg_form": basis.form_degree(i)}))
                        .collect();
                    print_json(&json!({
                        "hamiltonian": basis.hamiltonian().to_string(),
                        "n": basis.n(),
                        "mu": basis.mu(),
                        "kind": basis.kind(),
                        "basis": entries,
                    }));
                }
                Output::Text => {
                    println!("H = {}", basis.hamiltonian());
                    println!("n = {}, mu = {}, {:?} basis", basis.n(), basis.mu(), basis.kind());
                    for (i, m) in basis.monomials().iter().enumerate() {
                        println!("{i:>3}  {m}  primitive {}  deg {}", basis.primitives()[i], basis.form_degree(i));
                    }
                }
            }
            Ok(0)
        }
        Command::System {
            hamiltonian: src,
            format,
            out,
            no_validate,
            oracle: oargs,
        } => {
            let sys = build(&src)?;
            let report = (!no_validate).then(|| validate_system_with(&sys, &oracle(&oargs)));
            let fmt = match format {
                SystemFormat::Json => Format::Json,
                SystemFormat::Latex => Format::Latex,
                SystemFormat::Text => Format::Text,
            };
            let text = serialize_system(&sys, fmt, report.as_ref());
            match out {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            match report {
                Some(r) if !r.all_ok() => Err(Failure::Validation(format!("validation failed: {}", r.details.join("; ")))),
                _ => Ok(0),
            }
        }
        Command::Reduce { hamiltonian: src, form } => {
            let h = hamiltonian(&src)?;
            let w = parse_one_form(&form).map_err(|e| Failure::Input(format!("cannot parse form: {e}")))?;
            let basis = monomial_basis(&h).map_err(|e| Failure::from(SystemError::from(e)))?;
            let dec = petrov_decompose(&w, &basis).map_err(|e| Failure::Numeric(e.to_string()))?;
            let verified = dec.verify(&w, &basis);
            let coeffs: Vec<_> = basis
                .monomials()
                .iter()
                .zip(&dec.coeff_polys)
                .map(|(m, p)| json!({"a": m.a, "b": m.b, "p": p.to_string()}))
                .collect();
            print_json(&json!({
                "hamiltonian": h.to_string(),
                "form": {"P": w.p.to_string(), "Q": w.q.to_string()},
                "coefficients": coeffs,
                "witness_g": dec.witness_g.to_string(),
                "witness_f": dec.witness_f.to_string(),
                "verified": verified,
            }));
            if verified {
                Ok(0)
            } else {
                Err(Failure::Validation("certificate does not re-expand to the form".into()))
            }
        }
        Command::Verify {
            hamiltonian: src,
            numeric,
            t,
            seed,
            residual_tol,
            trace,
            oracle: oargs,
        } => {
            let sys = build(&src)?;
            let report = validate_system_with(&sys, &oracle(&oargs));
            let mut samples = Vec::new();
            let mut numeric_ok = true;
            if numeric {
                if t.is_empty() || seed.is_empty() {
                    return Err(Failure::Input("--numeric needs at least one --t and one --seed".into()));
                }
                if seed.len() != 1 && seed.len() != t.len() {
                    return Err(Failure::Input("give one --seed, or one per --t".into()));
                }
                for (k, tv) in t.iter().enumerate() {
                    let tv = parse_complex(tv).map_err(Failure::Input)?;
                    let sd = parse_point(&seed[if seed.len() == 1 { 0 } else { k }]).map_err(Failure::Input)?;
                    let (s, _) = sample(&sys, tv, sd, &trace)?;
                    numeric_ok &= s.residual < residual_tol;
                    samples.push(s);
                }
            }
            print_json(&json!({
                "hamiltonian": sys.hamiltonian().to_string(),
                "validation": report,
                "classification": classify_singularities(&sys),
                "numeric": samples,
                "residual_tol": residual_tol,
            }));
            if !report.all_ok() {
                Err(Failure::Validation(format!("validation failed: {}", report.details.join("; "))))
            } else if !numeric_ok {
                Err(Failure::Validation(format!("residual above {residual_tol:e}")))
            } else {
                Ok(0)
            }
        }
        Command::Periods {
            hamiltonian: src,
            t,
            seed,
            cycle_out,
            trace,
        } => {
            let sys = build(&src)?;
            let tv = parse_complex(&t).map_err(Failure::Input)?;
            let sd = parse_point(&seed).map_err(Failure::Input)?;
            let (s, cycle) = sample(&sys, tv, sd, &trace)?;
            if let Some(path) = cycle_out {
                fs::write(&path, cycle.to_json())
                    .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            }
            print_json(&json!({
                "hamiltonian": sys.hamiltonian().to_string(),
                "sample": s,
                "closure_error": cycle.closure_error,
                "samples_on_cycle": cycle.points.len(),
            }));
            Ok(0)
        }
    }
}
