use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::rational::{format_rational, parse_rational};
use crate::algebra::{RatMatrix, Rational};

use super::{classify_singularities, Classification, PfSystem, ValidationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Latex,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format '{other}' (expected json, latex or text)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub a: u32,
    pub b: u32,
    pub deg_form: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalValueEntry {
    pub re: f64,
    pub im: f64,
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationEntry {
    pub finite_fuchsian: bool,
    pub infinity_fuchsian_form: bool,
}

/// JSON image of a system; rationals are `"p/q"` strings, matrices row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SerializedSystem {
    pub hamiltonian: String,
    pub n: u32,
    pub mu: usize,
    pub basis: Vec<BasisEntry>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    #[serde(rename = "B0")]
    pub b0: Vec<Vec<String>>,
    #[serde(rename = "B1")]
    pub b1: Vec<Vec<String>>,
    #[serde(rename = "D")]
    pub d: Vec<String>,
    pub critical_values: Vec<CriticalValueEntry>,
    pub classification: ClassificationEntry,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<serde_json::Value>,
}

impl SerializedSystem {
    pub fn from_system(sys: &PfSystem, validation: Option<&ValidationReport>) -> Self {
        let Classification {
            finite_fuchsian,
            infinity_fuchsian_form,
            ..
        } = classify_singularities(sys);
        let basis = &sys.basis;
        SerializedSystem {
            hamiltonian: basis.hamiltonian().to_string(),
            n: basis.n(),
            mu: basis.mu(),
            basis: basis
                .monomials()
                .iter()
                .enumerate()
                .map(|(i, m)| BasisEntry {
                    a: m.a,
                    b: m.b,
                    deg_form: basis.form_degree(i),
                })
                .collect(),
            a: matrix_strings(&sys.a),
            b0: matrix_strings(&sys.b0),
            b1: matrix_strings(&sys.b1),
            d: sys.d.iter().map(format_rational).collect(),
            critical_values: sys
                .critical_values
                .iter()
                .map(|(z, k)| CriticalValueEntry {
                    re: z.re,
                    im: z.im,
                    mult: *k,
                })
                .collect(),
            classification: ClassificationEntry {
                finite_fuchsian,
                infinity_fuchsian_form,
            },
            validation: validation.map(|v| serde_json::to_value(v).expect("report serializes")),
        }
    }

    /// The exact matrices `(A, B0, B1)`.
    pub fn matrices(&self) -> Result<(RatMatrix, RatMatrix, RatMatrix), String> {
        Ok((parse_matrix(&self.a)?, parse_matrix(&self.b0)?, parse_matrix(&self.b1)?))
    }
}

fn matrix_strings(m: &RatMatrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect()
}

fn parse_matrix(rows: &[Vec<String>]) -> Result<RatMatrix, String> {
    let parsed: Result<Vec<Vec<Rational>>, String> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| parse_rational(s).ok_or_else(|| format!("invalid rational '{s}'")))
                .collect()
        })
        .collect();
    RatMatrix::from_rows(parsed?).map_err(|e| e.to_string())
}

pub fn parse_system_json(src: &str) -> Result<SerializedSystem, serde_json::Error> {
    serde_json::from_str(src)
}

/// Renders `sys` deterministically in the requested format.
pub fn serialize_system(sys: &PfSystem, format: Format, validation: Option<&ValidationReport>) -> String {
    match format {
        Format::Json => {
            let s = SerializedSystem::from_system(sys, validation);
            let mut out = serde_json::to_string_pretty(&s).expect("system serializes");
            out.push('\n');
            out
        }
        Format::Latex => latex(sys),
        Format::Text => text(sys, validation),
    }
}

fn latex_rational(q: &Rational) -> String {
    if q.denom() == &1.into() {
        q.numer().to_string()
    } else {
        let sign = if q.numer() < &0.into() { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", q.numer().magnitude(), q.denom())
    }
}

fn latex_matrix(m: &RatMatrix) -> String {
    let mut s = String::from("\\begin{pmatrix}\n");
    for (i, row) in m.to_rows().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(latex_rational).collect();
        s.push_str(&cells.join(" & "));
        if i + 1 < m.rows() {
            s.push_str(" \\\\");
        }
        s.push('\n');
    }
    s.push_str("\\end{pmatrix}");
    s
}

fn latex(sys: &PfSystem) -> String {
    let basis = &sys.basis;
    let mut s = String::new();
    let _ = writeln!(s, "% H = {}", basis.hamiltonian());
    let forms: Vec<String> = basis.monomials().iter().map(|m| format!("{m}")).collect();
    let _ = writeln!(s, "% d omega_i = m_i dx dy, m = ({})", forms.join(", "));
    s.push_str("\\[\n(t - A)\\dot X = (B_0 + B_1 t) X\n\\]\n");
    for (name, m) in [("A", &sys.a), ("B_0", &sys.b0), ("B_1", &sys.b1)] {
        let _ = writeln!(s, "\\[\n{name} = {}\n\\]", latex_matrix(m));
    }
    s
}

fn text(sys: &PfSystem, validation: Option<&ValidationReport>) -> String {
    let basis = &sys.basis;
    let mut s = String::new();
    let _ = writeln!(s, "H = {}", basis.hamiltonian());
    let _ = writeln!(s, "n = {}, mu = {}", basis.n(), basis.mu());
    let _ = writeln!(s, "system: (t - A) I' = (B0 + t B1) I");
    let _ = writeln!(s, "basis:");
    for (i, m) in basis.monomials().iter().enumerate() {
        let _ = writeln!(s, "  {i:>3}  {m}  deg {}  d = {}", basis.form_degree(i), format_rational(&sys.d[i]));
    }
    for (name, m) in [("A", &sys.a), ("B0", &sys.b0), ("B1", &sys.b1)] {
        let _ = writeln!(s, "{name} =\n{m}");
    }
    let _ = writeln!(s, "char poly of A: {}", sys.char_poly);
    let _ = writeln!(s, "critical values:");
    for (z, k) in &sys.critical_values {
        let _ = writeln!(s, "  {:+.12e} {:+.12e}i  x{k}", z.re, z.im);
    }
    let c = classify_singularities(sys);
    let _ = writeln!(
        s,
        "finite singularities Fuchsian: {}\ninfinity Fuchsian in this form: {}",
        c.finite_fuchsian, c.infinity_fuchsian_form
    );
    if let Some(v) = validation {
        let _ = writeln!(s, "validation: {}", if v.all_ok() { "passed" } else { "FAILED" });
        for d in &v.details {
            let _ = writeln!(s, "  {d}");
        }
    }
    s
}
