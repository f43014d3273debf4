//! Fixtures shared by the criterion benchmarks under `benches/`.

use num_complex::Complex64;
use pf_core::{parse_polynomial, trace_cycle, BiPoly, Cycle, TraceMode, TraceOptions};

pub const QUINTIC: &str = "x^5+y^5+x^2*y^2+x+y";
pub const FOLIUM: &str = "x^3+y^3-3xy";
pub const QUARTIC: &str = "x^4 - x*y^3 + 2*y^4 + x^2*y - y";
pub const SEXTIC: &str = "x^6 + y^6 + x^3*y^2 - x*y + y";

pub fn poly(src: &str) -> BiPoly {
    parse_polynomial(src).expect("fixture parses")
}

/// Real oval of the folium around its minimum at `(1, 1)`.
pub fn folium_oval(t: f64) -> Cycle {
    let c = |v: f64| Complex64::new(v, 0.0);
    trace_cycle(&poly(FOLIUM), c(t), [c(1.0), c(1.0)], TraceMode::RealOval, &TraceOptions::default())
        .expect("folium oval traces")
}
