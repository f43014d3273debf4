use serde::Serialize;

use crate::algebra::rational::zero;
use crate::algebra::{BiPoly, UniPoly};

use super::MilnorError;

/// Outcome of the regularity-at-infinity test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub degree_h: u32,
    /// `deg H - 1`.
    pub n: u32,
    /// Milnor number `n^2`, present only when `H` is regular.
    pub mu: Option<u32>,
    pub regular: bool,
    pub reason: Option<String>,
}

/// `H` is regular at infinity when its top homogeneous part is a product of
/// pairwise distinct linear factors.
///
/// Writing the top part as `y^k G(x, y)` with `y` not dividing `G`, the
/// factor `y` is repeated iff `k >= 2`, and the remaining factors are
/// distinct iff `G(z, 1)` is squarefree.
pub fn check_regular_at_infinity(h: &BiPoly) -> Result<RegularityReport, MilnorError> {
    let deg = h.degree().map_or(-1, i64::from);
    if deg <= 1 {
        return Err(MilnorError::DegreeTooSmall(deg));
    }
    let degree_h = deg as u32;
    let n = degree_h - 1;
    let top = h.highest_homogeneous_part()?;
    let y_mult = top.terms().map(|(m, _)| m.b).min().unwrap_or(0);
    let mut dehomogenized = vec![zero(); degree_h as usize + 1];
    for (m, c) in top.terms() {
        dehomogenized[m.a as usize] = c.clone();
    }
    let g = UniPoly::new(dehomogenized);
    let regular = y_mult <= 1 && g.is_squarefree();
    Ok(RegularityReport {
        degree_h,
        n,
        mu: regular.then_some(n * n),
        regular,
        reason: (!regular).then(|| format!("highest homogeneous part {top} has a repeated factor")),
    })
}
