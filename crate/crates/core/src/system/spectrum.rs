use num_complex::Complex64;
use pathfinding::kuhn_munkres::kuhn_munkres_min;
use pathfinding::matrix::Matrix;

use crate::algebra::roots::real_poly_roots;
use crate::algebra::UniPoly;

/// Roots of `p` with multiplicities, via its squarefree decomposition, so
/// repeated roots are computed as simple roots of a factor.
pub fn roots_with_multiplicity(p: &UniPoly) -> Vec<(Complex64, usize)> {
    let mut out = Vec::new();
    for (factor, k) in p.squarefree_decomposition() {
        for z in real_poly_roots(&factor) {
            out.push((z, k));
        }
    }
    out.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    out
}

/// Lists each value as many times as its multiplicity.
pub fn expand_multiset(values: &[(Complex64, usize)]) -> Vec<Complex64> {
    values
        .iter()
        .flat_map(|&(z, k)| std::iter::repeat_n(z, k))
        .collect()
}

/// Largest relative error `|a - b| / (1 + |b|)` under the matching of the two
/// multisets that minimizes the total error. `None` if the sizes differ.
pub fn matching_error(a: &[Complex64], b: &[Complex64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    if a.is_empty() {
        return Some(0.0);
    }
    let err = |i: usize, j: usize| (a[i] - b[j]).norm() / (1.0 + b[j].norm());
    let scale = (0..a.len())
        .flat_map(|i| (0..b.len()).map(move |j| (i, j)))
        .map(|(i, j)| err(i, j))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    // integer weights with ample resolution for the assignment solver
    let weights = Matrix::from_fn(a.len(), b.len(), |(i, j)| (err(i, j) / scale * 1e15).round() as i64);
    let (_, assignment) = kuhn_munkres_min(&weights);
    Some(
        assignment
            .iter()
            .enumerate()
            .map(|(i, &j)| err(i, j))
            .fold(0.0, f64::max),
    )
}
