//! Dense rational matrices and exact linear algebra.
//!
//! Elimination is fraction-free: each system is first scaled row-wise to
//! integer entries, then reduced with Bareiss' rule so every intermediate
//! entry is a minor of the input and every division is exact.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{denominator_lcm, format_rational, to_f64, Rational};
use super::upoly::UniPoly;
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = RatMatrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::DimensionMismatch);
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
        .expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn set_row(&mut self, i: usize, values: &[Rational]) {
        self.data[i * self.cols..(i + 1) * self.cols].clone_from_slice(values);
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Conjugation `P M P^-1` by the permutation sending basis index `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(perm[i], perm[j])] = self[(i, j)].clone();
            }
        }
        out
    }

    /// True when every entry above the diagonal is zero.
    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)].is_zero()))
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(to_f64).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        FractionFreeEchelon::new(integer_rows(&self.to_rows())).rank()
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> Result<Rational, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::DimensionMismatch);
        }
        if self.rows == 0 {
            return Ok(Rational::one());
        }
        let mut scale = BigInt::one();
        let rows: Vec<Vec<BigInt>> = self
            .to_rows()
            .iter()
            .map(|r| {
                let l = denominator_lcm(r.iter());
                scale *= &l;
                r.iter().map(|q| (q * Rational::from_integer(l.clone())).to_integer()).collect()
            })
            .collect();
        let ech = FractionFreeEchelon::new(rows);
        if ech.rank() < self.rows {
            return Ok(Rational::zero());
        }
        let last = ech.rows[self.rows - 1][self.cols - 1].clone();
        let sign = if ech.swaps % 2 == 0 { 1 } else { -1 };
        Ok(Rational::new(last * sign, scale))
    }

    /// Evaluates the polynomial `p` at this (square) matrix by Horner's rule.
    pub fn eval_poly(&self, p: &UniPoly) -> RatMatrix {
        let n = self.rows;
        let mut acc = RatMatrix::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = &acc * self;
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        acc
    }

    /// Monic characteristic polynomial `det(t I - M)`, via reduction to
    /// Hessenberg form by exact similarity transforms.
    pub fn char_poly(&self) -> Result<UniPoly, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::DimensionMismatch);
        }
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[(i, m - 1)].is_zero()) else {
                continue;
            };
            if i != m {
                for k in 0..n {
                    h.data.swap(i * n + k, m * n + k);
                }
                for k in 0..n {
                    h.data.swap(k * n + i, k * n + m);
                }
            }
            let piv = h[(m, m - 1)].clone();
            for j in m + 1..n {
                let u = &h[(j, m - 1)] / &piv;
                if u.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let v = &u * &h[(m, k)];
                    h[(j, k)] -= v;
                }
                for k in 0..n {
                    let v = &u * &h[(k, j)];
                    h[(k, m)] += v;
                }
            }
        }
        // p_k is the characteristic polynomial of the leading k x k block.
        let mut p: Vec<UniPoly> = vec![UniPoly::one()];
        for m in 1..=n {
            let lin = UniPoly::new(vec![-h[(m - 1, m - 1)].clone(), Rational::one()]);
            let mut pm = &lin * &p[m - 1];
            let mut prod = Rational::one();
            for i in 1..m {
                prod *= &h[(m - i, m - i - 1)];
                if prod.is_zero() {
                    break;
                }
                let c = &prod * &h[(m - i - 1, m - 1)];
                pm = &pm - &p[m - i - 1].scale(&c);
            }
            p.push(pm);
        }
        Ok(p.pop().unwrap())
    }

    /// Monic minimal polynomial: the first power `M^k` that is a rational
    /// combination of `I, M, ..., M^(k-1)`.
    pub fn min_poly(&self) -> Result<UniPoly, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::DimensionMismatch);
        }
        let n = self.rows;
        let mut powers = vec![RatMatrix::identity(n)];
        for k in 1..=n {
            let next = &powers[k - 1] * self;
            let mut columns = RatMatrix::zeros(n * n, k);
            for (j, pw) in powers.iter().enumerate() {
                for (r, v) in pw.data.iter().enumerate() {
                    columns[(r, j)] = v.clone();
                }
            }
            match exact_solve(&columns, &next.data) {
                Ok(c) => {
                    let mut coeffs: Vec<Rational> = c.into_iter().map(|v| -v).collect();
                    coeffs.push(Rational::one());
                    return Ok(UniPoly::new(coeffs));
                }
                Err(AlgebraError::NoSolution) => powers.push(next),
                Err(e) => return Err(e),
            }
        }
        unreachable!("Cayley-Hamilton bounds the minimal polynomial degree by n")
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a * &rhs[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        out
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Scales each rational row by the lcm of its denominators.
pub(crate) fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            let l = Rational::from_integer(denominator_lcm(r.iter()));
            r.iter().map(|q| (q * &l).to_integer()).collect()
        })
        .collect()
}

/// Row echelon form over the integers produced by Bareiss elimination.
///
/// Pivots are chosen as the leftmost column with a nonzero entry in a
/// remaining row, and within that column the first such row.
#[derive(Clone, Debug)]
pub struct FractionFreeEchelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    swaps: usize,
}

impl FractionFreeEchelon {
    pub fn new(mut rows: Vec<Vec<BigInt>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..ncols {
            if r == nrows {
                break;
            }
            let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                rows.swap(p, r);
                swaps += 1;
            }
            let (head, tail) = rows.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let piv = pivot_row[c].clone();
            for row in tail.iter_mut() {
                let lead = std::mem::take(&mut row[c]);
                for j in c + 1..ncols {
                    let mut v = &piv * &row[j];
                    if !lead.is_zero() && !pivot_row[j].is_zero() {
                        v -= &lead * &pivot_row[j];
                    }
                    row[j] = if prev.is_one() { v } else { v.div_floor(&prev) };
                }
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        FractionFreeEchelon { rows, pivots, swaps }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }
}

/// Solves `M x = rhs` exactly.
///
/// For consistent underdetermined systems the free unknowns are set to zero
/// and pivots follow [`FractionFreeEchelon`]'s rule, so the returned solution
/// is deterministic. Inconsistent systems give [`AlgebraError::NoSolution`].
pub fn exact_solve(m: &RatMatrix, rhs: &[Rational]) -> Result<Vec<Rational>, AlgebraError> {
    Ok(solve_with_pivots(m, rhs)?.0)
}

/// Like [`exact_solve`] and also reports the pivot columns of `M`.
pub fn solve_with_pivots(
    m: &RatMatrix,
    rhs: &[Rational],
) -> Result<(Vec<Rational>, Vec<usize>), AlgebraError> {
    if rhs.len() != m.rows {
        return Err(AlgebraError::DimensionMismatch);
    }
    let n = m.cols;
    let augmented: Vec<Vec<Rational>> = (0..m.rows)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(rhs[i].clone());
            r
        })
        .collect();
    let ech = FractionFreeEchelon::new(integer_rows(&augmented));
    if ech.pivots.last() == Some(&n) {
        return Err(AlgebraError::NoSolution);
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &c) in ech.pivots.iter().enumerate().rev() {
        let row = &ech.rows[r];
        let mut acc = Rational::from_integer(row[n].clone());
        for j in c + 1..n {
            if !row[j].is_zero() && !x[j].is_zero() {
                acc -= Rational::from_integer(row[j].clone()) * &x[j];
            }
        }
        x[c] = acc / Rational::from_integer(row[c].clone());
    }
    Ok((x, ech.pivots))
}

/// Determinant of a square matrix with univariate polynomial entries,
/// by Bareiss elimination over `Q[t]` (all divisions exact).
pub fn poly_determinant(mut m: Vec<Vec<UniPoly>>) -> Result<UniPoly, AlgebraError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(AlgebraError::DimensionMismatch);
    }
    if n == 0 {
        return Ok(UniPoly::one());
    }
    let mut sign = false;
    let mut prev = UniPoly::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Ok(UniPoly::zero());
        };
        if p != k {
            m.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                let (q, r) = v.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][k] = UniPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign { -&det } else { det })
}

/// Largest absolute entry, used for relative tolerances.
pub fn max_abs(m: &RatMatrix) -> f64 {
    m.data.iter().map(|v| to_f64(&v.abs())).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    #[test]
    fn solve_identity() {
        let b = vec![rat(1, 3), int(-2), int(5)];
        assert_eq!(exact_solve(&RatMatrix::identity(3), &b).unwrap(), b);
    }

    #[test]
    fn solve_inconsistent() {
        let m = RatMatrix::from_ints(&[&[1, 1], &[2, 2]]);
        assert!(matches!(exact_solve(&m, &[int(1), int(3)]), Err(AlgebraError::NoSolution)));
    }

    #[test]
    fn solve_diagonal() {
        let m = RatMatrix::from_ints(&[&[2, 0], &[0, 4]]);
        assert_eq!(exact_solve(&m, &[int(1), int(1)]).unwrap(), vec![rat(1, 2), rat(1, 4)]);
    }

    #[test]
    fn underdetermined_sets_free_to_zero() {
        let m = RatMatrix::from_ints(&[&[0, 1, 1], &[0, 2, 3]]);
        let (x, piv) = solve_with_pivots(&m, &[int(1), int(1)]).unwrap();
        assert_eq!(piv, vec![1, 2]);
        assert_eq!(x, vec![int(0), int(2), int(-1)]);
    }

    #[test]
    fn determinant_small() {
        let m = RatMatrix::from_ints(&[&[0, 2, 1], &[1, 1, 0], &[3, 0, 1]]);
        // 0*(1) - 2*(1 - 0) + 1*(0 - 3) = -5
        assert_eq!(m.determinant().unwrap(), int(-5));
        let half = m.scale(&rat(1, 2));
        assert_eq!(half.determinant().unwrap(), rat(-5, 8));
    }

    #[test]
    fn char_and_min_poly_examples() {
        let z = RatMatrix::zeros(3, 3);
        assert_eq!(z.char_poly().unwrap(), UniPoly::from_ints(&[0, 0, 0, 1]));
        assert_eq!(z.min_poly().unwrap(), UniPoly::t());

        let d = RatMatrix::diagonal(&[int(1), int(2)]);
        assert_eq!(d.char_poly().unwrap(), UniPoly::from_ints(&[2, -3, 1]));
        assert_eq!(d.min_poly().unwrap(), UniPoly::from_ints(&[2, -3, 1]));

        let b = RatMatrix::from_ints(&[&[0, -1], &[0, -1]]);
        assert_eq!(b.char_poly().unwrap(), UniPoly::from_ints(&[0, 1, 1]));
        assert_eq!(b.min_poly().unwrap(), UniPoly::from_ints(&[0, 1, 1]));
    }

    #[test]
    fn nilpotent_min_poly() {
        let j = RatMatrix::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(j.min_poly().unwrap(), UniPoly::from_ints(&[0, 0, 0, 1]));
        let j2 = RatMatrix::from_ints(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(j2.min_poly().unwrap(), UniPoly::from_ints(&[0, 0, 1]));
        assert_eq!(j2.char_poly().unwrap(), UniPoly::from_ints(&[0, 0, 0, 1]));
    }

    #[test]
    fn poly_det_triangular() {
        let t = UniPoly::t();
        let c = |v| UniPoly::constant(int(v));
        let m = vec![vec![c(2), t.clone()], vec![c(0), c(3)]];
        assert_eq!(poly_determinant(m).unwrap(), c(6));
        let m = vec![vec![t.clone(), c(1)], vec![c(1), t.clone()]];
        assert_eq!(poly_determinant(m).unwrap(), UniPoly::from_ints(&[-1, 0, 1]));
    }
}
