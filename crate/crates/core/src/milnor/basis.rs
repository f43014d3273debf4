use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::matrix::{integer_rows, FractionFreeEchelon};
use crate::algebra::{BiPoly, Monomial, Rational, Var};
use crate::forms::{canonical_primitive, OneForm};

use super::{check_regular_at_infinity, MilnorError};

/// How the monomials of a [`MilnorBasis`] were chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    /// The square grid `x^a y^b`, `0 <= a, b < n`.
    Grid,
    /// Greedy choice, per degree, of the first monomials independent modulo
    /// the ideal of the top-degree gradient.
    Greedy,
}

/// Ordered monomial basis `m_1, ..., m_mu` of the Milnor algebra of `H`,
/// with the radial primitives `w_i` (`dw_i = m_i dx^dy`).
///
/// Monomials are sorted by total degree, then with larger `x` power first.
#[derive(Clone, Debug)]
pub struct MilnorBasis {
    h: BiPoly,
    n: u32,
    monomials: Vec<Monomial>,
    primitives: Vec<OneForm>,
    kind: BasisKind,
    hx: BiPoly,
    hy: BiPoly,
    top_hx: BiPoly,
    top_hy: BiPoly,
}

impl MilnorBasis {
    pub fn hamiltonian(&self) -> &BiPoly {
        &self.h
    }

    /// `deg H - 1`.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mu(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn primitives(&self) -> &[OneForm] {
        &self.primitives
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn hx(&self) -> &BiPoly {
        &self.hx
    }

    pub fn hy(&self) -> &BiPoly {
        &self.hy
    }

    /// Form degree of the primitive `w_i`, i.e. `deg m_i + 2`.
    pub fn form_degree(&self, i: usize) -> u32 {
        self.monomials[i].degree() + 2
    }

    pub fn index_of(&self, m: Monomial) -> Option<usize> {
        self.monomials.iter().position(|&k| k == m)
    }

    pub(crate) fn top_gradient(&self) -> (&BiPoly, &BiPoly) {
        (&self.top_hx, &self.top_hy)
    }

    /// Rebuilds the basis with the monomials reordered by `perm`
    /// (new position of old index `i` is `perm[i]`). Used to check that
    /// results do not depend on the order within one degree.
    pub fn permuted(&self, perm: &[usize]) -> MilnorBasis {
        let mut monomials = self.monomials.clone();
        let mut primitives = self.primitives.clone();
        for (i, &p) in perm.iter().enumerate() {
            monomials[p] = self.monomials[i];
            primitives[p] = self.primitives[i].clone();
        }
        MilnorBasis {
            monomials,
            primitives,
            ..self.clone()
        }
    }
}

/// Coordinates of a homogeneous polynomial of degree `d` over the monomials
/// of that degree (ascending order, `x^d` first).
pub(crate) fn slice_vector(p: &BiPoly, d: u32) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); d as usize + 1];
    for (m, c) in p.terms() {
        if m.degree() == d {
            v[(d - m.a) as usize] = c.clone();
        }
    }
    v
}

/// Generators `Ĥ_x m`, `Ĥ_y m` (`deg m = d - n`) of the degree-`d` part of
/// the ideal of the top-degree gradient, as coordinate vectors.
pub(crate) fn ideal_slice(top_hx: &BiPoly, top_hy: &BiPoly, n: u32, d: u32) -> Vec<Vec<Rational>> {
    let Some(k) = d.checked_sub(n) else {
        return Vec::new();
    };
    let mut rows = Vec::with_capacity(2 * (k as usize + 1));
    for g in [top_hx, top_hy] {
        for m in Monomial::of_degree(k) {
            rows.push(slice_vector(&g.mul_monomial(m), d));
        }
    }
    rows
}

fn rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ints: Vec<Vec<BigInt>> = integer_rows(rows);
    FractionFreeEchelon::new(ints).rank()
}

/// Builds a monomial basis of `Q[x,y]/<H_x, H_y>`.
///
/// Any set of monomials whose classes form a basis of the algebra of the top
/// homogeneous part is a basis for `H` as well. The grid `0 <= a, b < n` is
/// tried first and verified degree by degree; otherwise each degree slice is
/// filled greedily in monomial order.
pub fn monomial_basis(h: &BiPoly) -> Result<MilnorBasis, MilnorError> {
    let report = check_regular_at_infinity(h)?;
    if !report.regular {
        return Err(MilnorError::NotRegular(report.reason.unwrap_or_default()));
    }
    let n = report.n;
    let top = h.highest_homogeneous_part()?;
    let top_hx = top.partial(Var::X);
    let top_hy = top.partial(Var::Y);

    let mut grid_ok = true;
    let mut greedy = Vec::new();
    let mut total = 0usize;
    for d in 0..=2 * n - 1 {
        let ideal = ideal_slice(&top_hx, &top_hy, n, d);
        let ideal_rank = rank(&ideal);
        let hilbert = d as usize + 1 - ideal_rank;
        total += hilbert;

        let grid: Vec<Monomial> = Monomial::of_degree(d).filter(|m| m.a < n && m.b < n).collect();
        if grid.len() != hilbert {
            grid_ok = false;
        } else if hilbert > 0 {
            let mut rows = ideal.clone();
            rows.extend(grid.iter().map(|m| slice_vector(&BiPoly::monomial(*m), d)));
            if rank(&rows) != d as usize + 1 {
                grid_ok = false;
            }
        }

        let mut rows = ideal;
        let mut current = ideal_rank;
        for m in Monomial::of_degree(d) {
            if current == d as usize + 1 {
                break;
            }
            rows.push(slice_vector(&BiPoly::monomial(m), d));
            let r = rank(&rows);
            if r > current {
                current = r;
                greedy.push(m);
            } else {
                rows.pop();
            }
        }
    }
    if total != (n * n) as usize {
        return Err(MilnorError::InternalRank(format!(
            "Jacobian algebra of the top part has dimension {total}, expected {}",
            n * n
        )));
    }

    let (mut monomials, kind) = if grid_ok {
        let grid = (0..n).flat_map(|a| (0..n).map(move |b| Monomial::new(a, b))).collect();
        (grid, BasisKind::Grid)
    } else {
        (greedy, BasisKind::Greedy)
    };
    monomials.sort();
    let primitives = monomials.iter().map(|m| canonical_primitive(*m)).collect();
    Ok(MilnorBasis {
        h: h.clone(),
        n,
        monomials,
        primitives,
        kind,
        hx: h.partial(Var::X),
        hy: h.partial(Var::Y),
        top_hx,
        top_hy,
    })
}
