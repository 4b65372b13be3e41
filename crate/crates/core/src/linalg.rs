//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::scalar::{AffineScalar, Rational, ScalarError};

/// Solves `rows · x = rhs` for `x`, where the matrix is rational and the
/// right-hand side affine. Columns without a pivot are set to zero, so the
/// solution is unique once the free coordinates are fixed that way.
///
/// Returns `Ok(None)` when the system is inconsistent.
pub(crate) fn solve(
    rows: &[Vec<Rational>],
    rhs: &[AffineScalar],
    ncols: usize,
) -> Result<Option<Vec<AffineScalar>>, ScalarError> {
    assert_eq!(rows.len(), rhs.len());
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut b: Vec<AffineScalar> = rhs.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        b.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        b[row] = b[row].scale(&inv);
        for i in 0..m.len() {
            if i == row || m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone();
            for j in 0..ncols {
                let delta = &factor * &m[row][j];
                m[i][j] -= delta;
            }
            b[i] = b[i].sub(&b[row].scale(&factor))?;
        }
        pivots.push((row, col));
        row += 1;
        if row == m.len() {
            break;
        }
    }
    if b[row..].iter().any(|v| !v.is_zero()) {
        return Ok(None);
    }
    let mut x = vec![AffineScalar::zero(); ncols];
    for (r, c) in pivots {
        debug_assert!(m[r][c].is_one());
        x[c] = b[r].clone();
    }
    Ok(Some(x))
}

/// `x_j` with `rows · x_j = e_j` for every `j`, chosen exactly as [`solve`]
/// chooses them, so that `Σ l_j x_j` solves `rows · x = l`. `None` if some
/// `e_j` is not in the column space.
pub(crate) fn solve_columns(rows: &[Vec<Rational>], ncols: usize) -> Option<Vec<Vec<Rational>>> {
    let n = rows.len();
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    // b[i] is row i of the augmented identity.
    let mut b: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == n {
            break;
        }
        let Some(p) = (row..n).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        b.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut().chain(b[row].iter_mut()) {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        for i in 0..n {
            if i == row || m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone();
            for j in 0..ncols {
                if !m[row][j].is_zero() {
                    let delta = &factor * &m[row][j];
                    m[i][j] -= delta;
                }
            }
            for j in 0..n {
                if !b[row][j].is_zero() {
                    let delta = &factor * &b[row][j];
                    b[i][j] -= delta;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    if b[row..].iter().any(|r| r.iter().any(|v| !v.is_zero())) {
        return None;
    }
    let mut cols = vec![vec![Rational::zero(); ncols]; n];
    for (r, c) in pivots {
        for (j, col) in cols.iter_mut().enumerate() {
            col[c] = b[r][j].clone();
        }
    }
    Some(cols)
}

/// Coefficients of `v` in the span of `basis`, if it lies there.
#[cfg(test)]
pub(crate) fn coordinates_in(basis: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    Expander::new(basis)?.expand(v)
}

/// Repeated expansion in a fixed linearly independent family.
pub(crate) struct Expander {
    basis: Vec<Vec<Rational>>,
    /// Coordinates on which the family restricts to an invertible matrix.
    pivots: Vec<usize>,
    /// Inverse of the transposed restriction: `c = inv · v[pivots]`.
    inv: Vec<Vec<Rational>>,
}

impl Expander {
    /// `None` if the family is linearly dependent.
    pub(crate) fn new(basis: &[Vec<Rational>]) -> Option<Self> {
        let r = basis.len();
        let d = basis.first().map_or(0, Vec::len);
        let mut echelon = basis.to_vec();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..d {
            let Some(p) = (row..r).find(|&i| !echelon[i][col].is_zero()) else {
                continue;
            };
            echelon.swap(row, p);
            for i in row + 1..r {
                if echelon[i][col].is_zero() {
                    continue;
                }
                let f = &echelon[i][col] / &echelon[row][col];
                for j in col..d {
                    let delta = &f * &echelon[row][j];
                    echelon[i][j] -= delta;
                }
            }
            pivots.push(col);
            row += 1;
            if row == r {
                break;
            }
        }
        if pivots.len() != r {
            return None;
        }
        // m[k][i] = basis[i][pivots[k]]
        let m: Vec<Vec<Rational>> =
            pivots.iter().map(|&k| basis.iter().map(|b| b[k].clone()).collect()).collect();
        let inv = invert(&m)?;
        Some(Expander { basis: basis.to_vec(), pivots, inv })
    }

    pub(crate) fn expand(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let r = self.basis.len();
        let mut c = vec![Rational::zero(); r];
        for (k, &p) in self.pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            for i in 0..r {
                if !self.inv[i][k].is_zero() {
                    c[i] += &self.inv[i][k] * &v[p];
                }
            }
        }
        let mut back = vec![Rational::zero(); v.len()];
        for (ci, b) in c.iter().zip(&self.basis) {
            if ci.is_zero() {
                continue;
            }
            for (x, y) in back.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x += ci * y;
                }
            }
        }
        (back == v).then_some(c)
    }
}

/// Inverse of a square rational matrix.
pub(crate) fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let pivot = a[col][col].recip();
        for j in 0..n {
            a[col][j] *= &pivot;
            inv[col][j] *= &pivot;
        }
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..n {
                let da = &f * &a[col][j];
                a[i][j] -= da;
                let di = &f * &inv[col][j];
                inv[i][j] -= di;
            }
        }
    }
    Some(inv)
}
