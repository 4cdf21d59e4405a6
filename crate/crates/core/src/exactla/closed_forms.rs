//! Closed-form determinants (Vandermonde, Cauchy-type) and the matrix
//! determinant lemma, each paired with the direct determinant it replaces.

use super::field::Field;
use super::matrix::{det, inverse, Matrix};
use crate::error::{Error, Result};

/// Power matrix `(x_i^r)_{i,r}`.
pub fn vandermonde_matrix<F: Field>(xs: &[F]) -> Matrix<F> {
    let k = xs.len();
    Matrix::from_fn(k, k, |i, r| xs[i].pow(r as u64))
}

/// `∏_{i<j} (x_j − x_i)`; the empty product for a single node.
pub fn vandermonde_det<F: Field>(xs: &[F]) -> Result<F> {
    let first = xs
        .first()
        .ok_or_else(|| Error::InvalidArgument("no nodes".into()))?;
    let mut acc = first.one_like();
    for j in 0..xs.len() {
        for i in 0..j {
            acc = acc.times(&xs[j].minus(&xs[i]));
        }
    }
    Ok(acc)
}

/// Product formula checked against the determinant of the power matrix.
pub fn vandermonde_det_checked<F: Field>(xs: &[F]) -> Result<F> {
    let closed = vandermonde_det(xs)?;
    let direct = det(&vandermonde_matrix(xs))?;
    if closed != direct {
        return Err(Error::mismatch("Vandermonde determinant", &closed, &direct));
    }
    Ok(closed)
}

/// `[(X_r + Y_s) / (1 + X_r Y_s)]_{r,s}`.
pub fn cauchy_matrix<F: Field>(xs: &[F], ys: &[F]) -> Result<Matrix<F>> {
    let mut rows = Vec::with_capacity(xs.len());
    for (r, x) in xs.iter().enumerate() {
        let mut row = Vec::with_capacity(ys.len());
        for (s, y) in ys.iter().enumerate() {
            let den = x.one_like().plus(&x.times(y));
            let inv = den.inverse().ok_or(Error::PoleEncountered { row: r, col: s })?;
            row.push(x.plus(y).times(&inv));
        }
        rows.push(row);
    }
    Matrix::from_rows(rows)
}

fn first_repeat<F: Field>(v: &[F]) -> Option<(usize, usize)> {
    for j in 0..v.len() {
        for i in 0..j {
            if v[i] == v[j] {
                return Some((i, j));
            }
        }
    }
    None
}

/// Closed form of `det[(X_r + Y_s) / (1 + X_r Y_s)]`:
///
/// `½{∏(1+X_r)(1+Y_r) + (−1)^N ∏(1−X_r)(1−Y_r)} · ∏_{r<s}(X_r−X_s)(Y_s−Y_r) / ∏_{r,s}(1+X_r Y_s)`.
///
/// Repeated nodes give 0 (the direct matrix then has equal rows or columns).
pub fn cauchy_closed_form<F: Field>(xs: &[F], ys: &[F]) -> Result<F> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} X nodes vs {} Y nodes",
            xs.len(),
            ys.len()
        )));
    }
    let first = xs
        .first()
        .ok_or_else(|| Error::InvalidArgument("no nodes".into()))?;
    let one = first.one_like();
    let mut poles = one.clone();
    for (r, x) in xs.iter().enumerate() {
        for (s, y) in ys.iter().enumerate() {
            let den = one.plus(&x.times(y));
            if den.is_zero() {
                return Err(Error::PoleEncountered { row: r, col: s });
            }
            poles = poles.times(&den);
        }
    }
    if first_repeat(xs).is_some() || first_repeat(ys).is_some() {
        return Ok(one.zero_like());
    }
    let mut plus = one.clone();
    let mut minus = one.clone();
    for (x, y) in xs.iter().zip(ys) {
        plus = plus.times(&one.plus(x)).times(&one.plus(y));
        minus = minus.times(&one.minus(x)).times(&one.minus(y));
    }
    let bracket = if xs.len().is_multiple_of(2) {
        plus.plus(&minus)
    } else {
        plus.minus(&minus)
    };
    let half = one
        .from_i64_like(2)
        .inverse()
        .ok_or(Error::NotInvertible)?;
    let mut vander = one.clone();
    for s in 0..xs.len() {
        for r in 0..s {
            vander = vander.times(&xs[r].minus(&xs[s])).times(&ys[s].minus(&ys[r]));
        }
    }
    let inv_poles = poles.inverse().expect("nonzero product");
    Ok(half.times(&bracket).times(&vander).times(&inv_poles))
}

/// `det(M + u vᵀ)` computed directly and by the matrix determinant lemma
/// `det(M)(1 + vᵀ M⁻¹ u)`; errors if the routes disagree.
pub fn det_rank_one_update<F: Field>(m: &Matrix<F>, u: &[F], v: &[F]) -> Result<F> {
    if u.len() != m.rows() || v.len() != m.cols() {
        return Err(Error::DimensionMismatch("rank-one update vectors".into()));
    }
    let inv = inverse(m)?;
    let d = det(m)?;
    let direct = det(&m.add(&Matrix::outer(u, v))?)?;
    let minv_u = inv.mul_vec(u)?;
    let mut quad = d.one_like();
    for (vi, wi) in v.iter().zip(&minv_u) {
        quad = quad.plus(&vi.times(wi));
    }
    let lemma = d.times(&quad);
    if direct != lemma {
        return Err(Error::mismatch("matrix determinant lemma", &direct, &lemma));
    }
    Ok(direct)
}
