use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::Field;
use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
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

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols.max(1)).map(<[T]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// The matrix with row `skip_row` and column `skip_col` removed.
    pub fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows).filter(|&r| r != skip_row).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&c| c != skip_col).collect();
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl<F: Field> Matrix<F> {
    pub fn identity(n: usize, one: &F) -> Self {
        let zero = one.zero_like();
        Matrix::from_fn(n, n, |r, c| if r == c { one.clone() } else { zero.clone() })
    }

    pub fn diagonal(diag: &[F]) -> Self {
        let n = diag.len();
        Matrix::from_fn(n, n, |r, c| {
            if r == c {
                diag[r].clone()
            } else {
                diag[r].zero_like()
            }
        })
    }

    /// Column vector times row vector.
    pub fn outer(u: &[F], v: &[F]) -> Self {
        Matrix::from_fn(u.len(), v.len(), |r, c| u[r].times(&v[c]))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = self.get(r, 0).times(rhs.get(0, c));
            for k in 1..self.cols {
                acc = acc.plus(&self.get(r, k).times(rhs.get(k, c)));
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch("matrix-vector".into()));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = self.get(r, 0).times(&v[0]);
                for (k, vk) in v.iter().enumerate().skip(1) {
                    acc = acc.plus(&self.get(r, k).times(vk));
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.plus(b)).collect(),
        })
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|a| a.times(s))
    }

    /// Signed cofactor of entry `(r, c)`.
    pub fn cofactor(&self, r: usize, c: usize) -> Result<F> {
        let d = det(&self.minor(r, c))?;
        Ok(if (r + c).is_multiple_of(2) { d } else { d.negated() })
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Exact determinant; dispatches to the field's preferred algorithm.
pub fn det<F: Field>(m: &Matrix<F>) -> Result<F> {
    F::determinant(m)
}

/// Gaussian elimination with exact division, pivoting on the first nonzero
/// entry of each column.
pub fn det_gauss<F: Field>(m: &Matrix<F>) -> Result<F> {
    m.require_square()?;
    let n = m.rows;
    if n == 0 {
        return Err(Error::DimensionMismatch("empty matrix".into()));
    }
    let mut a = m.clone();
    let mut acc = m.get(0, 0).one_like();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !a.get(r, k).is_zero()) else {
            return Ok(acc.zero_like());
        };
        if piv != k {
            a.swap_rows(piv, k);
            acc = acc.negated();
        }
        let pivot = a.get(k, k).clone();
        acc = acc.times(&pivot);
        let inv = pivot.inverse().expect("nonzero pivot is invertible");
        for r in k + 1..n {
            if a.get(r, k).is_zero() {
                continue;
            }
            let factor = a.get(r, k).times(&inv);
            for c in k + 1..n {
                let v = a.get(r, c).minus(&factor.times(a.get(k, c)));
                a.set(r, c, v);
            }
        }
    }
    Ok(acc)
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
///
/// Panics if a Bareiss division ever leaves a remainder: that would mean the
/// elimination itself is broken.
pub fn bareiss_det(m: &Matrix<BigInt>) -> Result<BigInt> {
    m.require_square()?;
    let n = m.rows;
    if n == 0 {
        return Err(Error::DimensionMismatch("empty matrix".into()));
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        let Some(piv) = (k..n).find(|&r| !a.get(r, k).is_zero()) else {
            return Ok(BigInt::zero());
        };
        if piv != k {
            a.swap_rows(piv, k);
            sign = -sign;
        }
        let pivot = a.get(k, k).clone();
        for r in k + 1..n {
            for c in k + 1..n {
                let num = &pivot * a.get(r, c) - a.get(r, k) * a.get(k, c);
                let (q, rem) = num.div_rem(&prev);
                assert!(rem.is_zero(), "non-exact Bareiss division at stage {k}");
                a.set(r, c, q);
            }
            a.set(r, k, BigInt::zero());
        }
        prev = pivot;
    }
    Ok(sign * a.get(n - 1, n - 1))
}

/// Rational determinant: clear each row's denominators, run Bareiss on the
/// integer matrix, divide the scaling back out.
pub(super) fn det_rational(m: &Matrix<BigRational>) -> Result<BigRational> {
    m.require_square()?;
    let mut scale = BigInt::one();
    let mut ints = Vec::with_capacity(m.rows * m.cols);
    for r in 0..m.rows {
        let lcm = m
            .row(r)
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        for x in m.row(r) {
            ints.push(x.numer() * (&lcm / x.denom()));
        }
        scale *= lcm;
    }
    let im = Matrix::new(m.rows, m.cols, ints)?;
    let d = bareiss_det(&im)?;
    Ok(BigRational::new(d, scale))
}

/// Leibniz expansion over all permutations. Exponential; for oracles on
/// small matrices only.
pub fn det_leibniz<F: Field>(m: &Matrix<F>) -> Result<F> {
    m.require_square()?;
    let n = m.rows;
    if n == 0 {
        return Err(Error::DimensionMismatch("empty matrix".into()));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = m.get(0, 0).zero_like();
    // Heap's algorithm; each generated permutation differs from the last by
    // one transposition, so the sign alternates.
    let mut c = vec![0usize; n];
    let mut positive = true;
    let term = |perm: &[usize]| {
        let mut t = m.get(0, perm[0]).clone();
        for (r, &col) in perm.iter().enumerate().skip(1) {
            t = t.times(m.get(r, col));
        }
        t
    };
    total = total.plus(&term(&perm));
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            positive = !positive;
            let t = term(&perm);
            total = if positive { total.plus(&t) } else { total.minus(&t) };
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(total)
}

/// Exact inverse by Gauss–Jordan elimination.
pub fn inverse<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>> {
    m.require_square()?;
    let n = m.rows;
    if n == 0 {
        return Err(Error::DimensionMismatch("empty matrix".into()));
    }
    let one = m.get(0, 0).one_like();
    let mut a = m.clone();
    let mut inv = Matrix::identity(n, &one);
    for k in 0..n {
        let piv = (k..n)
            .find(|&r| !a.get(r, k).is_zero())
            .ok_or(Error::Singular { stage: k })?;
        a.swap_rows(piv, k);
        inv.swap_rows(piv, k);
        let p_inv = a.get(k, k).inverse().expect("nonzero pivot");
        for c in 0..n {
            a.set(k, c, a.get(k, c).times(&p_inv));
            inv.set(k, c, inv.get(k, c).times(&p_inv));
        }
        for r in 0..n {
            if r == k || a.get(r, k).is_zero() {
                continue;
            }
            let f = a.get(r, k).clone();
            for c in 0..n {
                a.set(r, c, a.get(r, c).minus(&f.times(a.get(k, c))));
                inv.set(r, c, inv.get(r, c).minus(&f.times(inv.get(k, c))));
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
pub(crate) fn permutation_sign(perm: &[usize]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1i8;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

impl Matrix<BigRational> {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    /// Every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Fp;
    use proptest::prelude::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn qm(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&qm(&[&[1, 0], &[-1, 1]])).unwrap(), q(1));
        assert_eq!(det(&qm(&[&[1, 0, 0], &[1, 1, 1], &[1, 2, 4]])).unwrap(), q(2));
        assert_eq!(det(&qm(&[&[0, 1], &[1, 0]])).unwrap(), q(-1));
        assert_eq!(det(&qm(&[&[1, 2], &[2, 4]])).unwrap(), q(0));
    }

    #[test]
    fn det_rejects_non_square() {
        let m = Matrix::from_fn(2, 3, |_, _| q(1));
        assert_eq!(det(&m), Err(Error::NonSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn inverse_examples() {
        let m = qm(&[&[1, 0], &[-1, 1]]);
        assert_eq!(inverse(&m).unwrap(), qm(&[&[1, 0], &[1, 1]]));
        let id = Matrix::identity(4, &q(1));
        assert_eq!(inverse(&id).unwrap(), id);
        let sing = qm(&[&[1, 2], &[2, 4]]);
        assert_eq!(inverse(&sing), Err(Error::Singular { stage: 1 }));
        let zero_col = qm(&[&[0, 1], &[0, 2]]);
        assert_eq!(inverse(&zero_col), Err(Error::Singular { stage: 0 }));
    }

    #[test]
    fn rational_entries_with_denominators() {
        let m = Matrix::from_fn(2, 2, |r, c| BigRational::new((r + c + 1).into(), (c + 2).into()));
        // [[1/2, 2/3], [2/2, 3/3]] → 1/2 − 2/3
        assert_eq!(det(&m).unwrap(), BigRational::new((-1).into(), 6.into()));
        assert_eq!(det(&m).unwrap(), det_gauss(&m).unwrap());
    }

    #[test]
    fn gauss_and_leibniz_agree_over_fp() {
        let p = 13;
        let m = Matrix::from_fn(4, 4, |r, c| Fp::new((r * r * 3 + c * 5 + r * c) as i64, p));
        assert_eq!(det_gauss(&m).unwrap(), det_leibniz(&m).unwrap());
    }

    #[test]
    fn permutation_sign_matches_swaps() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
        assert_eq!(permutation_sign(&[3, 2, 1, 0]), 1);
    }

    fn small_rat() -> impl Strategy<Value = BigRational> {
        (-20i64..20, 1i64..6).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
    }

    fn rat_matrix(n: usize) -> impl Strategy<Value = Matrix<BigRational>> {
        proptest::collection::vec(small_rat(), n * n)
            .prop_map(move |v| Matrix::new(n, n, v).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn det_is_multiplicative(a in rat_matrix(5), b in rat_matrix(5)) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(det(&ab).unwrap(), det(&a).unwrap() * det(&b).unwrap());
        }

        #[test]
        fn bareiss_matches_gauss_and_leibniz(a in rat_matrix(4)) {
            let d = det(&a).unwrap();
            prop_assert_eq!(&d, &det_gauss(&a).unwrap());
            prop_assert_eq!(&d, &det_leibniz(&a).unwrap());
        }

        #[test]
        fn row_permutation_picks_up_sign(a in rat_matrix(4), perm in Just(vec![0usize,1,2,3]).prop_shuffle()) {
            let permuted = Matrix::from_fn(4, 4, |r, c| a.get(perm[r], c).clone());
            let s = q(permutation_sign(&perm) as i64);
            prop_assert_eq!(det(&permuted).unwrap(), s * det(&a).unwrap());
        }

        #[test]
        fn inverse_is_involutive(a in rat_matrix(4)) {
            if let Ok(inv) = inverse(&a) {
                prop_assert_eq!(inverse(&inv).unwrap(), a.clone());
                prop_assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(4, &q(1)));
            } else {
                prop_assert_eq!(det(&a).unwrap(), q(0));
            }
        }
    }
}
