//! Dense exact linear algebra: fraction-free (Bareiss) elimination for
//! determinants, definiteness and solves, plus Smith normal form over the
//! integers.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Num, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }
}

impl<T: Clone + PartialEq> Matrix<T> {
    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<'a, T: Clone + Num> Mul for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| acc + self[(i, k)].clone() * rhs[(k, j)].clone())
        })
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "{}[", if i > 0 { ", " } else { "" })?;
            for j in 0..self.cols {
                write!(f, "{}{:?}", if j > 0 { ", " } else { "" }, self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub fn to_big(m: &Matrix<i64>) -> Matrix<BigInt> {
    m.map(|&x| BigInt::from(x))
}

pub fn to_scalar<T: Scalar>(m: &Matrix<i64>) -> Matrix<T> {
    m.map(|&x| T::from_int(x))
}

/// Fraction-free forward elimination on the first `pivot_cols` columns of
/// `a`. After return, the leading `pivot_cols` square block is upper
/// triangular and its k-th diagonal entry is the k-th leading minor of the
/// row-permuted input. Returns the permutation sign, or `None` if singular.
///
/// Divisions are exact over any integral domain, so this is used both over
/// `BigInt` and over exact fields.
fn bareiss<T: Clone + Num>(a: &mut Matrix<T>, pivot_cols: usize, pivoting: bool) -> Option<i8> {
    let n = pivot_cols.min(a.rows);
    let mut prev = T::one();
    let mut sign = 1i8;
    for k in 0..n {
        if a[(k, k)].is_zero() {
            if !pivoting {
                return None;
            }
            let p = (k + 1..a.rows).find(|&r| !a[(r, k)].is_zero())?;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..a.rows {
            for j in k + 1..a.cols {
                let v = (a[(k, k)].clone() * a[(i, j)].clone() - a[(i, k)].clone() * a[(k, j)].clone())
                    / prev.clone();
                a[(i, j)] = v;
            }
            a[(i, k)] = T::zero();
        }
        prev = a[(k, k)].clone();
    }
    Some(sign)
}

/// Exact determinant of a square integer matrix.
pub fn determinant(m: &Matrix<i64>) -> BigInt {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = to_big(m);
    match bareiss(&mut a, n, true) {
        Some(sign) => a[(n - 1, n - 1)].clone() * BigInt::from(sign),
        None => BigInt::zero(),
    }
}

/// Leading principal minors `Δ_1, …, Δ_k`, stopping after the first zero
/// (later minors are not determined by unpivoted elimination).
pub fn leading_minors(m: &Matrix<i64>) -> Vec<BigInt> {
    let n = m.rows().min(m.cols());
    let mut a = to_big(m);
    let mut out = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = a[(k, k)].clone();
        out.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..a.rows {
            for j in k + 1..a.cols {
                a[(i, j)] = (&pivot * &a[(i, j)] - &a[(i, k)] * &a[(k, j)]) / &prev;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = pivot;
    }
    out
}

/// `(-1)^k Δ_k > 0` for every leading principal minor.
pub fn is_negative_definite(m: &Matrix<i64>) -> Result<bool> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let minors = leading_minors(m);
    if minors.len() < m.rows() {
        return Ok(false);
    }
    Ok(minors.iter().enumerate().all(|(i, d)| {
        let k = i + 1;
        if k % 2 == 1 {
            d.is_negative()
        } else {
            d.is_positive()
        }
    }))
}

/// Solves `M X = B` for every column of `B`.
///
/// Denominators of each column of `B` are cleared first so the elimination
/// and the back substitution run entirely in integers: with `D` the last
/// Bareiss pivot (`±det M`), `D·x` is integral by Cramer's rule.
pub fn solve_many<T: Scalar>(m: &Matrix<i64>, b: &Matrix<T>) -> Result<Matrix<T>> {
    let n = m.rows();
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: n, found: m.cols() });
    }
    if b.rows() != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.rows() });
    }
    let k = b.cols();
    if n == 0 {
        return Ok(Matrix::zeros(0, k));
    }
    let rhs = b.map(Scalar::to_big_rational);
    let denoms: Vec<BigInt> = (0..k)
        .map(|c| (0..n).fold(BigInt::one(), |acc, i| acc.lcm(rhs[(i, c)].denom())))
        .collect();
    let mut a = Matrix::from_fn(n, n + k, |i, j| {
        if j < n {
            BigInt::from(m[(i, j)])
        } else {
            let c = j - n;
            (rhs[(i, c)].numer() * &denoms[c]) / rhs[(i, c)].denom()
        }
    });
    bareiss(&mut a, n, true).ok_or(Error::Singular)?;
    let det = a[(n - 1, n - 1)].clone();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let mut x = Matrix::zeros(n, k);
    let mut y = vec![BigInt::zero(); n];
    for c in 0..k {
        for i in (0..n).rev() {
            let mut acc = &det * &a[(i, n + c)];
            for j in i + 1..n {
                acc -= &a[(i, j)] * &y[j];
            }
            y[i] = acc / &a[(i, i)];
        }
        let scale = &det * &denoms[c];
        for i in 0..n {
            x[(i, c)] = T::from_fraction(&y[i], &scale);
        }
    }
    Ok(x)
}

/// Solves `M x = b` exactly.
pub fn solve_exact<T: Scalar>(m: &Matrix<i64>, b: &[T]) -> Result<Vec<T>> {
    let rhs = Matrix::from_fn(b.len(), 1, |i, _| b[i].clone());
    Ok(solve_many(m, &rhs)?.col(0))
}

/// `-M⁻¹` of a negative definite matrix; its columns are the dual basis.
pub fn neg_inverse<T: Scalar>(m: &Matrix<i64>) -> Result<Matrix<T>> {
    if !is_negative_definite(m)? {
        return Err(Error::NotNegativeDefinite);
    }
    let n = m.rows();
    let neg_id = Matrix::from_fn(n, n, |i, j| if i == j { -T::one() } else { T::zero() });
    solve_many(m, &neg_id)
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal with positive
/// invariant factors `d_1 | d_2 | …` (zeros last for singular input).
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: Matrix<BigInt>,
    pub v: Matrix<BigInt>,
    pub d: Matrix<BigInt>,
}

impl SnfDecomposition {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Order of the cokernel, `|det M|` for nonsingular square `M`.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors().iter().product()
    }
}

pub fn smith_normal_form(m: &Matrix<i64>) -> SnfDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = to_big(m);
    let mut u = Matrix::<BigInt>::identity(rows);
    let mut v = Matrix::<BigInt>::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block as pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !d[(i, j)].is_zero()
                        && best.map_or(true, |(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(m, u, d, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                if !q.is_zero() {
                    add_row_multiple(&mut d, i, t, &q);
                    add_row_multiple(&mut u, i, t, &q);
                }
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                if !q.is_zero() {
                    add_col_multiple(&mut d, j, t, &q);
                    add_col_multiple(&mut v, j, t, &q);
                }
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t and retry
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)])));
            match offending {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    add_row_multiple(&mut d, t, i, &minus_one);
                    add_row_multiple(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    finish(m, u, d, v)
}

fn finish(m: &Matrix<i64>, u: Matrix<BigInt>, d: Matrix<BigInt>, v: Matrix<BigInt>) -> SnfDecomposition {
    assert!(&(&u * &to_big(m)) * &v == d, "Smith normal form failed its U·M·V = D check");
    SnfDecomposition { u, v, d }
}

/// row_target -= q * row_source
fn add_row_multiple(m: &mut Matrix<BigInt>, target: usize, source: usize, q: &BigInt) {
    for j in 0..m.cols {
        let delta = q * &m[(source, j)];
        m[(target, j)] -= delta;
    }
}

/// col_target -= q * col_source
fn add_col_multiple(m: &mut Matrix<BigInt>, target: usize, source: usize, q: &BigInt) {
    for i in 0..m.rows {
        let delta = q * &m[(i, source)];
        m[(i, target)] -= delta;
    }
}

fn negate_row(m: &mut Matrix<BigInt>, i: usize) {
    for j in 0..m.cols {
        let x = -&m[(i, j)];
        m[(i, j)] = x;
    }
}
