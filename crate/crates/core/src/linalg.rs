//! Dense exact matrices over Q(i).
//!
//! Rank and determinant clear denominators row by row and then run
//! fraction-free (Bareiss) elimination over the Gaussian integers, so no
//! intermediate gcd reductions are needed. A purely real matrix takes an
//! integer-only path.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{input, Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return input("ragged matrix rows");
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| Scalar::from_int(rows[i][j]))
    }

    /// Column vector.
    pub fn column(v: &[Scalar]) -> Self {
        Self { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(Scalar::is_real)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(Scalar::conj).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| self[(i, i)].is_zero() && (0..i).all(|j| self[(i, j)] == -&self[(j, i)]))
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn hstack(&self, o: &Self) -> Result<Self> {
        if self.rows != o.rows {
            return input("hstack row mismatch");
        }
        Ok(Self::from_fn(self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                o[(i, j - self.cols)].clone()
            }
        }))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        // Clear denominators by row lcms of `self` and column lcms of `o`, so the
        // inner products run in Z[i] and each entry is normalized once.
        let (n, m, p) = (self.rows, self.cols, o.cols);
        let real = self.is_real() && o.is_real();
        let lhs: Vec<(Vec<GaussInt>, BigInt)> = (0..n)
            .map(|i| {
                let row = self.row(i);
                let l = row_lcm(row.iter().flat_map(|s| [&s.re, &s.im]));
                (row.iter().map(|s| (scaled(&s.re, &l), scaled(&s.im, &l))).collect(), l)
            })
            .collect();
        let rhs: Vec<(Vec<GaussInt>, BigInt)> = (0..p)
            .map(|j| {
                let col = o.col(j);
                let l = row_lcm(col.iter().flat_map(|s| [&s.re, &s.im]));
                (col.iter().map(|s| (scaled(&s.re, &l), scaled(&s.im, &l))).collect(), l)
            })
            .collect();
        Ok(Self::from_fn(n, p, |i, j| {
            let (a, la) = &lhs[i];
            let (b, lb) = &rhs[j];
            let (mut re, mut im) = (BigInt::zero(), BigInt::zero());
            for k in 0..m {
                let (x, y) = (&a[k], &b[k]);
                if x.0.is_zero() && x.1.is_zero() || y.0.is_zero() && y.1.is_zero() {
                    continue;
                }
                re += &x.0 * &y.0;
                if !real {
                    re -= &x.1 * &y.1;
                    im += &x.0 * &y.1;
                    im += &x.1 * &y.0;
                }
            }
            let den = la * lb;
            Scalar::complex(BigRational::new(re, den.clone()), BigRational::new(im, den))
        }))
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        if self.shape() != o.shape() {
            return input("matrix shape mismatch in addition");
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        if self.shape() != o.shape() {
            return input("matrix shape mismatch in subtraction");
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// Exact rank over Q(i).
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        if self.is_real() {
            let mut m = integer_rows(self);
            bareiss_int(&mut m, self.cols).0
        } else {
            let mut m = gaussian_rows(self);
            bareiss_gauss(&mut m, self.cols).0
        }
    }

    /// Exact determinant over Q(i).
    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return input("determinant of a non-square matrix");
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Scalar::one());
        }
        if self.is_real() {
            let (mut m, scale) = integer_rows_scaled(self);
            let (rank, sign) = bareiss_int(&mut m, n);
            if rank < n {
                return Ok(Scalar::zero());
            }
            let d = BigRational::new(m[n - 1][n - 1].clone() * BigInt::from(sign), BigInt::one());
            Ok(Scalar::from_rational(d / scale))
        } else {
            let (mut m, scale) = gaussian_rows_scaled(self);
            let (rank, sign) = bareiss_gauss(&mut m, n);
            if rank < n {
                return Ok(Scalar::zero());
            }
            let g = &m[n - 1][n - 1];
            let v = Scalar::complex(
                BigRational::from_integer(&g.0 * BigInt::from(sign)),
                BigRational::from_integer(&g.1 * BigInt::from(sign)),
            );
            Ok(&v / &Scalar::from_rational(scale))
        }
    }

    /// Inverse by fraction-free Gauss–Jordan over Z[i]; `None` when singular.
    pub fn inverse(&self) -> Result<Option<Self>> {
        if !self.is_square() {
            return input("inverse of a non-square matrix");
        }
        let n = self.rows;
        // A = D⁻¹ M with D = diag(row lcms), so A⁻¹ = M⁻¹ D.
        let mut lcms = Vec::with_capacity(n);
        let mut m: Vec<Vec<GaussInt>> = (0..n)
            .map(|i| {
                let l = row_lcm(self.row(i).iter().flat_map(|s| [&s.re, &s.im]));
                let mut row: Vec<GaussInt> = self.row(i).iter().map(|s| (scaled(&s.re, &l), scaled(&s.im, &l))).collect();
                row.extend((0..n).map(|j| (BigInt::from((i == j) as i32), BigInt::zero())));
                lcms.push(l);
                row
            })
            .collect();
        let one: GaussInt = (BigInt::one(), BigInt::zero());
        let mut prev = one.clone();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !g_is_zero(&m[i][k])) else {
                return Ok(None);
            };
            m.swap(p, k);
            let pivot_row = m[k].clone();
            let piv = pivot_row[k].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == k {
                    continue;
                }
                let lead = std::mem::take(&mut row[k]);
                for j in (0..2 * n).filter(|&j| j != k) {
                    let a = g_mul(&piv, &row[j]);
                    let v = if g_is_zero(&lead) {
                        a
                    } else {
                        let b = g_mul(&lead, &pivot_row[j]);
                        (a.0 - b.0, a.1 - b.1)
                    };
                    row[j] = if prev == one { v } else { g_div_exact(&v, &prev) };
                }
            }
            prev = piv;
        }
        // Every diagonal entry is now the same scaled determinant.
        let d = Scalar::complex(BigRational::from_integer(prev.0.clone()), BigRational::from_integer(prev.1.clone()));
        let dinv = d.inv()?;
        Ok(Some(Self::from_fn(n, n, |i, j| {
            let (re, im) = &m[i][n + j];
            let v = Scalar::complex(BigRational::from_integer(re * &lcms[j]), BigRational::from_integer(im * &lcms[j]));
            &v * &dinv
        })))
    }

    /// Pfaffian of a skew-symmetric matrix by skew Gaussian elimination:
    /// `Pf(A) = a_{12} Pf(S)` where `S` is the Schur complement of the
    /// leading 2x2 block after bringing a nonzero entry into position (1,2).
    pub fn pfaffian(&self) -> Result<Scalar> {
        if !self.is_skew() {
            return input("Pfaffian of a non-skew matrix");
        }
        let n = self.rows;
        if n % 2 == 1 {
            return Ok(Scalar::zero());
        }
        let mut a = self.clone();
        let mut pf = Scalar::one();
        let mut k = 0;
        while k < n {
            let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) else {
                return Ok(Scalar::zero());
            };
            if j != k + 1 {
                a.swap_rows(j, k + 1);
                a.swap_cols(j, k + 1);
                pf = -pf;
            }
            let piv = a[(k, k + 1)].clone();
            pf = &pf * &piv;
            let inv = piv.inv()?;
            for i in k + 2..n {
                for jj in k + 2..n {
                    let t = &(&a[(i, k + 1)] * &a[(k, jj)]) - &(&a[(i, k)] * &a[(k + 1, jj)]);
                    let t = &t * &inv;
                    a[(i, jj)] -= &t;
                }
            }
            k += 2;
        }
        Ok(pf)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Kronecker-style outer product `u v^T` of two column vectors.
    pub fn outer(u: &[Scalar], v: &[Scalar]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| &u[i] * &v[j])
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    /// Panics on shape mismatch; see [`Matrix::try_mul`].
    fn mul(self, o: &Matrix) -> Matrix {
        self.try_mul(o).expect("matrix product shape mismatch")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, o: &Matrix) -> Matrix {
        self.try_add(o).expect("matrix sum shape mismatch")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, o: &Matrix) -> Matrix {
        self.try_sub(o).expect("matrix difference shape mismatch")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Scalar>>::deserialize(d)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Fraction-free elimination kernels.

type GaussInt = (BigInt, BigInt);

fn row_lcm<'a>(row: impl Iterator<Item = &'a BigRational>) -> BigInt {
    row.fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

fn scaled(r: &BigRational, l: &BigInt) -> BigInt {
    r.numer() * (l / r.denom())
}

fn integer_rows_scaled(m: &Matrix) -> (Vec<Vec<BigInt>>, BigRational) {
    let mut scale = BigRational::one();
    let rows = (0..m.rows)
        .map(|i| {
            let l = row_lcm(m.row(i).iter().map(|s| &s.re));
            let row = m.row(i).iter().map(|s| scaled(&s.re, &l)).collect();
            scale *= BigRational::from_integer(l);
            row
        })
        .collect();
    (rows, scale)
}

fn integer_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    integer_rows_scaled(m).0
}

fn gaussian_rows_scaled(m: &Matrix) -> (Vec<Vec<GaussInt>>, BigRational) {
    let mut scale = BigRational::one();
    let rows = (0..m.rows)
        .map(|i| {
            let l = row_lcm(m.row(i).iter().flat_map(|s| [&s.re, &s.im]));
            let row = m.row(i).iter().map(|s| (scaled(&s.re, &l), scaled(&s.im, &l))).collect();
            scale *= BigRational::from_integer(l);
            row
        })
        .collect();
    (rows, scale)
}

fn gaussian_rows(m: &Matrix) -> Vec<Vec<GaussInt>> {
    gaussian_rows_scaled(m).0
}

/// Returns `(rank, sign of the row permutation)`. On full rank the last
/// pivot holds the determinant (up to that sign).
fn bareiss_int(m: &mut [Vec<BigInt>], cols: usize) -> (usize, i32) {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut sign = 1;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            sign = -sign;
        }
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = &piv * &row[j] - &lead * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = piv;
        r += 1;
    }
    (r, sign)
}

fn g_mul(a: &GaussInt, b: &GaussInt) -> GaussInt {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn g_is_zero(a: &GaussInt) -> bool {
    a.0.is_zero() && a.1.is_zero()
}

/// Exact division in Z[i]; the divisor must divide the dividend.
fn g_div_exact(a: &GaussInt, b: &GaussInt) -> GaussInt {
    if b.1.is_zero() {
        return (&a.0 / &b.0, &a.1 / &b.0);
    }
    let n = &b.0 * &b.0 + &b.1 * &b.1;
    let re = &a.0 * &b.0 + &a.1 * &b.1;
    let im = &a.1 * &b.0 - &a.0 * &b.1;
    debug_assert!((&re % &n).is_zero() && (&im % &n).is_zero());
    (re / &n, im / n)
}

fn bareiss_gauss(m: &mut [Vec<GaussInt>], cols: usize) -> (usize, i32) {
    let rows = m.len();
    let one: GaussInt = (BigInt::one(), BigInt::zero());
    let mut prev = one.clone();
    let mut r = 0;
    let mut sign = 1;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !g_is_zero(&m[i][c])) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            sign = -sign;
        }
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            if g_is_zero(&lead) {
                if prev != one {
                    for j in c + 1..cols {
                        let v = g_mul(&piv, &row[j]);
                        row[j] = g_div_exact(&v, &prev);
                    }
                } else {
                    for j in c + 1..cols {
                        row[j] = g_mul(&piv, &row[j]);
                    }
                }
                continue;
            }
            for j in c + 1..cols {
                let a = g_mul(&piv, &row[j]);
                let b = g_mul(&lead, &pivot_row[j]);
                let v = (a.0 - b.0, a.1 - b.1);
                row[j] = if prev == one { v } else { g_div_exact(&v, &prev) };
            }
        }
        prev = piv;
        r += 1;
    }
    (r, sign)
}
