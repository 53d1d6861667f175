//! Dense integer matrices with exact determinant, rank and characteristic polynomial.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::poly::RatPoly;
use super::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.iter().flatten().map(|&v| BigInt::from(v)).collect() })
    }

    /// Columns given as images of basis vectors.
    pub fn from_columns(cols: &[Vec<i64>]) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("matrix has {} columns, vector {}", self.cols, v.len())));
        }
        Ok((0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum()).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch("matrix difference".into()));
        }
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Fraction-free Gaussian elimination; returns the echelon form and its rank.
    fn bareiss(&self) -> (Vec<Vec<BigInt>>, usize, bool) {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut prev = BigInt::one();
        let mut rank = 0;
        let mut negated = false;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| !a[r][col].is_zero()) else { continue };
            if p != rank {
                a.swap(p, rank);
                negated = !negated;
            }
            for r in rank + 1..self.rows {
                for c in col + 1..self.cols {
                    let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                    a[r][c] = v / &prev;
                }
                a[r][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
        }
        (a, rank, negated)
    }

    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        if self.rows == 0 {
            return Ok(BigInt::one());
        }
        let (a, rank, negated) = self.bareiss();
        if rank < self.rows {
            return Ok(BigInt::zero());
        }
        let d = a[self.rows - 1][self.cols - 1].clone();
        Ok(if negated { -d } else { d })
    }

    pub fn rank(&self) -> usize {
        self.bareiss().1
    }

    /// Characteristic polynomial `det(xI − M)` by Berkowitz's division-free algorithm.
    pub fn charpoly(&self) -> Result<RatPoly> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("charpoly of a non-square matrix".into()));
        }
        let n = self.rows;
        // `v` holds coefficients highest degree first.
        let mut v: Vec<BigInt> = vec![BigInt::one()];
        for r in 0..n {
            // Leading principal block of size r+1: A = M[0..r][0..r], R = M[r][0..r], C = M[0..r][r], a = M[r][r].
            let a_rr = self.get(r, r).clone();
            let mut toeplitz_col: Vec<BigInt> = vec![BigInt::one(), -a_rr];
            let mut col: Vec<BigInt> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 0..r {
                let rc: BigInt = (0..r).map(|j| self.get(r, j) * &col[j]).sum();
                toeplitz_col.push(-rc);
                col = (0..r).map(|i| (0..r).map(|j| self.get(i, j) * &col[j]).sum()).collect();
            }
            let mut next = vec![BigInt::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, vj) in v.iter().enumerate() {
                    if i >= j && i - j < toeplitz_col.len() {
                        *slot += &toeplitz_col[i - j] * vj;
                    }
                }
            }
            v = next;
        }
        v.reverse();
        Ok(RatPoly::from_bigints(&v))
    }

    /// `p(M)` by Horner's rule; `p` must have integer coefficients.
    pub fn eval_poly(&self, p: &RatPoly) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("polynomial of a non-square matrix".into()));
        }
        let cs = p.to_bigints().ok_or_else(|| Error::Precondition("non-integral polynomial".into()))?;
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in cs.iter().rev() {
            acc = acc.checked_mul(self)?;
            for i in 0..n {
                acc.data[i * n + i] += c;
            }
        }
        Ok(acc)
    }

    /// Companion matrix of a monic integer polynomial (subdiagonal ones, last column −coeffs).
    pub fn companion(p: &RatPoly) -> Result<Self> {
        let cs = p.to_bigints().ok_or_else(|| Error::Precondition("non-integral polynomial".into()))?;
        let n = p.deg();
        if n == 0 || !cs[n].is_one() {
            return Err(Error::Precondition("companion matrix needs a monic polynomial of positive degree".into()));
        }
        let mut m = Self::zeros(n, n);
        for i in 1..n {
            m.set(i, i - 1, BigInt::one());
        }
        for (i, c) in cs.iter().take(n).enumerate() {
            m.set(i, n - 1, -c.clone());
        }
        Ok(m)
    }

    /// Basis of the rational kernel, scaled to primitive integer vectors.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        let mut a: Vec<Vec<Rational>> = (0..self.rows).map(|i| (0..self.cols).map(|j| Rational::from_integer(self.get(i, j).clone())).collect()).collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(p) = (row..self.rows).find(|&r| !a[r][col].is_zero()) else { continue };
            a.swap(p, row);
            let inv = a[row][col].recip();
            for x in a[row].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..self.rows {
                if r != row && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let pivot_row = a[row].clone();
                    for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                        *x -= p * &f;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Rational::zero(); self.cols];
                v[fc] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a[r][fc].clone();
                }
                let den = super::rational::common_denominator(v.iter());
                let ints: Vec<BigInt> = v.iter().map(|q| (q * Rational::from_integer(den.clone())).to_integer()).collect();
                let g = ints.iter().fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
                ints.into_iter().map(|x| x / &g).collect()
            })
            .collect()
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix dimensions")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect()).collect();
        rows.serialize(s)
    }
}
