use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::arith::linalg::{rank, solve};
use crate::arith::{Poly, Scalar};
use crate::error::{Error, Result};

/// A square matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Scalar>>", into = "Vec<Vec<Scalar>>")]
pub struct Matrix {
    rows: Vec<Vec<Scalar>>,
}

impl TryFrom<Vec<Vec<Scalar>>> for Matrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        Matrix::new(rows)
    }
}

impl From<Matrix> for Vec<Vec<Scalar>> {
    fn from(m: Matrix) -> Self {
        m.rows
    }
}

impl Matrix {
    pub fn new(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::Input(format!("matrix is not square: {n} rows, a row of length {}", r.len())));
        }
        Ok(Matrix { rows })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&a| Scalar::from_int(a)).collect()).collect())
    }

    pub fn zero(n: usize) -> Self {
        Matrix { rows: vec![vec![Scalar::zero(); n]; n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diag(&vec![Scalar::one(); n])
    }

    pub fn diag(entries: &[Scalar]) -> Self {
        let mut m = Self::zero(entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.rows[i][i] = e.clone();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Matrix { rows: self.rows.iter().map(|r| r.iter().map(|a| a * s).collect()).collect() }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.size()).map(|i| self.rows[i][i].clone()).sum()
    }

    pub fn rank(&self) -> usize {
        rank(&self.rows)
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.size();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Scalar::zero(); n];
            e[j] = Scalar::one();
            cols.push(solve(&self.rows, &e)?);
        }
        Some(Matrix { rows: (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect() })
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, e: usize) -> Matrix {
        (0..e).fold(Matrix::identity(self.size()), |acc, _| &acc * self)
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_poly(&self, p: &Poly) -> Matrix {
        let n = self.size();
        p.coeffs().iter().rev().fold(Matrix::zero(n), |acc, c| &(&acc * self) + &Matrix::identity(n).scale(c))
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.rows.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn vec_mul(&self, w: &[Scalar]) -> Vec<Scalar> {
        (0..self.size()).map(|j| w.iter().zip(&self.rows).map(|(a, r)| a * &r[j]).sum()).collect()
    }

    /// The characteristic polynomial `det(tI - M)` together with the
    /// coefficient matrices `N_k` of `adj(tI - M) = sum_k t^k N_k`
    /// (Faddeev–LeVerrier).
    pub fn char_poly_adjugate(&self) -> (Poly, Vec<Matrix>) {
        let n = self.size();
        if n == 0 {
            return (Poly::one(), Vec::new());
        }
        let mut c = vec![Scalar::zero(); n + 1];
        c[n] = Scalar::one();
        // N_{n-1} = I, c_k = -tr(M N_k) / (n - k), N_{k-1} = M N_k + c_k I
        let mut ns = vec![Matrix::zero(n); n];
        ns[n - 1] = Matrix::identity(n);
        for k in (0..n).rev() {
            let mn = self * &ns[k];
            c[k] = -mn.trace() * Scalar::new(1, (n - k) as i64);
            if k > 0 {
                ns[k - 1] = &mn + &Matrix::identity(n).scale(&c[k]);
            }
        }
        (Poly::new(c), ns)
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, o: &Matrix) -> Matrix {
        Matrix { rows: self.rows.iter().zip(&o.rows).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, o: &Matrix) -> Matrix {
        Matrix { rows: self.rows.iter().zip(&o.rows).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect()).collect() }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&-Scalar::one())
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, o: &Matrix) -> Matrix {
        let n = self.size();
        let mut rows = vec![vec![Scalar::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for k in 0..n {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for (j, slot) in row.iter_mut().enumerate() {
                    *slot += &(a * &o.rows[k][j]);
                }
            }
        }
        Matrix { rows }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows.iter().map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
