use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{RatFun, Rational};
use crate::linalg::MatQ;

/// Dense matrix of rational functions in `z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<RatFun>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![RatFun::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = RatFun::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RatFun>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(RatMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_constant(m: &MatQ) -> Self {
        RatMat {
            rows: m.rows(),
            cols: m.cols(),
            data: m.entries().iter().cloned().map(RatFun::constant).collect(),
        }
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

    pub fn get(&self, i: usize, j: usize) -> &RatFun {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFun) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RatFun] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[RatFun] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatFun::is_zero)
    }

    pub fn checked_mul(&self, rhs: &RatMat) -> Result<RatMat> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = RatMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = RatFun::zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), rhs.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.data[i * rhs.cols + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &RatMat) -> Result<RatMat> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch("difference of unequal shapes".into()));
        }
        Ok(RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// Entrywise `z -> z^p`.
    pub fn inflate(&self, p: usize) -> RatMat {
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|f| f.inflate(p)).collect(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Result<MatQ> {
        let data = self.data.iter().map(|f| f.eval(x)).collect::<Result<Vec<_>>>()?;
        MatQ::from_vec(self.rows, self.cols, data)
    }

    /// Minimum valuation at 0 over the nonzero entries.
    pub fn v0(&self) -> Result<i64> {
        let mut best: Option<i64> = None;
        for f in self.data.iter().filter(|f| !f.is_zero()) {
            let v = f.valuation0()?;
            best = Some(best.map_or(v, |b| b.min(v)));
        }
        best.ok_or(Error::ValuationOfZero)
    }

    /// Gauss-Jordan inverse over `Q(z)`.
    pub fn inverse(&self) -> Result<RatMat> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMat::identity(n);
        for c in 0..n {
            let pivot = (c..n)
                .filter(|&i| !a.get(i, c).is_zero())
                .min_by_key(|&i| a.get(i, c).degree())
                .ok_or(Error::SingularMatrix)?;
            if pivot != c {
                for j in 0..n {
                    a.data.swap(pivot * n + j, c * n + j);
                    inv.data.swap(pivot * n + j, c * n + j);
                }
            }
            let p_inv = a.get(c, c).inv()?;
            for j in 0..n {
                let v = &a.data[c * n + j] * &p_inv;
                a.data[c * n + j] = v;
                let w = &inv.data[c * n + j] * &p_inv;
                inv.data[c * n + j] = w;
            }
            for i in 0..n {
                if i == c || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in 0..n {
                    let t = &f * &a.data[c * n + j];
                    if !t.is_zero() {
                        a.data[i * n + j] = &a.data[i * n + j] - &t;
                    }
                    let u = &f * &inv.data[c * n + j];
                    if !u.is_zero() {
                        inv.data[i * n + j] = &inv.data[i * n + j] - &u;
                    }
                }
            }
        }
        Ok(inv)
    }

    /// Determinant by fraction-carrying elimination.
    pub fn det(&self) -> Result<RatFun> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = RatFun::one();
        for c in 0..n {
            let Some(pivot) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
                return Ok(RatFun::zero());
            };
            if pivot != c {
                for j in 0..n {
                    a.data.swap(pivot * n + j, c * n + j);
                }
                det = -det;
            }
            let p = a.get(c, c).clone();
            det = &det * &p;
            let p_inv = p.inv()?;
            for i in c + 1..n {
                if a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c) * &p_inv;
                for j in c..n {
                    let t = &f * &a.data[c * n + j];
                    a.data[i * n + j] = &a.data[i * n + j] - &t;
                }
            }
        }
        Ok(det)
    }

    /// Laurent coefficient matrix at `z^k`, for every `k` in `lo..=hi`.
    pub fn laurent_window(&self, lo: i64, hi: i64) -> Result<Vec<MatQ>> {
        let len = (hi - lo + 1).max(0) as usize;
        let mut out = vec![MatQ::zeros(self.rows, self.cols); len];
        if len == 0 {
            return Ok(out);
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let f = self.get(i, j);
                if f.is_zero() {
                    continue;
                }
                for (slot, c) in out.iter_mut().zip(f.laurent_coeffs(lo, hi)?) {
                    if !c.is_zero() {
                        slot.set(i, j, c);
                    }
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for RatMat {
    /// `a, b; c, d`, in the grammar accepted by the matrix parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}
