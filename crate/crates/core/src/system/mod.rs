//! The Mahler system `phi_p(Y) = A Y` and the series data attached to it.

mod puiseux;
mod ratmat;

use num_integer::Integer;

pub use puiseux::{PuiseuxMatrix, Residual};
pub use ratmat::RatMat;

use crate::error::{Error, Result};
use crate::linalg::MatQ;

/// A p-Mahler system with its inverse matrix and valuations cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MahlerSystem {
    p: usize,
    a: RatMat,
    a_inv: RatMat,
    v0_a: i64,
    v0_a_inv: i64,
}

impl MahlerSystem {
    pub fn new(p: usize, a: RatMat) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidParameter(format!("Mahler exponent p = {p} must be >= 2")));
        }
        if !a.is_square() || a.rows() == 0 {
            return Err(Error::DimensionMismatch(format!(
                "system matrix must be square and nonempty, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let a_inv = a.inverse()?;
        let v0_a = a.v0()?;
        let v0_a_inv = a_inv.v0()?;
        debug_assert!(v0_a + v0_a_inv <= 0);
        Ok(MahlerSystem {
            p,
            a,
            a_inv,
            v0_a,
            v0_a_inv,
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn matrix(&self) -> &RatMat {
        &self.a
    }

    pub fn inverse(&self) -> &RatMat {
        &self.a_inv
    }

    pub fn v0_a(&self) -> i64 {
        self.v0_a
    }

    pub fn v0_a_inv(&self) -> i64 {
        self.v0_a_inv
    }

    /// Whether `d` is a ramification index compatible with `p`.
    pub fn admits_d(&self, d: usize) -> bool {
        d >= 1 && d.gcd(&self.p) == 1
    }

    fn check_d(&self, d: usize) -> Result<()> {
        if !self.admits_d(d) {
            return Err(Error::InvalidParameter(format!(
                "ramification index {d} must be positive and coprime to p = {}",
                self.p
            )));
        }
        Ok(())
    }

    /// Laurent coefficients `B_k(d)` of `B(d) = phi_d(A)^-1` for `lo <= k <= hi`.
    ///
    /// `B_{dk}(d)` is the `k`-th coefficient of `A^-1` and `B_k(d)` vanishes
    /// when `d` does not divide `k`.
    pub fn b_coeffs(&self, d: usize, lo: i64, hi: i64) -> Result<CoeffTable> {
        self.check_d(d)?;
        if lo > hi {
            return Err(Error::MalformedRange { lo, hi });
        }
        let m = self.m();
        let di = d as i64;
        let mut coeffs = vec![MatQ::zeros(m, m); (hi - lo + 1) as usize];
        let (klo, khi) = (Integer::div_ceil(&lo, &di), Integer::div_floor(&hi, &di));
        if klo <= khi {
            for (k, c) in (klo..=khi).zip(self.a_inv.laurent_window(klo, khi)?) {
                coeffs[(k * di - lo) as usize] = c;
            }
        }
        Ok(CoeffTable {
            d,
            lo,
            hi,
            lowest: di * self.v0_a_inv,
            zero: MatQ::zeros(m, m),
            coeffs,
        })
    }

    /// Residual of a candidate gauge: the lowest index of `A G - phi_p(G) Λ`
    /// below `d v0(A) + T + 1`, where `T` is the truncation index of `G`.
    ///
    /// Past that threshold the truncation itself perturbs the product, so
    /// nothing is claimed there.
    pub fn verify_gauge(&self, g: &PuiseuxMatrix, lambda: &MatQ, t: i64) -> Result<Residual> {
        let m = self.m();
        if g.rows() != m || g.cols() != m || lambda.rows() != m || lambda.cols() != m {
            return Err(Error::DimensionMismatch("gauge and system sizes differ".into()));
        }
        let g = g.truncate(t);
        let d = g.d() as i64;
        let p = self.p as i64;
        let threshold = d * self.v0_a + t + 1;
        let Some(vg) = g.valuation() else {
            return Ok(Residual::Vanishes { threshold });
        };
        let start = (d * self.v0_a + vg).min(p * vg);
        if start >= threshold {
            return Ok(Residual::Vanishes { threshold });
        }
        // A_k for v0(A) <= k with d k + vg < threshold
        let k_hi = Integer::div_floor(&(threshold - 1 - vg), &d);
        let a_coeffs = self.a.laurent_window(self.v0_a, k_hi.max(self.v0_a))?;
        for i in start..threshold {
            let mut acc = MatQ::zeros(m, m);
            for (n, e) in g.iter() {
                let shift = i - n;
                if shift.rem_euclid(d) != 0 {
                    continue;
                }
                let k = shift / d;
                if k < self.v0_a || k > k_hi {
                    continue;
                }
                let ak = &a_coeffs[(k - self.v0_a) as usize];
                if !ak.is_zero() {
                    acc = acc.checked_add(&ak.checked_mul(e)?)?;
                }
            }
            if i.rem_euclid(p) == 0 {
                if let Some(e) = g.coeff(i / p) {
                    acc = acc.checked_sub(&e.checked_mul(lambda)?)?;
                }
            }
            if !acc.is_zero() {
                return Ok(Residual::NonzeroAt(i));
            }
        }
        Ok(Residual::Vanishes { threshold })
    }
}

/// Window of coefficient matrices `B_k(d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    d: usize,
    lo: i64,
    hi: i64,
    lowest: i64,
    zero: MatQ,
    coeffs: Vec<MatQ>,
}

impl CoeffTable {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    /// `B_k(d)`. Indices below the valuation of `B(d)` or not divisible by
    /// `d` are known zeros; other indices outside the window are `None`.
    pub fn get(&self, k: i64) -> Option<&MatQ> {
        if k < self.lowest || k.rem_euclid(self.d as i64) != 0 {
            return Some(&self.zero);
        }
        if k < self.lo || k > self.hi {
            return None;
        }
        Some(&self.coeffs[(k - self.lo) as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Poly, RatFun};

    fn rf(num: &[i64], den: &[i64]) -> RatFun {
        RatFun::new(Poly::from_ints(num), Poly::from_ints(den)).unwrap()
    }

    fn rudin_shapiro() -> MahlerSystem {
        let a = RatMat::from_rows(vec![
            vec![rf(&[1], &[2]), rf(&[1], &[2])],
            vec![rf(&[1], &[0, 2]), rf(&[-1], &[0, 2])],
        ])
        .unwrap();
        MahlerSystem::new(2, a).unwrap()
    }

    fn scalar(c: i64) -> MahlerSystem {
        MahlerSystem::new(2, RatMat::from_rows(vec![vec![RatFun::from_int(c)]]).unwrap()).unwrap()
    }

    #[test]
    fn construction_caches_valuations() {
        let rs = rudin_shapiro();
        assert_eq!(rs.v0_a(), -1);
        assert_eq!(rs.v0_a_inv(), 0);
        assert_eq!(
            rs.matrix().checked_mul(rs.inverse()).unwrap(),
            RatMat::identity(2)
        );
        let s = scalar(2);
        assert_eq!((s.v0_a(), s.v0_a_inv()), (0, 0));
    }

    #[test]
    fn construction_errors() {
        let sing = RatMat::from_rows(vec![vec![RatFun::zero()]]).unwrap();
        assert_eq!(MahlerSystem::new(2, sing), Err(Error::SingularMatrix));
        let a = RatMat::identity(1);
        assert!(matches!(MahlerSystem::new(1, a), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn b_coeffs_examples() {
        let s = scalar(2);
        let t = s.b_coeffs(1, -2, 3).unwrap();
        assert_eq!(t.get(0).unwrap(), &MatQ::from_vec(1, 1, vec![crate::exact::rat(1, 2)]).unwrap());
        for k in [-2, -1, 1, 2, 3] {
            assert!(t.get(k).unwrap().is_zero());
        }

        let rs = rudin_shapiro();
        let t = rs.b_coeffs(3, -3, 7).unwrap();
        assert_eq!(t.get(0).unwrap(), &MatQ::from_i64_rows(&[&[1, 0], &[1, 0]]));
        assert_eq!(t.get(3).unwrap(), &MatQ::from_i64_rows(&[&[0, 1], &[0, -1]]));
        for k in [-3, -2, -1, 1, 2, 4, 5, 6, 7] {
            assert!(t.get(k).unwrap().is_zero());
        }
        assert!(t.get(9).is_none());
        assert!(rs.b_coeffs(2, 0, 1).is_err());
    }

    #[test]
    fn b_coeffs_windows_agree_on_overlap() {
        let rs = rudin_shapiro();
        let a = rs.b_coeffs(1, -2, 4).unwrap();
        let b = rs.b_coeffs(1, 2, 8).unwrap();
        for k in 2..=4 {
            assert_eq!(a.get(k), b.get(k));
        }
    }

    #[test]
    fn verify_constant_system() {
        let s = scalar(2);
        let g = PuiseuxMatrix::constant(1, MatQ::identity(1), 5);
        let lambda = MatQ::from_i64_rows(&[&[2]]);
        assert!(s.verify_gauge(&g, &lambda, 5).unwrap().vanishes());
        let wrong = MatQ::from_i64_rows(&[&[3]]);
        assert_eq!(s.verify_gauge(&g, &wrong, 5).unwrap(), Residual::NonzeroAt(0));
    }
}
