use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Poly, Rational};
use crate::error::{Error, Result};

/// Rational function `num / den` in lowest terms with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = (num.exact_div(&g)?, den.exact_div(&g)?);
        let lc = den.leading().unwrap().recip();
        Ok(RatFun {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn z() -> Self {
        Self::from_poly(Poly::z())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn from_poly(num: Poly) -> Self {
        RatFun {
            num,
            den: Poly::one(),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Constant value, if the function is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.coeff(0))
    }

    /// Maximum of the numerator and denominator degrees.
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    /// Order of vanishing at 0: `v0(num) - v0(den)`.
    pub fn valuation0(&self) -> Result<i64> {
        let vn = self.num.valuation().ok_or(Error::ValuationOfZero)?;
        let vd = self.den.valuation().unwrap();
        Ok(vn as i64 - vd as i64)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        let lc = self.num.leading().unwrap().recip();
        Ok(RatFun {
            num: self.den.scale(&lc),
            den: self.num.scale(&lc),
        })
    }

    pub fn checked_div(&self, rhs: &RatFun) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFun::one();
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole(x.to_string()));
        }
        Ok(self.num.eval(x) / d)
    }

    /// The Mahler substitution `z -> z^p`.
    pub fn inflate(&self, p: usize) -> Self {
        RatFun {
            num: self.num.inflate(p),
            den: self.den.inflate(p),
        }
    }

    /// Coefficients `c_lo ..= c_hi` of the Laurent expansion at 0.
    ///
    /// Writes `f = z^v P/Q` with `P(0), Q(0) != 0` and runs the linear
    /// recurrence induced by `Q` on the power series `P/Q`.
    pub fn laurent_coeffs(&self, lo: i64, hi: i64) -> Result<Vec<Rational>> {
        if lo > hi {
            return Err(Error::MalformedRange { lo, hi });
        }
        let len = (hi - lo + 1) as usize;
        if self.is_zero() {
            return Ok(vec![Rational::zero(); len]);
        }
        let vn = self.num.valuation().unwrap();
        let vd = self.den.valuation().unwrap();
        let v = vn as i64 - vd as i64;
        let mut out = vec![Rational::zero(); len];
        if hi < v {
            return Ok(out);
        }
        let p = self.num.div_z_pow(vn);
        let q = self.den.div_z_pow(vd);
        let top = (hi - v) as usize;
        let series: Vec<Rational> = if q.is_one() {
            (0..=top).map(|k| p.coeff(k)).collect()
        } else {
            let q0_inv = q.coeff(0).recip();
            let qc = q.coeffs();
            let mut s: Vec<Rational> = Vec::with_capacity(top + 1);
            for k in 0..=top {
                let mut acc = p.coeff(k);
                for j in 1..qc.len().min(k + 1) {
                    if !qc[j].is_zero() {
                        acc -= &qc[j] * &s[k - j];
                    }
                }
                s.push(acc * &q0_inv);
            }
            s
        };
        for (slot, n) in out.iter_mut().zip(lo..=hi) {
            if n >= v {
                *slot = series[(n - v) as usize].clone();
            }
        }
        Ok(out)
    }
}

impl Add<&RatFun> for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFun::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        // Henrici: only the shared part of the denominators can cancel.
        let g = self.den.gcd(&rhs.den);
        let b = self.den.exact_div(&g).unwrap();
        let d = rhs.den.exact_div(&g).unwrap();
        let num = &(&self.num * &d) + &(&rhs.num * &b);
        if num.is_zero() {
            return RatFun::zero();
        }
        let den = &b * &rhs.den;
        if g.is_one() {
            return RatFun { num, den };
        }
        let h = num.gcd(&g);
        RatFun {
            num: num.exact_div(&h).unwrap(),
            den: den.exact_div(&h).unwrap(),
        }
    }
}

impl Sub<&RatFun> for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul<&RatFun> for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.exact_div(&g1).unwrap() * &rhs.num.exact_div(&g2).unwrap();
        let den = &self.den.exact_div(&g2).unwrap() * &rhs.den.exact_div(&g1).unwrap();
        let lc = den.leading().unwrap().recip();
        if lc.is_one() {
            RatFun { num, den }
        } else {
            RatFun {
                num: num.scale(&lc),
                den: den.scale(&lc),
            }
        }
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: RatFun) -> RatFun {
        &self + &rhs
    }
}

impl Sub for RatFun {
    type Output = RatFun;
    fn sub(self, rhs: RatFun) -> RatFun {
        &self - &rhs
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: RatFun) -> RatFun {
        &self * &rhs
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFun {
    fn one() -> Self {
        RatFun::one()
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        RatFun::from_poly(p)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
