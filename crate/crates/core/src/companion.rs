//! Cyclic vectors, companion form, and the ramification index read off the
//! Newton lower hull of the companion equation.

use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::{interpolate, lagrange_bound, RatFun, Rational};
use crate::linalg::MatQ;
use crate::system::{MahlerSystem, RatMat};

/// Gauge `P` with `phi_p(P) A P^-1` companion, its last row `q`, and the
/// base point `z0` where `P(z0) = I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionForm {
    pub gauge: RatMat,
    pub q: Vec<RatFun>,
    pub z0: Rational,
}

impl CompanionForm {
    /// Companion matrix with ones on the superdiagonal and last row `q`.
    pub fn companion_matrix(&self) -> RatMat {
        let m = self.q.len();
        let mut c = RatMat::zeros(m, m);
        for i in 0..m.saturating_sub(1) {
            c.set(i, i + 1, RatFun::one());
        }
        for (j, qj) in self.q.iter().enumerate() {
            c.set(m - 1, j, qj.clone());
        }
        c
    }

    /// Checks `phi_p(P) A P^-1 = companion(q)` and `P(z0) = I` exactly.
    pub fn verify(&self, sys: &MahlerSystem) -> Result<bool> {
        let lhs = self
            .gauge
            .inflate(sys.p())
            .checked_mul(sys.matrix())?
            .checked_mul(&self.gauge.inverse()?)?;
        let at_z0 = self.gauge.eval(&self.z0)?;
        Ok(lhs == self.companion_matrix() && at_z0 == MatQ::identity(sys.m()))
    }
}

/// Integer base point above every root modulus of `det(A)`'s numerator and
/// of the entry denominators, clamped to at least 2.
pub fn pick_z0(sys: &MahlerSystem) -> Result<Rational> {
    let a = sys.matrix();
    let mut bound = lagrange_bound(a.det()?.num())?;
    for f in a.entries() {
        let b = lagrange_bound(f.den())?;
        if b > bound {
            bound = b;
        }
    }
    Ok(bound.ceil().max(Rational::from_integer(2.into())))
}

/// Cyclic-vector gauge: interpolates a polynomial row `r` with
/// `r(z0^(p^i)) = e_(i+1) A(z0)^-1 ... A(z0^(p^(i-1)))^-1`, then stacks
/// `r_(i+1) = phi_p(r_i) A`.
pub fn cyclic_gauge(sys: &MahlerSystem) -> Result<CompanionForm> {
    let m = sys.m();
    let p = sys.p();
    let a = sys.matrix();
    let z0 = pick_z0(sys)?;

    let mut points = Vec::with_capacity(m);
    let mut x = z0.clone();
    for _ in 0..m {
        points.push(x.clone());
        x = num_traits::pow(x, p);
    }

    // row i of `chain` after i steps is e_(i+1) A(x_0)^-1 ... A(x_(i-1))^-1
    let mut targets: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut chain = MatQ::identity(m);
    for (i, xi) in points.iter().enumerate() {
        targets.push(chain.row(i).to_vec());
        if i + 1 < m {
            let at = a.eval(xi).map_err(|_| Error::BadBasePoint(xi.to_string()))?;
            let inv = at.inverse().map_err(|_| Error::BadBasePoint(xi.to_string()))?;
            chain = &chain * &inv;
        }
    }

    let r: Vec<RatFun> = (0..m)
        .map(|j| {
            let pts: Vec<(Rational, Rational)> = points
                .iter()
                .zip(&targets)
                .map(|(x, t)| (x.clone(), t[j].clone()))
                .collect();
            interpolate(&pts).map(RatFun::from_poly)
        })
        .collect::<Result<_>>()?;

    let mut rows = vec![r];
    for i in 0..m - 1 {
        let next = row_times(&inflate_row(&rows[i], p), a);
        rows.push(next);
    }
    let last = row_times(&inflate_row(&rows[m - 1], p), a);
    let gauge = RatMat::from_rows(rows)?;
    let gauge_inv = gauge
        .inverse()
        .map_err(|_| Error::BadBasePoint(z0.to_string()))?;
    let q = row_times(&last, &gauge_inv);
    Ok(CompanionForm { gauge, q, z0 })
}

fn inflate_row(row: &[RatFun], p: usize) -> Vec<RatFun> {
    row.iter().map(|f| f.inflate(p)).collect()
}

fn row_times(row: &[RatFun], a: &RatMat) -> Vec<RatFun> {
    (0..a.cols())
        .map(|j| {
            row.iter()
                .enumerate()
                .filter(|(k, f)| !f.is_zero() && !a.get(*k, j).is_zero())
                .fold(RatFun::zero(), |acc, (k, f)| &acc + &(f * a.get(k, j)))
        })
        .collect()
}

/// Lower convex envelope of a planar point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hull {
    pub vertices: Vec<(i64, i64)>,
    /// Slopes between consecutive vertices, strictly increasing.
    pub slopes: Vec<Rational>,
}

/// Monotone-chain lower hull. Points sharing an abscissa keep the lowest
/// ordinate; collinear interior points are dropped.
pub fn lower_hull(points: &[(i64, i64)]) -> Hull {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup_by(|b, a| a.0 == b.0);
    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(pts.len());
    for pt in pts {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 as i128 - o.0 as i128) * (pt.1 as i128 - o.1 as i128)
                - (a.1 as i128 - o.1 as i128) * (pt.0 as i128 - o.0 as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let slopes = hull
        .windows(2)
        .map(|w| Rational::new((w[1].1 - w[0].1).into(), (w[1].0 - w[0].0).into()))
        .collect();
    Hull {
        vertices: hull,
        slopes,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullResult {
    pub hull: Hull,
    pub companion: CompanionForm,
    pub d: usize,
}

/// Hull points `(p^i, v0(q_i))` for nonzero `q_i`, plus `(p^m, 0)`.
pub fn hull_points(p: usize, q: &[RatFun]) -> Result<Vec<(i64, i64)>> {
    let pow = |i: usize| -> Result<i64> {
        (p as i64)
            .checked_pow(i as u32)
            .ok_or_else(|| Error::InvalidParameter(format!("{p}^{i} overflows")))
    };
    let mut points = Vec::with_capacity(q.len() + 1);
    for (i, qi) in q.iter().enumerate() {
        if !qi.is_zero() {
            points.push((pow(i)?, qi.valuation0()?));
        }
    }
    points.push((pow(q.len())?, 0));
    Ok(points)
}

/// lcm of the slope denominators that are coprime to `p` (1 if none).
pub fn ramification_from_hull(hull: &Hull, p: usize) -> usize {
    hull.slopes
        .iter()
        .filter_map(|s| {
            let den = s.denom().abs();
            let den: usize = den.try_into().ok()?;
            (den.gcd(&p) == 1).then_some(den)
        })
        .fold(1usize, |acc, den| acc.lcm(&den))
}

/// Ramification index of a gauge transformation, from the companion form.
pub fn ramification_index(sys: &MahlerSystem) -> Result<HullResult> {
    let companion = cyclic_gauge(sys)?;
    let points = hull_points(sys.p(), &companion.q)?;
    let hull = lower_hull(&points);
    let d = ramification_from_hull(&hull, sys.p());
    let bound = (sys.p() as u64).saturating_pow(sys.m() as u32) - 1;
    assert!(
        d >= 1 && (d as u64) <= bound && d.gcd(&sys.p()) == 1,
        "ramification index {d} outside 1..={bound} or not coprime to p"
    );
    Ok(HullResult { hull, companion, d })
}

/// Candidate ramification indices `1 <= d <= p^m - 1` coprime to `p`.
pub fn ramification_candidates(p: usize, m: usize) -> Vec<usize> {
    let top = p.saturating_pow(m as u32) - 1;
    (1..=top).filter(|d| d.gcd(&p) == 1).collect()
}
