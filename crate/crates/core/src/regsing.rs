//! Decision procedure for regular singularity at 0 and the gauge series.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::companion::{ramification_candidates, ramification_index};
use crate::error::{Error, Result};
use crate::linalg::{image, intersect, kernel, solve_right, GriddedMat, MatQ, Subspace};
use crate::system::{CoeffTable, MahlerSystem, PuiseuxMatrix, Residual};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub d: usize,
    pub nu: i64,
    pub mu: i64,
    pub c: usize,
}

impl Bounds {
    /// Number of blocks `mu - nu + 1`.
    pub fn len(&self) -> usize {
        (self.mu - self.nu + 1) as usize
    }
}

pub fn bounds(sys: &MahlerSystem, d: usize) -> Result<Bounds> {
    if !sys.admits_d(d) {
        return Err(Error::InvalidParameter(format!(
            "ramification index {d} must be positive and coprime to p = {}",
            sys.p()
        )));
    }
    let di = d as i64;
    let pm1 = sys.p() as i64 - 1;
    let nu = Integer::div_ceil(&(di * sys.v0_a()), &pm1);
    let mu = Integer::div_ceil(&(-di * sys.v0_a_inv()), &pm1);
    debug_assert!(nu <= mu);
    let c = sys.m() * (mu - nu + 1) as usize;
    Ok(Bounds { d, nu, mu, c })
}

/// `M_d`, `N_d` and their gridded packings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPair {
    pub bounds: Bounds,
    pub m: MatQ,
    pub n: MatQ,
    pub m_grid: GriddedMat,
    /// `N_d` packed by blocks; when `N_d` is the zero row this is one zero
    /// block row, which has the same kernel.
    pub n_grid: GriddedMat,
}

fn inv_mod(p: usize, d: usize) -> usize {
    (0..d).find(|&x| (x * p) % d == 1 % d).expect("p invertible mod d")
}

pub fn build_mn(sys: &MahlerSystem, d: usize) -> Result<BlockPair> {
    let b = bounds(sys, d)?;
    let (m, p) = (sys.m(), sys.p() as i64);
    let lowest = d as i64 * sys.v0_a_inv();
    let table = sys.b_coeffs(d, lowest + p * b.nu - p * b.mu, b.mu - p * b.nu)?;
    let len = b.len();

    let mut mat_m = MatQ::zeros(b.c, b.c);
    for bi in 0..len {
        for bj in 0..len {
            let k = b.nu + bi as i64 - p * (b.nu + bj as i64);
            put_block(&mut mat_m, bi, bj, m, coeff(&table, k));
        }
    }

    let n_lo = lowest + p * b.nu;
    let n_rows = b.nu - n_lo;
    let (mat_n, n_blocks) = if n_rows <= 0 {
        (MatQ::zeros(1, b.c), MatQ::zeros(m, b.c))
    } else {
        let mut mat_n = MatQ::zeros(n_rows as usize * m, b.c);
        for bi in 0..n_rows as usize {
            for bj in 0..len {
                let k = n_lo + bi as i64 - p * (b.nu + bj as i64);
                put_block(&mut mat_n, bi, bj, m, coeff(&table, k));
            }
        }
        (mat_n.clone(), mat_n)
    };

    let pinv = inv_mod(sys.p(), d) as i64;
    let di = d as i64;
    let sigma_m = (0..di)
        .map(|r| ((r - (p - 1) * b.nu) * pinv).rem_euclid(di) as usize)
        .collect();
    let sigma_n = (0..di).map(|r| ((lowest + r) * pinv).rem_euclid(di) as usize).collect();
    let m_grid = GriddedMat::with_sigma(&mat_m, d, m, sigma_m)?;
    let n_grid = GriddedMat::with_sigma(&n_blocks, d, m, sigma_n)?;
    Ok(BlockPair {
        bounds: b,
        m: mat_m,
        n: mat_n,
        m_grid,
        n_grid,
    })
}

fn coeff(table: &CoeffTable, k: i64) -> &MatQ {
    table.get(k).expect("index inside the coefficient window")
}

fn put_block(target: &mut MatQ, bi: usize, bj: usize, m: usize, block: &MatQ) {
    if block.is_zero() {
        return;
    }
    for i in 0..m {
        for j in 0..m {
            target.set(bi * m + i, bj * m + j, block.get(i, j).clone());
        }
    }
}

/// The largest `M`-invariant subspace of `ker N`, using the gridded packings.
pub fn compute_x(pair: &BlockPair) -> Result<Subspace> {
    let c = pair.bounds.c;
    let k = pair.n_grid.kernel();

    let mut neg = k.clone();
    let mut prod = pair.n_grid.clone();
    for _ in 0..c {
        prod = prod.mul(&pair.m_grid)?;
        let next = intersect(&neg, &prod.kernel())?;
        if next == neg {
            break;
        }
        neg = next;
    }

    let mut x = neg;
    let mut s = k;
    for _ in 0..c {
        if x.dim() == 0 {
            break;
        }
        let next = Subspace::span(&pair.m_grid.mul_dense(s.basis())?);
        x = intersect(&x, &next)?;
        if next == s {
            break;
        }
        s = next;
    }
    Ok(x)
}

/// Same space as [`compute_x`], with dense products and kernels only.
pub fn compute_x_dense(pair: &BlockPair) -> Result<Subspace> {
    let c = pair.bounds.c;
    let k = kernel(&pair.n);

    let mut neg = k.clone();
    let mut prod = pair.n.clone();
    for _ in 0..c {
        prod = prod.checked_mul(&pair.m)?;
        let next = intersect(&neg, &kernel(&prod))?;
        if next == neg {
            break;
        }
        neg = next;
    }

    let mut x = neg;
    let mut s = k;
    for _ in 0..c {
        if x.dim() == 0 {
            break;
        }
        let next = image(&pair.m, &s)?;
        x = intersect(&x, &next)?;
        if next == s {
            break;
        }
        s = next;
    }
    Ok(x)
}

/// `R`, the blocks `E_nu..E_mu` of a basis of `X`, and whatever has been
/// extended past `mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeSeries {
    pub bounds: Bounds,
    pub r: MatQ,
    pub r_inv: MatQ,
    pub e: BTreeMap<i64, MatQ>,
}

impl GaugeSeries {
    fn block(&self, n: i64) -> Option<&MatQ> {
        self.e.get(&n)
    }

    /// `(sum_{k + p l = n} B_k(d) E_l) R^-1` from the stored blocks.
    pub fn recurrence_at(&self, sys: &MahlerSystem, n: i64) -> Result<MatQ> {
        let b = &self.bounds;
        let p = sys.p() as i64;
        let lowest = b.d as i64 * sys.v0_a_inv();
        let l_hi = Integer::div_floor(&(n - lowest), &p);
        let m = sys.m();
        if l_hi < b.nu {
            return Ok(MatQ::zeros(m, m));
        }
        let table = sys.b_coeffs(b.d, n - p * l_hi, n - p * b.nu)?;
        self.recurrence_with(&table, sys, n, l_hi)
    }

    fn recurrence_with(&self, table: &CoeffTable, sys: &MahlerSystem, n: i64, l_hi: i64) -> Result<MatQ> {
        let m = sys.m();
        let p = sys.p() as i64;
        let mut acc = MatQ::zeros(m, m);
        for l in self.bounds.nu..=l_hi {
            let bk = coeff(table, n - p * l);
            if bk.is_zero() {
                continue;
            }
            let el = self.block(l).ok_or_else(|| {
                Error::InvalidParameter(format!("E_{l} is not known when evaluating index {n}"))
            })?;
            acc = acc.checked_add(&bk.checked_mul(el)?)?;
        }
        acc.checked_mul(&self.r_inv)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub regular_singular: bool,
    pub d: usize,
    pub bounds: Bounds,
    pub dim_x: usize,
    pub x: Subspace,
    pub lambda: Option<MatQ>,
    pub r: Option<MatQ>,
    pub series: Option<GaugeSeries>,
    pub gauge: Option<PuiseuxMatrix>,
    pub truncation: Option<i64>,
    pub residual: Option<Residual>,
}

pub fn decide_fixed_d(sys: &MahlerSystem, d: usize, basis_override: Option<&MatQ>) -> Result<Verdict> {
    let pair = build_mn(sys, d)?;
    let x = compute_x(&pair)?;
    let m = sys.m();
    assert!(x.dim() <= m, "dim X = {} exceeds m = {m}", x.dim());
    let mut verdict = Verdict {
        regular_singular: false,
        d,
        bounds: pair.bounds,
        dim_x: x.dim(),
        x,
        lambda: None,
        r: None,
        series: None,
        gauge: None,
        truncation: None,
        residual: None,
    };
    if verdict.dim_x < m {
        return Ok(verdict);
    }
    let e = match basis_override {
        Some(e) => {
            if e.rows() != pair.bounds.c || e.cols() != m || Subspace::span(e) != verdict.x {
                return Err(Error::BasisOverrideMismatch);
            }
            e.clone()
        }
        None => verdict.x.basis().clone(),
    };
    let r = solve_right(&e, &pair.m.checked_mul(&e)?)?;
    let r_inv = r.inverse()?;
    let b = pair.bounds;
    let blocks = (0..b.len())
        .map(|k| (b.nu + k as i64, e.row_slice(k * m, m)))
        .collect();
    verdict.regular_singular = true;
    verdict.lambda = Some(r_inv.clone());
    verdict.r = Some(r.clone());
    verdict.series = Some(GaugeSeries {
        bounds: b,
        r,
        r_inv,
        e: blocks,
    });
    Ok(verdict)
}

/// Extends `gs` through index `upto` and returns `sum E_n z^(n/d)`.
pub fn extend_gauge(sys: &MahlerSystem, gs: &mut GaugeSeries, upto: i64) -> Result<PuiseuxMatrix> {
    let b = gs.bounds;
    let p = sys.p() as i64;
    let m = sys.m();
    if upto > b.mu {
        let lowest = b.d as i64 * sys.v0_a_inv();
        let table = sys.b_coeffs(b.d, lowest.min(upto - p * b.nu), upto - p * b.nu)?;
        for n in b.mu + 1..=upto {
            if gs.e.contains_key(&n) {
                continue;
            }
            let l_hi = Integer::div_floor(&(n - lowest), &p);
            debug_assert!(l_hi < n);
            let en = if l_hi < b.nu {
                MatQ::zeros(m, m)
            } else {
                gs.recurrence_with(&table, sys, n, l_hi)?
            };
            gs.e.insert(n, en);
        }
    }
    let mut g = PuiseuxMatrix::new(b.d, m, m, upto);
    for (&n, en) in gs.e.range(..=upto) {
        g.insert(n, en.clone());
    }
    Ok(g)
}

/// Truncation index for a Puiseux exponent bound `order`.
pub fn truncation_index(bounds: &Bounds, order: u64) -> i64 {
    (bounds.mu + 1).max(bounds.d as i64 * order as i64)
}

fn finish(sys: &MahlerSystem, mut verdict: Verdict, order: u64) -> Result<Verdict> {
    let (Some(series), Some(lambda)) = (verdict.series.as_mut(), verdict.lambda.as_ref()) else {
        return Ok(verdict);
    };
    let t = truncation_index(&verdict.bounds, order);
    let gauge = extend_gauge(sys, series, t)?;
    let residual = sys.verify_gauge(&gauge, lambda, t)?;
    assert!(residual.vanishes(), "gauge residual {residual:?} below the contract threshold");
    verdict.gauge = Some(gauge);
    verdict.truncation = Some(t);
    verdict.residual = Some(residual);
    Ok(verdict)
}

/// Full pipeline at a given `d`, including the gauge and its residual.
pub fn decide_with_d(sys: &MahlerSystem, d: usize, order: u64) -> Result<Verdict> {
    finish(sys, decide_fixed_d(sys, d, None)?, order)
}

/// Decides regular singularity at 0. With `scan_all_d` every candidate
/// ramification index is tried in increasing order; otherwise `d` comes from
/// the companion hull. A negative scan reports the candidate with the
/// largest `dim X`, smallest `d` first.
pub fn decide(sys: &MahlerSystem, order: u64, scan_all_d: bool) -> Result<Verdict> {
    if !scan_all_d {
        let d = ramification_index(sys)?.d;
        return decide_with_d(sys, d, order);
    }
    let mut best: Option<Verdict> = None;
    for d in ramification_candidates(sys.p(), sys.m()) {
        let v = decide_fixed_d(sys, d, None)?;
        if v.regular_singular {
            return finish(sys, v, order);
        }
        if best.as_ref().is_none_or(|b| v.dim_x > b.dim_x) {
            best = Some(v);
        }
    }
    Ok(best.expect("candidate set contains 1"))
}
