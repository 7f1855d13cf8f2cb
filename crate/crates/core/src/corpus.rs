//! Example systems with known verdicts, and a brute-force oracle for `X`.

use crate::error::{Error, Result};
use crate::exact::{Poly, RatFun};
use crate::linalg::{image, intersect, kernel, MatQ, Subspace};
use crate::regsing::bounds;
use crate::system::{MahlerSystem, RatMat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expected {
    pub regular_singular: bool,
    pub d: Option<usize>,
    pub dim_x: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedSystem {
    pub name: &'static str,
    pub sys: MahlerSystem,
    pub expected: Option<Expected>,
}

fn poly(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

/// `sum_k sign * z^k` over the listed exponents.
fn sparse(terms: &[(i64, usize)]) -> Poly {
    let deg = terms.iter().map(|t| t.1).max().unwrap_or(0);
    let mut c = vec![0; deg + 1];
    for &(a, k) in terms {
        c[k] += a;
    }
    Poly::from_ints(&c)
}

fn ratfun(num: Poly, den: Poly) -> RatFun {
    RatFun::new(num, den).expect("nonzero denominator")
}

/// The order-2 3-Mahler equation
/// `z^3 (1 - z^3 + z^6)(1 - z^7 - z^10) y(z^9) - (1 - z^28 - z^31 - z^37 - z^40) y(z^3)
/// + z^6 (1 + z)(1 - z^21 - z^30) y = 0` as a companion system.
/// Regular singular with `d = 2` and `dim X = 2`.
pub fn example_order2() -> NamedSystem {
    let common = &poly(&[1, 0, 0, -1, 0, 0, 1]) * &sparse(&[(1, 0), (-1, 7), (-1, 10)]);
    let low = &(&sparse(&[(1, 3)]) * &poly(&[1, 1])) * &sparse(&[(1, 0), (-1, 21), (-1, 30)]);
    let a21 = ratfun(-low, common.clone());
    let a22 = ratfun(
        sparse(&[(1, 0), (-1, 28), (-1, 31), (-1, 37), (-1, 40)]),
        &sparse(&[(1, 3)]) * &common,
    );
    let a = RatMat::from_rows(vec![vec![RatFun::zero(), RatFun::one()], vec![a21, a22]]).unwrap();
    NamedSystem {
        name: "order2",
        sys: MahlerSystem::new(3, a).expect("invertible"),
        expected: Some(Expected {
            regular_singular: true,
            d: Some(2),
            dim_x: Some(2),
        }),
    }
}

/// The 3-Mahler system with the inverse of the order-2 example's matrix,
/// which is not regular singular.
pub fn example_order2_inverse() -> NamedSystem {
    let a = example_order2().sys.inverse().clone();
    NamedSystem {
        name: "order2-inverse",
        sys: MahlerSystem::new(3, a).expect("invertible"),
        expected: Some(Expected {
            regular_singular: false,
            d: None,
            dim_x: None,
        }),
    }
}

/// `(1/2) [[1, 1], [1/z, -1/z]]` with `p = 2`. Not regular singular;
/// `dim X = 1` at both `d = 1` and `d = 3`.
pub fn rudin_shapiro() -> NamedSystem {
    let half = RatFun::constant(crate::exact::rat(1, 2));
    let a = RatMat::from_rows(vec![
        vec![half.clone(), half],
        vec![ratfun(poly(&[1]), poly(&[0, 2])), ratfun(poly(&[-1]), poly(&[0, 2]))],
    ])
    .unwrap();
    NamedSystem {
        name: "rudin-shapiro",
        sys: MahlerSystem::new(2, a).expect("invertible"),
        expected: Some(Expected {
            regular_singular: false,
            d: None,
            dim_x: Some(1),
        }),
    }
}

/// The 3x3 matrix whose inverse drives the Baum-Sweet variant.
pub fn baum_sweet_matrix() -> RatMat {
    let p = |c: &[i64]| RatFun::from_poly(poly(c));
    RatMat::from_rows(vec![
        vec![p(&[1]), p(&[0, 1]), p(&[0])],
        vec![p(&[0, 1]), p(&[0]), p(&[0])],
        vec![p(&[0]), p(&[1]), p(&[1, 1])],
    ])
    .unwrap()
}

/// `phi_2(Y) = B^-1 Y` with `B` from [`baum_sweet_matrix`]. Not regular
/// singular.
pub fn baum_sweet_variant() -> NamedSystem {
    let a = baum_sweet_matrix().inverse().expect("invertible");
    NamedSystem {
        name: "baum-sweet-variant",
        sys: MahlerSystem::new(2, a).expect("invertible"),
        expected: Some(Expected {
            regular_singular: false,
            d: None,
            dim_x: None,
        }),
    }
}

/// `phi_p(y) = a y`, always regular singular.
pub fn order1_homogeneous(a: RatFun, p: usize) -> Result<NamedSystem> {
    if a.is_zero() {
        return Err(Error::InvalidParameter("order-1 coefficient must be nonzero".into()));
    }
    Ok(NamedSystem {
        name: "order1",
        sys: MahlerSystem::new(p, RatMat::from_rows(vec![vec![a]])?)?,
        expected: Some(Expected {
            regular_singular: true,
            d: None,
            dim_x: Some(1),
        }),
    })
}

/// `q_-1 + q_0 y + q_1 phi_p(y) = 0` as the system
/// `[[-q_0/q_1, -q_-1/q_1], [0, 1]]`. No expected verdict is attached.
pub fn order1_inhomogeneous(qm1: Poly, q0: Poly, q1: Poly, p: usize) -> Result<NamedSystem> {
    if q0.is_zero() || q1.is_zero() {
        return Err(Error::InvalidParameter("q_0 and q_1 must be nonzero".into()));
    }
    let a = RatMat::from_rows(vec![
        vec![RatFun::new(-q0, q1.clone())?, RatFun::new(-qm1, q1)?],
        vec![RatFun::zero(), RatFun::one()],
    ])?;
    Ok(NamedSystem {
        name: "order1-inhomogeneous",
        sys: MahlerSystem::new(p, a)?,
        expected: None,
    })
}

fn order1_named(name: &'static str, a: RatFun, p: usize) -> NamedSystem {
    NamedSystem {
        name,
        ..order1_homogeneous(a, p).expect("nonzero coefficient")
    }
}

/// Every built-in system, in a fixed order.
pub fn all() -> Vec<NamedSystem> {
    let mut inhom = order1_inhomogeneous(poly(&[-1]), poly(&[-1]), poly(&[1]), 2).expect("valid");
    // computed by this implementation, kept as a regression value
    inhom.expected = Some(Expected {
        regular_singular: true,
        d: Some(1),
        dim_x: Some(2),
    });
    vec![
        example_order2(),
        example_order2_inverse(),
        rudin_shapiro(),
        baum_sweet_variant(),
        order1_named("order1-inverse-z", ratfun(poly(&[1]), poly(&[0, 1])), 2),
        order1_named("order1-constant", RatFun::from_int(2), 2),
        order1_named("order1-z3", RatFun::from_poly(poly(&[0, 0, 0, 1, 1])), 2),
        inhom,
    ]
}

pub fn names() -> Vec<&'static str> {
    all().iter().map(|s| s.name).collect()
}

pub fn by_name(name: &str) -> Result<NamedSystem> {
    all()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownExample(name.to_string()))
}

/// `dim` of the intersection of `M^n ker N` over `-window <= n <= window`,
/// rebuilding `M` and `N` from the Laurent expansion of `A^-1` and using
/// dense operations with no early exit.
pub fn oracle_dim_naive(sys: &MahlerSystem, d: usize, window: usize) -> Result<usize> {
    let b = bounds(sys, d)?;
    if window < b.c {
        return Err(Error::InvalidParameter(format!("window {window} below c = {}", b.c)));
    }
    let (m, p, di) = (sys.m(), sys.p() as i64, d as i64);
    let low = sys.v0_a_inv();
    let high = (b.mu - p * b.nu).div_euclid(di);
    let ainv = sys.inverse().laurent_window(low, high.max(low))?;
    let coeff = |k: i64| -> MatQ {
        if k.rem_euclid(di) != 0 || k / di < low || k / di > high {
            MatQ::zeros(m, m)
        } else {
            ainv[(k / di - low) as usize].clone()
        }
    };
    let block_matrix = |row_start: i64, row_count: usize| -> MatQ {
        let cols = b.c;
        let mut out = MatQ::zeros(row_count * m, cols);
        for bi in 0..row_count {
            for bj in 0..b.len() {
                let blk = coeff(row_start + bi as i64 - p * (b.nu + bj as i64));
                for i in 0..m {
                    for j in 0..m {
                        out.set(bi * m + i, bj * m + j, blk.get(i, j).clone());
                    }
                }
            }
        }
        out
    };
    let mm = block_matrix(b.nu, b.len());
    let n_lo = di * low + p * b.nu;
    let nn = if n_lo < b.nu {
        block_matrix(n_lo, (b.nu - n_lo) as usize)
    } else {
        MatQ::zeros(1, b.c)
    };

    let ker = kernel(&nn);
    let mut x = ker.clone();
    let mut prod = nn;
    let mut img = ker;
    for _ in 0..window {
        prod = prod.checked_mul(&mm)?;
        x = intersect(&x, &kernel(&prod))?;
        img = image(&mm, &img)?;
        x = intersect(&x, &img)?;
    }
    Ok(x.dim())
}

/// Spans of a basis override given as explicit vectors.
pub fn span_vectors(ambient: usize, vectors: &[Vec<i64>]) -> Subspace {
    let cols: Vec<Vec<_>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| crate::exact::rat(x, 1)).collect())
        .collect();
    Subspace::span_of(ambient, &cols)
}
