//! Helpers shared by the integration tests: data files, random systems and
//! an independent residual check.

#![allow(dead_code)]

use std::path::PathBuf;

use mahler_core::exact::{rat, Poly, RatFun, Rational};
use mahler_core::linalg::MatQ;
use mahler_core::system::{MahlerSystem, PuiseuxMatrix, RatMat};
use rand::Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

/// Whitespace-separated integer matrix, one row per line.
pub fn load_int_matrix(name: &str) -> Vec<Vec<i64>> {
    std::fs::read_to_string(data_path(name))
        .expect("data file")
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(|t| t.parse().expect("integer")).collect())
        .collect()
}

pub fn random_poly<R: Rng>(rng: &mut R, max_deg: usize, height: i64) -> Poly {
    loop {
        let deg = rng.gen_range(0..=max_deg);
        let c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-height..=height)).collect();
        let f = Poly::from_ints(&c);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn random_ratfun<R: Rng>(rng: &mut R, max_deg: usize, height: i64) -> RatFun {
    RatFun::new(random_poly(rng, max_deg, height), random_poly(rng, max_deg, height)).expect("nonzero den")
}

/// `A0 + z A1 + z^2 A2` with `A0` an integer matrix of determinant 1.
pub fn random_fuchsian<R: Rng>(rng: &mut R, m: usize) -> RatMat {
    let mut a0 = vec![vec![0i64; m]; m];
    for (i, row) in a0.iter_mut().enumerate() {
        row[i] = 1;
    }
    for _ in 0..2 * m {
        let (i, j) = (rng.gen_range(0..m), rng.gen_range(0..m));
        if i == j {
            continue;
        }
        let k = rng.gen_range(-2..=2);
        for col in 0..m {
            a0[i][col] += k * a0[j][col];
        }
    }
    let rows = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let c = [a0[i][j], rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
                    RatFun::from_poly(Poly::from_ints(&c))
                })
                .collect()
        })
        .collect();
    RatMat::from_rows(rows).expect("square")
}

fn t_pow(k: usize) -> RatFun {
    RatFun::from_poly(Poly::monomial(rat(1, 1), k))
}

fn scalar_mat(m: usize, f: &RatFun) -> RatMat {
    let mut s = RatMat::zeros(m, m);
    for i in 0..m {
        s.set(i, i, f.clone());
    }
    s
}

/// Lowest Puiseux index of `A G - phi_p(G) Λ`, or `None` when it is zero.
///
/// Works in `t = z^(1/d)` with whole rational-function matrices:
/// `t^((p-1)S) A(t^d) G'(t) - G'(t^p) Λ` where `G' = t^S G`.
pub fn residual_index(sys: &MahlerSystem, g: &PuiseuxMatrix, lambda: &MatQ) -> Option<i64> {
    let m = sys.m();
    let p = sys.p();
    let low = g.valuation()?;
    let s = (-low).max(0) as usize;
    let mut gp = RatMat::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let mut c = Vec::<Rational>::new();
            for (n, e) in g.iter() {
                let k = (n + s as i64) as usize;
                if c.len() <= k {
                    c.resize(k + 1, rat(0, 1));
                }
                c[k] = e.get(i, j).clone();
            }
            gp.set(i, j, RatFun::from_poly(Poly::from_coeffs(c)));
        }
    }
    let a_t = sys.matrix().inflate(g.d());
    let lhs = scalar_mat(m, &t_pow((p - 1) * s))
        .checked_mul(&a_t)
        .unwrap()
        .checked_mul(&gp)
        .unwrap();
    let rhs = gp.inflate(p).checked_mul(&RatMat::from_constant(lambda)).unwrap();
    let diff = lhs.checked_sub(&rhs).unwrap();
    diff.entries()
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| f.valuation0().unwrap() - (p * s) as i64)
        .min()
}
