//! Multi-modular gcd of integer polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62`, descending.
fn primes() -> impl Iterator<Item = u64> {
    let mut n = (1u64 << 62) - 1;
    std::iter::from_fn(move || {
        while !is_prime(n) {
            n -= 2;
        }
        let p = n;
        n -= 2;
        Some(p)
    })
}

fn reduce(v: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    v.iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect()
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over `F_p`, coefficients in increasing degree.
fn gcd_mod(mut x: Vec<u64>, mut y: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut x);
    trim(&mut y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let inv = inv_mod(*y.last().unwrap(), p);
        while x.len() >= y.len() {
            let c = mul_mod(*x.last().unwrap(), inv, p);
            let shift = x.len() - y.len();
            for (i, yi) in y.iter().enumerate() {
                let t = mul_mod(c, *yi, p);
                x[i + shift] = (x[i + shift] + p - t) % p;
            }
            trim(&mut x);
            if x.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    if let Some(&lead) = x.last() {
        let inv = inv_mod(lead, p);
        for c in x.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    x
}

fn symmetric(x: &BigInt, modulus: &BigInt) -> BigInt {
    if x * 2 > *modulus {
        x - modulus
    } else {
        x.clone()
    }
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() && !content.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &content;
        }
    }
    if v.last().is_some_and(Signed::is_negative) {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

/// Whether `b` divides `a` in `Z[z]`.
fn divides(b: &[BigInt], a: &[BigInt]) -> bool {
    let lb = b.last().expect("nonzero divisor");
    let mut r = a.to_vec();
    while r.len() >= b.len() {
        let (q, rem) = r.last().unwrap().div_rem(lb);
        if !rem.is_zero() {
            return false;
        }
        let shift = r.len() - b.len();
        for (i, bi) in b.iter().enumerate() {
            r[i + shift] -= &q * bi;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r.is_empty()
}

/// Primitive gcd with positive leading coefficient of two nonzero primitive
/// integer polynomials, by Chinese remaindering over word-sized primes.
pub(super) fn gcd_primitive(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (la, lb) = (a.last().unwrap(), b.last().unwrap());
    let gamma = la.gcd(lb);
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::zero();
    let mut deg = usize::MAX;
    for p in primes() {
        let pb = BigInt::from(p);
        if (la % &pb).is_zero() || (lb % &pb).is_zero() {
            continue;
        }
        let g = gcd_mod(reduce(a, p), reduce(b, p), p);
        let dg = g.len() - 1;
        if dg == 0 {
            return vec![BigInt::one()];
        }
        if dg > deg {
            continue;
        }
        let gm = reduce(std::slice::from_ref(&gamma), p)[0];
        let g: Vec<u64> = g.iter().map(|&c| mul_mod(c, gm, p)).collect();
        if dg < deg {
            deg = dg;
            acc = g.iter().map(|&c| symmetric(&BigInt::from(c), &pb)).collect();
            modulus = pb;
            continue;
        }
        let m_inv = inv_mod(reduce(std::slice::from_ref(&modulus), p)[0], p);
        let next_modulus = &modulus * &pb;
        let mut changed = false;
        for (x, &r) in acc.iter_mut().zip(&g) {
            let cur = reduce(std::slice::from_ref(x), p)[0];
            let t = mul_mod((r + p - cur) % p, m_inv, p);
            if t != 0 {
                let lifted = (&*x + &modulus * t).mod_floor(&next_modulus);
                *x = symmetric(&lifted, &next_modulus);
                changed = true;
            }
        }
        modulus = next_modulus;
        if !changed {
            let cand = primitive(acc.clone());
            if divides(&cand, a) && divides(&cand, b) {
                return cand;
            }
        }
    }
    unreachable!("prime iterator is infinite")
}
