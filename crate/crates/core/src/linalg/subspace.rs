use num_traits::{One, Zero};

use super::MatQ;
use crate::error::{Error, Result};
use crate::exact::Rational;

/// Subspace of `Q^n` held in reduced column-echelon form.
///
/// Column `k` of the basis has a 1 in row `pivots[k]` and every other basis
/// column vanishes there; pivots increase strictly. The representation is
/// canonical, so `==` on `Subspace` is equality of spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: MatQ,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of the columns of `vectors`.
    pub fn span(vectors: &MatQ) -> Self {
        let ambient = vectors.rows();
        let (red, pivots) = vectors.transpose().rref();
        let basis = red.row_slice(0, pivots.len()).transpose();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn span_of(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        Self::span(&MatQ::from_columns(ambient, vectors))
    }

    pub fn full(n: usize) -> Self {
        Subspace {
            ambient: n,
            basis: MatQ::identity(n),
            pivots: (0..n).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        Subspace {
            ambient: n,
            basis: MatQ::zeros(n, 0),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis(&self) -> &MatQ {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        // the coordinates of v must be its entries at the pivot rows
        let mut residual = v.to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            let c = v[p].clone();
            if c.is_zero() {
                continue;
            }
            for (i, r) in residual.iter_mut().enumerate() {
                let b = self.basis.get(i, k);
                if !b.is_zero() {
                    *r -= &c * b;
                }
            }
        }
        residual.iter().all(Zero::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient
            && (0..self.dim()).all(|k| other.contains(&self.basis.column(k)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        check_ambient(self, other)?;
        Ok(Subspace::span(&self.basis.hcat(&other.basis)?))
    }
}

fn check_ambient(a: &Subspace, b: &Subspace) -> Result<()> {
    if a.ambient != b.ambient {
        return Err(Error::DimensionMismatch(format!(
            "ambient dimensions {} and {}",
            a.ambient, b.ambient
        )));
    }
    Ok(())
}

/// Right kernel `{x : M x = 0}`.
pub fn kernel(m: &MatQ) -> Subspace {
    let n = m.cols();
    let (red, pivots) = m.rref();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors: Vec<Vec<Rational>> = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|free| {
            let mut v = vec![Rational::zero(); n];
            v[free] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -red.get(row, free).clone();
            }
            v
        })
        .collect();
    Subspace::span_of(n, &vectors)
}

/// `{M x : x in S}`.
pub fn image(m: &MatQ, s: &Subspace) -> Result<Subspace> {
    if m.cols() != s.ambient {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix applied to a subspace of Q^{}",
            m.rows(),
            m.cols(),
            s.ambient
        )));
    }
    Ok(Subspace::span(&m.checked_mul(&s.basis)?))
}

/// `S1 ∩ S2`, via the kernel of `[B1 | -B2]`.
pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    check_ambient(a, b)?;
    if a.dim() == 0 || b.dim() == 0 {
        return Ok(Subspace::zero(a.ambient));
    }
    if a == b {
        return Ok(a.clone());
    }
    let neg_b = b.basis.scale(&-Rational::one());
    let k = kernel(&a.basis.hcat(&neg_b)?);
    let coords = k.basis.row_slice(0, a.dim());
    Ok(Subspace::span(&a.basis.checked_mul(&coords)?))
}
