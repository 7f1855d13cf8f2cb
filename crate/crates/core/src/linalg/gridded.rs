//! d-gridded block matrices.
//!
//! A block matrix with `m x m` blocks is d-gridded with permutation `sigma`
//! when block `(i, j)` vanishes unless `j ≡ sigma(i mod d) (mod d)`. Each
//! residue class `r` of block rows then only meets the block columns of class
//! `sigma(r)`, and the matrix splits into `d` independent dense pieces.
//! Residues and block indices are 0-based here.

use num_traits::Zero;

use super::{kernel, MatQ, Subspace};
use crate::error::{Error, Result};
use crate::exact::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GriddedMat {
    d: usize,
    block: usize,
    block_rows: usize,
    block_cols: usize,
    sigma: Vec<usize>,
    /// `classes[r]` packs the blocks `(i, j)` with `i ≡ r`, `j ≡ sigma[r]`,
    /// both in increasing order.
    classes: Vec<MatQ>,
}

/// Block indices `< count` congruent to `r` mod `d`.
fn class_members(count: usize, d: usize, r: usize) -> impl Iterator<Item = usize> {
    (r..count).step_by(d)
}

fn class_len(count: usize, d: usize, r: usize) -> usize {
    if r >= count {
        0
    } else {
        (count - r).div_ceil(d)
    }
}

fn block_is_zero(m: &MatQ, bi: usize, bj: usize, b: usize) -> bool {
    (0..b).all(|i| (0..b).all(|j| m.get(bi * b + i, bj * b + j).is_zero()))
}

fn check_shape(m: &MatQ, d: usize, block: usize) -> Result<(usize, usize)> {
    if d == 0 || block == 0 {
        return Err(Error::InvalidParameter("grid modulus and block size must be positive".into()));
    }
    if m.rows() % block != 0 || m.cols() % block != 0 {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix is not made of {block}x{block} blocks",
            m.rows(),
            m.cols()
        )));
    }
    Ok((m.rows() / block, m.cols() / block))
}

impl GriddedMat {
    /// Detects the grid permutation of a dense block matrix and packs it.
    ///
    /// Residue classes without any nonzero block are matched to the unused
    /// column classes in increasing order; the zero matrix gets the identity.
    pub fn from_dense(m: &MatQ, d: usize, block: usize) -> Result<Self> {
        let (br, bc) = check_shape(m, d, block)?;
        let mut sigma: Vec<Option<usize>> = vec![None; d];
        let mut owner: Vec<Option<usize>> = vec![None; d];
        for bi in 0..br {
            for bj in 0..bc {
                if block_is_zero(m, bi, bj, block) {
                    continue;
                }
                let (r, c) = (bi % d, bj % d);
                match (sigma[r], owner[c]) {
                    (None, None) => {
                        sigma[r] = Some(c);
                        owner[c] = Some(r);
                    }
                    (Some(sc), _) if sc == c => {}
                    _ => {
                        return Err(Error::NotGridded(format!(
                            "block ({bi}, {bj}) breaks the residue pattern mod {d}"
                        )))
                    }
                }
            }
        }
        let mut free_cols = (0..d).filter(|c| owner[*c].is_none());
        let sigma: Vec<usize> = sigma
            .into_iter()
            .map(|s| s.unwrap_or_else(|| free_cols.next().expect("bijection")))
            .collect();
        Self::with_sigma(m, d, block, sigma)
    }

    /// Packs `m` under a known permutation, checking that every block
    /// outside the pattern vanishes.
    pub fn with_sigma(m: &MatQ, d: usize, block: usize, sigma: Vec<usize>) -> Result<Self> {
        let (br, bc) = check_shape(m, d, block)?;
        let mut seen = vec![false; d];
        if sigma.len() != d || sigma.iter().any(|&c| c >= d || std::mem::replace(&mut seen[c], true)) {
            return Err(Error::InvalidParameter(format!("{sigma:?} is not a permutation of 0..{d}")));
        }
        for bi in 0..br {
            for bj in 0..bc {
                if bj % d != sigma[bi % d] && !block_is_zero(m, bi, bj, block) {
                    return Err(Error::NotGridded(format!(
                        "block ({bi}, {bj}) is nonzero outside the permutation pattern"
                    )));
                }
            }
        }
        let classes = (0..d)
            .map(|r| {
                let c = sigma[r];
                let rows: Vec<usize> = class_members(br, d, r).collect();
                let cols: Vec<usize> = class_members(bc, d, c).collect();
                let mut piece = MatQ::zeros(rows.len() * block, cols.len() * block);
                for (pi, &bi) in rows.iter().enumerate() {
                    for (pj, &bj) in cols.iter().enumerate() {
                        for i in 0..block {
                            for j in 0..block {
                                let v = m.get(bi * block + i, bj * block + j);
                                if !v.is_zero() {
                                    piece.set(pi * block + i, pj * block + j, v.clone());
                                }
                            }
                        }
                    }
                }
                piece
            })
            .collect();
        Ok(GriddedMat {
            d,
            block,
            block_rows: br,
            block_cols: bc,
            sigma,
            classes,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn block_size(&self) -> usize {
        self.block
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn rows(&self) -> usize {
        self.block_rows * self.block
    }

    pub fn cols(&self) -> usize {
        self.block_cols * self.block
    }

    pub fn class(&self, r: usize) -> &MatQ {
        &self.classes[r]
    }

    pub fn to_dense(&self) -> MatQ {
        let b = self.block;
        let mut out = MatQ::zeros(self.rows(), self.cols());
        for r in 0..self.d {
            let piece = &self.classes[r];
            for (pi, bi) in class_members(self.block_rows, self.d, r).enumerate() {
                for (pj, bj) in class_members(self.block_cols, self.d, self.sigma[r]).enumerate() {
                    for i in 0..b {
                        for j in 0..b {
                            let v = piece.get(pi * b + i, pj * b + j);
                            if !v.is_zero() {
                                out.set(bi * b + i, bj * b + j, v.clone());
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Product of gridded matrices, class by class; the permutation of the
    /// result is `rhs.sigma ∘ self.sigma`.
    pub fn mul(&self, rhs: &GriddedMat) -> Result<GriddedMat> {
        if self.d != rhs.d || self.block != rhs.block || self.block_cols != rhs.block_rows {
            return Err(Error::DimensionMismatch(format!(
                "gridded product of {}x{} (d={}) and {}x{} (d={})",
                self.rows(),
                self.cols(),
                self.d,
                rhs.rows(),
                rhs.cols(),
                rhs.d
            )));
        }
        let sigma: Vec<usize> = self.sigma.iter().map(|&c| rhs.sigma[c]).collect();
        let classes = (0..self.d)
            .map(|r| self.classes[r].checked_mul(&rhs.classes[self.sigma[r]]))
            .collect::<Result<Vec<_>>>()?;
        Ok(GriddedMat {
            d: self.d,
            block: self.block,
            block_rows: self.block_rows,
            block_cols: rhs.block_cols,
            sigma,
            classes,
        })
    }

    /// Product with a dense matrix whose row count equals `self.cols()`.
    pub fn mul_dense(&self, x: &MatQ) -> Result<MatQ> {
        if x.rows() != self.cols() {
            return Err(Error::DimensionMismatch("gridded-dense product".into()));
        }
        let b = self.block;
        let mut out = MatQ::zeros(self.rows(), x.cols());
        for r in 0..self.d {
            let col_blocks: Vec<usize> = class_members(self.block_cols, self.d, self.sigma[r]).collect();
            let row_blocks: Vec<usize> = class_members(self.block_rows, self.d, r).collect();
            if col_blocks.is_empty() || row_blocks.is_empty() {
                continue;
            }
            let mut gathered = MatQ::zeros(col_blocks.len() * b, x.cols());
            for (pj, &bj) in col_blocks.iter().enumerate() {
                for i in 0..b {
                    for c in 0..x.cols() {
                        gathered.set(pj * b + i, c, x.get(bj * b + i, c).clone());
                    }
                }
            }
            let prod = self.classes[r].checked_mul(&gathered)?;
            for (pi, &bi) in row_blocks.iter().enumerate() {
                for i in 0..b {
                    for c in 0..x.cols() {
                        out.set(bi * b + i, c, prod.get(pi * b + i, c).clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// Kernel, computed independently on each column class and interleaved.
    pub fn kernel(&self) -> Subspace {
        let b = self.block;
        let n = self.cols();
        let mut inverse = vec![0; self.d];
        for (r, &c) in self.sigma.iter().enumerate() {
            inverse[c] = r;
        }
        let mut vectors = Vec::new();
        for c in 0..self.d {
            let col_blocks: Vec<usize> = class_members(self.block_cols, self.d, c).collect();
            if col_blocks.is_empty() {
                continue;
            }
            let piece = &self.classes[inverse[c]];
            let local = kernel(piece);
            for k in 0..local.dim() {
                let mut v = vec![Rational::zero(); n];
                for (pj, &bj) in col_blocks.iter().enumerate() {
                    for i in 0..b {
                        v[bj * b + i] = local.basis().get(pj * b + i, k).clone();
                    }
                }
                vectors.push(v);
            }
        }
        Subspace::span_of(n, &vectors)
    }

    pub fn class_sizes(&self) -> Vec<(usize, usize)> {
        (0..self.d)
            .map(|r| {
                (
                    class_len(self.block_rows, self.d, r) * self.block,
                    class_len(self.block_cols, self.d, self.sigma[r]) * self.block,
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn block_diag() -> MatQ {
        MatQ::from_i64_rows(&[
            &[1, 2, 0, 0, 0, 0],
            &[3, 4, 0, 0, 0, 0],
            &[0, 0, 5, 0, 0, 0],
            &[0, 0, 0, 6, 0, 0],
            &[0, 0, 0, 0, 7, 8],
            &[0, 0, 0, 0, 0, 9],
        ])
    }

    #[test]
    fn block_diagonal_is_identity_gridded() {
        let g = GriddedMat::from_dense(&block_diag(), 3, 2).unwrap();
        assert_eq!(g.sigma(), &[0, 1, 2]);
        assert_eq!(g.to_dense(), block_diag());
    }

    #[test]
    fn zero_matrix_gets_identity_permutation() {
        let g = GriddedMat::from_dense(&MatQ::zeros(8, 6), 2, 2).unwrap();
        assert_eq!(g.sigma(), &[0, 1]);
        assert_eq!(g.kernel(), Subspace::full(6));
    }

    #[test]
    fn rejects_non_gridded() {
        // blocks (0,0) and (0,1) both nonzero with d = 2
        let m = MatQ::from_i64_rows(&[&[1, 1], &[0, 0]]);
        assert!(matches!(GriddedMat::from_dense(&m, 2, 1), Err(Error::NotGridded(_))));
        assert!(matches!(
            GriddedMat::with_sigma(&MatQ::identity(2), 2, 1, vec![1, 0]),
            Err(Error::NotGridded(_))
        ));
    }

    #[test]
    fn identity_gridded_kernel_is_zero() {
        let g = GriddedMat::from_dense(&MatQ::identity(6), 2, 1).unwrap();
        assert_eq!(g.kernel(), Subspace::zero(6));
        let prod = g.mul(&g).unwrap();
        assert_eq!(prod.sigma(), &[0, 1]);
        assert_eq!(prod.to_dense(), MatQ::identity(6));
    }

    #[test]
    fn swap_pattern_composes() {
        // sigma = (0 -> 1, 1 -> 0) on 4 scalar blocks
        let m = MatQ::from_i64_rows(&[&[0, 1, 0, 2], &[3, 0, 4, 0], &[0, 5, 0, 0], &[6, 0, 0, 0]]);
        let g = GriddedMat::from_dense(&m, 2, 1).unwrap();
        assert_eq!(g.sigma(), &[1, 0]);
        let sq = g.mul(&g).unwrap();
        assert_eq!(sq.sigma(), &[0, 1]);
        assert_eq!(sq.to_dense(), &m * &m);
        assert_eq!(g.mul_dense(&MatQ::identity(4)).unwrap(), m);
    }
}
