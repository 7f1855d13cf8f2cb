use std::collections::BTreeMap;

use crate::linalg::MatQ;

/// Truncated matrix Puiseux series `sum_n E_n z^(n/d)`.
///
/// Coefficients at indices up to `known_up_to` are exact; an index in that
/// range without a stored matrix is zero. Nothing is claimed beyond it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxMatrix {
    d: usize,
    rows: usize,
    cols: usize,
    coeffs: BTreeMap<i64, MatQ>,
    known_up_to: i64,
}

impl PuiseuxMatrix {
    pub fn new(d: usize, rows: usize, cols: usize, known_up_to: i64) -> Self {
        assert!(d >= 1, "ramification index must be positive");
        PuiseuxMatrix {
            d,
            rows,
            cols,
            coeffs: BTreeMap::new(),
            known_up_to,
        }
    }

    /// The constant series `c`, exact to index `known_up_to`.
    pub fn constant(d: usize, c: MatQ, known_up_to: i64) -> Self {
        let mut s = Self::new(d, c.rows(), c.cols(), known_up_to);
        s.insert(0, c);
        s
    }

    /// Stores `E_n`; zero matrices are dropped.
    pub fn insert(&mut self, n: i64, e: MatQ) {
        assert!(
            e.rows() == self.rows && e.cols() == self.cols,
            "coefficient shape"
        );
        if e.is_zero() {
            self.coeffs.remove(&n);
        } else {
            self.coeffs.insert(n, e);
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn known_up_to(&self) -> i64 {
        self.known_up_to
    }

    /// `E_n`, or `None` past the truncation.
    pub fn coeff(&self, n: i64) -> Option<MatQ> {
        if n > self.known_up_to {
            return None;
        }
        Some(
            self.coeffs
                .get(&n)
                .cloned()
                .unwrap_or_else(|| MatQ::zeros(self.rows, self.cols)),
        )
    }

    /// Nonzero coefficients in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &MatQ)> {
        self.coeffs
            .range(..=self.known_up_to)
            .map(|(&n, m)| (n, m))
    }

    /// Lowest index carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.iter().next().map(|(n, _)| n)
    }

    /// Drops every coefficient past index `t`.
    pub fn truncate(&self, t: i64) -> Self {
        let mut out = Self::new(self.d, self.rows, self.cols, t.min(self.known_up_to));
        for (n, m) in self.iter().take_while(|(n, _)| *n <= t) {
            out.insert(n, m.clone());
        }
        out
    }

    /// `z -> z^p`: the coefficient at `n` moves to `p n`.
    pub fn phi_p(&self, p: usize) -> Self {
        let p = p as i64;
        let mut out = Self::new(self.d, self.rows, self.cols, p * (self.known_up_to + 1) - 1);
        for (n, m) in self.iter() {
            out.insert(p * n, m.clone());
        }
        out
    }
}

/// Valuation of a gauge residual, in units of `1/d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Residual {
    /// Every coefficient below `threshold` vanishes.
    Vanishes { threshold: i64 },
    /// The lowest index with a nonzero coefficient.
    NonzeroAt(i64),
}

impl Residual {
    pub fn vanishes(&self) -> bool {
        matches!(self, Residual::Vanishes { .. })
    }
}
