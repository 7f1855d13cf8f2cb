//! Machine-readable report.
//!
//! Rationals are strings `"num/den"` in lowest terms with a positive
//! denominator, or `"num"` for integers. Matrices are lists of rows.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::exact::Rational;
use crate::linalg::MatQ;
use crate::system::{PuiseuxMatrix, Residual};

/// A rational in canonical string form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Q;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational string \"num/den\" in lowest terms")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Q, E> {
                parse_rational(v).map(Q).ok_or_else(|| E::invalid_value(de::Unexpected::Str(v), &self))
            }
        }
        d.deserialize_str(V)
    }
}

/// Parses the canonical form only: `-?[0-9]+(/[0-9]+)?`, reduced, with a
/// denominator above 1 when present.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    let plain = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !plain(digits) || !den.is_none_or(plain) {
        return None;
    }
    let value = match den {
        Some(d) => {
            let d: num_bigint::BigInt = d.parse().ok()?;
            if d <= num_bigint::BigInt::from(1) {
                return None;
            }
            Rational::new(num.parse().ok()?, d)
        }
        None => Rational::from_integer(num.parse().ok()?),
    };
    (value.to_string() == s).then_some(value)
}

pub type MatrixJson = Vec<Vec<Q>>;

pub fn matrix_json(m: &MatQ) -> MatrixJson {
    (0..m.rows())
        .map(|i| m.row(i).iter().cloned().map(Q).collect())
        .collect()
}

pub fn matrix_from_json(rows: &MatrixJson) -> crate::Result<MatQ> {
    MatQ::from_rows(rows.iter().map(|r| r.iter().map(|q| q.0.clone()).collect()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputEcho {
    pub p: usize,
    pub matrix: String,
    pub example: Option<String>,
    pub order: u64,
    pub d_override: Option<usize>,
    pub scan_all_d: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeJson {
    /// Ramification index: entry `n` of `coeffs` multiplies `z^(n/d)`.
    pub d: usize,
    /// Last index whose coefficient is exact.
    pub truncation: i64,
    /// Nonzero coefficients only.
    pub coeffs: BTreeMap<i64, MatrixJson>,
}

impl GaugeJson {
    pub fn from_series(g: &PuiseuxMatrix) -> Self {
        GaugeJson {
            d: g.d(),
            truncation: g.known_up_to(),
            coeffs: g.iter().map(|(n, e)| (n, matrix_json(e))).collect(),
        }
    }
}

/// Every coefficient of `A G - phi_p(G) Λ` below `at_least` vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResidualJson {
    pub at_least: i64,
}

impl ResidualJson {
    pub fn from_residual(r: &Residual) -> Self {
        match *r {
            Residual::Vanishes { threshold } => ResidualJson { at_least: threshold },
            Residual::NonzeroAt(n) => ResidualJson { at_least: n },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub input: InputEcho,
    pub regular_singular: bool,
    pub d: usize,
    pub nu: i64,
    pub mu: i64,
    pub c: usize,
    #[serde(rename = "dimX")]
    pub dim_x: usize,
    /// Basis of the invariant subspace, one vector per entry.
    pub x_basis: Vec<Vec<Q>>,
    #[serde(rename = "Lambda")]
    pub lambda: Option<MatrixJson>,
    #[serde(rename = "R")]
    pub r: Option<MatrixJson>,
    pub gauge: Option<GaugeJson>,
    pub residual_valuation: Option<ResidualJson>,
    pub elapsed_us: u64,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("3/4"), Some(rat(3, 4)));
        assert_eq!(parse_rational("-7"), Some(rat(-7, 1)));
        assert_eq!(parse_rational("0"), Some(rat(0, 1)));
        for bad in ["2/4", "1/1", "3/-4", "+1", "-0", "1/0", "", "/2", "1.5", " 1", "01"] {
            assert_eq!(parse_rational(bad), None, "{bad}");
        }
    }

    #[test]
    fn matrix_round_trip() {
        let m = MatQ::from_rows(vec![vec![rat(1, 2), rat(-3, 1)], vec![rat(0, 1), rat(5, 7)]]).unwrap();
        let json = serde_json::to_string(&matrix_json(&m)).unwrap();
        assert_eq!(json, r#"[["1/2","-3"],["0","5/7"]]"#);
        let back: MatrixJson = serde_json::from_str(&json).unwrap();
        assert_eq!(matrix_from_json(&back).unwrap(), m);
        assert!(serde_json::from_str::<MatrixJson>(r#"[["2/4"]]"#).is_err());
    }
}
