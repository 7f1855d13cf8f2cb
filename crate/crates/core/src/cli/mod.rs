//! Command-line front end: input parsing, the run, and report rendering.

mod parse;
mod report;

use std::fmt::Write as _;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use num_integer::Integer;

pub use parse::{parse_matrix, MAX_DEGREE, MAX_DEPTH, MAX_DIGITS, MAX_DIM, MAX_EXPONENT};
pub use report::{
    matrix_from_json, matrix_json, parse_rational, GaugeJson, InputEcho, MatrixJson, Report, ResidualJson, Q,
};

use crate::corpus;
use crate::error::{Error, Result};
use crate::regsing::{decide, decide_with_d};
use crate::system::MahlerSystem;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Decide whether a p-Mahler system phi_p(Y) = A Y is regular singular at 0.
#[derive(Debug, Parser)]
#[command(name = "mahler", version)]
pub struct Args {
    /// Mahler exponent p >= 2 (required with --matrix).
    #[arg(long)]
    pub p: Option<usize>,
    /// File holding the matrix A, rows separated by ';' and entries by ','.
    #[arg(long, conflicts_with = "example", required_unless_present = "example")]
    pub matrix: Option<std::path::PathBuf>,
    /// Built-in example system.
    #[arg(long)]
    pub example: Option<String>,
    /// Compute the gauge for every Puiseux exponent up to this bound.
    #[arg(long, default_value_t = 10)]
    pub order: u64,
    /// Ramification index to use instead of the companion hull.
    #[arg(long, conflicts_with = "scan_all_d")]
    pub d: Option<usize>,
    /// Try every admissible ramification index.
    #[arg(long)]
    pub scan_all_d: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputDoc {
    pub p: usize,
    pub matrix_text: String,
    pub example: Option<String>,
    pub order: u64,
    pub d_override: Option<usize>,
    pub scan_all_d: bool,
    pub format: Format,
}

impl InputDoc {
    /// Resolves `--matrix` or `--example` into a document.
    pub fn from_args(args: &Args) -> Result<Self> {
        let (p, matrix_text) = match (&args.example, &args.matrix) {
            (Some(name), _) => {
                let named = corpus::by_name(name)?;
                let p = named.sys.p();
                if args.p.is_some_and(|q| q != p) {
                    return Err(Error::InvalidParameter(format!("example {name} has p = {p}")));
                }
                (p, named.sys.matrix().to_string())
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
                let p = args
                    .p
                    .ok_or_else(|| Error::InvalidParameter("--p is required with --matrix".into()))?;
                (p, text)
            }
            (None, None) => return Err(Error::InvalidParameter("give --matrix or --example".into())),
        };
        Ok(InputDoc {
            p,
            matrix_text,
            example: args.example.clone(),
            order: args.order,
            d_override: args.d,
            scan_all_d: args.scan_all_d,
            format: args.format,
        })
    }
}

pub fn run(doc: &InputDoc) -> Result<Report> {
    let start = Instant::now();
    if doc.p < 2 {
        return Err(Error::InvalidParameter(format!("p = {} must be at least 2", doc.p)));
    }
    if let Some(d) = doc.d_override {
        if d == 0 || d.gcd(&doc.p) != 1 {
            return Err(Error::InvalidParameter(format!("d = {d} must be positive and coprime to p = {}", doc.p)));
        }
    }
    let a = parse_matrix(&doc.matrix_text)?;
    let sys = MahlerSystem::new(doc.p, a)?;
    let verdict = match doc.d_override {
        Some(d) => decide_with_d(&sys, d, doc.order)?,
        None => decide(&sys, doc.order, doc.scan_all_d)?,
    };
    let basis = verdict.x.basis();
    Ok(Report {
        input: InputEcho {
            p: doc.p,
            matrix: sys.matrix().to_string(),
            example: doc.example.clone(),
            order: doc.order,
            d_override: doc.d_override,
            scan_all_d: doc.scan_all_d,
        },
        regular_singular: verdict.regular_singular,
        d: verdict.d,
        nu: verdict.bounds.nu,
        mu: verdict.bounds.mu,
        c: verdict.bounds.c,
        dim_x: verdict.dim_x,
        x_basis: (0..basis.cols())
            .map(|k| basis.column(k).into_iter().map(Q).collect())
            .collect(),
        lambda: verdict.lambda.as_ref().map(matrix_json),
        r: verdict.r.as_ref().map(matrix_json),
        gauge: verdict.gauge.as_ref().map(GaugeJson::from_series),
        residual_valuation: verdict.residual.as_ref().map(ResidualJson::from_residual),
        elapsed_us: start.elapsed().as_micros() as u64,
    })
}

/// 2 for bad input, 3 for a singular system matrix, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SingularMatrix => 3,
        Error::Parse { .. }
        | Error::DimensionMismatch(_)
        | Error::InvalidParameter(_)
        | Error::UnknownExample(_)
        | Error::DivisionByZeroPoly => 2,
        _ => 1,
    }
}

fn fmt_matrix(rows: &MatrixJson) -> String {
    rows.iter()
        .map(|r| r.iter().map(|q| q.0.to_string()).collect::<Vec<_>>().join(", "))
        .collect::<Vec<_>>()
        .join("; ")
}

fn fmt_exponent(n: i64, d: usize) -> String {
    let q = crate::exact::rat(n, d as i64);
    if q.is_integer() {
        q.to_string()
    } else {
        format!("({q})")
    }
}

pub fn render_text(r: &Report) -> String {
    let mut s = String::new();
    let verdict = if r.regular_singular { "regular singular at 0" } else { "not regular singular at 0" };
    let _ = writeln!(s, "p = {}", r.input.p);
    let _ = writeln!(s, "A = {}", r.input.matrix);
    let _ = writeln!(s, "verdict: {verdict}");
    let _ = writeln!(s, "d = {}, nu = {}, mu = {}, c = {}, dim X = {}", r.d, r.nu, r.mu, r.c, r.dim_x);
    if let Some(l) = &r.lambda {
        let _ = writeln!(s, "Lambda = {}", fmt_matrix(l));
    }
    if let Some(g) = &r.gauge {
        let _ = writeln!(s, "gauge, exact through z^{}:", fmt_exponent(g.truncation, g.d));
        for (n, e) in &g.coeffs {
            let _ = writeln!(s, "  z^{}: {}", fmt_exponent(*n, g.d), fmt_matrix(e));
        }
    }
    if let Some(res) = &r.residual_valuation {
        let _ = writeln!(s, "residual vanishes below z^{}", fmt_exponent(res.at_least, r.d));
    }
    let _ = writeln!(s, "time: {:.3} ms", r.elapsed_us as f64 / 1000.0);
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(p: usize, text: &str) -> InputDoc {
        InputDoc {
            p,
            matrix_text: text.into(),
            example: None,
            order: 4,
            d_override: None,
            scan_all_d: false,
            format: Format::Json,
        }
    }

    #[test]
    fn run_scalar() {
        let r = run(&doc(2, "2")).unwrap();
        assert!(r.regular_singular);
        assert_eq!(r.lambda, Some(vec![vec![Q(crate::exact::rat(2, 1))]]));
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(render_text(&r).contains("verdict: regular singular at 0"));
    }

    #[test]
    fn run_errors_map_to_exit_codes() {
        let e = run(&doc(2, "1, 2; 3")).unwrap_err();
        assert_eq!(exit_code(&e), 2);
        let e = run(&doc(2, "z, z^2; 1, z")).unwrap_err();
        assert_eq!(exit_code(&e), 3);
        let e = run(&doc(1, "2")).unwrap_err();
        assert_eq!(exit_code(&e), 2);
        let mut d = doc(2, "2");
        d.d_override = Some(2);
        assert_eq!(exit_code(&run(&d).unwrap_err()), 2);
    }
}
