use std::io::Write;
use std::process::{Command, Output};

use mahler_core::cli::Report;
use serde_json::Value;
use tempfile::NamedTempFile;

fn mahler(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mahler")).args(args).output().expect("binary runs")
}

fn matrix_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn arg(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

fn validate(json: &str) -> Value {
    let schema_text = include_str!("../../../docs/report.schema.json");
    let schema: Value = serde_json::from_str(schema_text).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let instance: Value = serde_json::from_str(json).unwrap();
    let errors: Vec<String> = validator.iter_errors(&instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}");
    instance
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn order2_json_matches_reference_series() {
    let out = mahler(&["--example", "order2", "--order", "8", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let v = validate(&text);
    assert_eq!(v["regular_singular"], true);
    assert_eq!(v["d"], 2);
    assert_eq!((v["nu"].as_i64(), v["mu"].as_i64(), v["c"].as_u64()), (Some(-3), Some(6), Some(20)));
    assert_eq!(v["dimX"], 2);
    assert_eq!(v["Lambda"], serde_json::json!([["1", "0"], ["0", "1"]]));
    assert_eq!(v["residual_valuation"]["at_least"], 2 * -3 + 16 + 1);

    let coeffs = &v["gauge"]["coeffs"];
    let entry = |n: i64, i: usize, j: usize| -> String {
        coeffs
            .get(n.to_string())
            .map_or("0".to_string(), |m| m[i][j].as_str().unwrap().to_string())
    };
    let f1: Vec<(i64, &str)> = (-1..=15).step_by(2).zip(["1", "-1"].iter().cycle()).map(|(n, c)| (n, *c)).collect();
    let f2 = [(6, "-1"), (8, "1"), (10, "-1"), (12, "2"), (14, "-2"), (16, "2")];
    let f3 = [(-3, "1"), (3, "-1"), (9, "1"), (15, "-1")];
    for n in -6..=16 {
        let want = |s: &[(i64, &str)]| s.iter().find(|t| t.0 == n).map_or("0".to_string(), |t| t.1.to_string());
        assert_eq!(entry(n, 0, 0), want(&f1), "f1 at {n}");
        assert_eq!(entry(n, 1, 0), want(&f3), "f3 at {n}");
        // canonical basis: second column is the negation of the reference one
        let neg = |s: String| if s == "0" { s } else if let Some(t) = s.strip_prefix('-') { t.to_string() } else { format!("-{s}") };
        assert_eq!(entry(n, 0, 1), neg(want(&f2)), "f2 at {n}");
        assert_eq!(entry(n, 1, 1), "0", "zero entry at {n}");
    }
    assert!(Report::from_json(&text).is_ok());
}

#[test]
fn order2_text_output() {
    let out = mahler(&["--example", "order2", "--order", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("verdict: regular singular at 0"), "{text}");
    assert!(text.contains("d = 2, nu = -3, mu = 6, c = 20, dim X = 2"), "{text}");
    assert!(text.contains("z^(-3/2)"), "{text}");
}

#[test]
fn rudin_shapiro_is_negative_with_success_exit() {
    let out = mahler(&["--example", "rudin-shapiro", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = validate(&stdout(&out));
    assert_eq!(v["regular_singular"], false);
    assert_eq!(v["dimX"], 1);
    assert!(v["gauge"].is_null() && v["Lambda"].is_null());
}

#[test]
fn matrix_file_input() {
    let f = matrix_file("# Rudin-Shapiro\n1/2, 1/2;\n1/(2*z), -1/(2*z)\n");
    let out = mahler(&["--p", "2", "--matrix", arg(&f), "--d", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = validate(&stdout(&out));
    assert_eq!(v["d"], 3);
    assert_eq!(v["dimX"], 1);

    let out = mahler(&["--p", "2", "--matrix", arg(&f), "--scan-all-d", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(validate(&stdout(&out))["regular_singular"], false);
}

#[test]
fn exit_codes_for_bad_input() {
    let singular = matrix_file("z, z^2; 1, z");
    let out = mahler(&["--p", "2", "--matrix", arg(&singular)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let ragged = matrix_file("1, 2; 3");
    assert_eq!(mahler(&["--p", "2", "--matrix", arg(&ragged)]).status.code(), Some(2));
    let garbage = matrix_file("1 + * z");
    assert_eq!(mahler(&["--p", "2", "--matrix", arg(&garbage)]).status.code(), Some(2));
    assert_eq!(mahler(&["--example", "nope"]).status.code(), Some(2));
    assert_eq!(mahler(&["--example", "order2", "--d", "3"]).status.code(), Some(2));
    let fine = matrix_file("2");
    assert_eq!(mahler(&["--p", "1", "--matrix", arg(&fine)]).status.code(), Some(2));
    assert_eq!(mahler(&["--matrix", arg(&fine)]).status.code(), Some(2));
}
