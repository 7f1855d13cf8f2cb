//! Replays the checked-in fuzz seed corpora through the same checks as the
//! fuzz targets.

use std::path::PathBuf;

use mahler_core::cli::{parse_matrix, parse_rational, Report};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn parse_matrix_seeds() {
    let mut parsed = 0;
    for (name, text) in seeds("parse_matrix") {
        if let Ok(a) = parse_matrix(&text) {
            assert_eq!(parse_matrix(&a.to_string()).unwrap(), a, "{name}");
            parsed += 1;
        }
    }
    assert!(parsed >= 4);
}

#[test]
fn parse_report_seeds() {
    for (name, text) in seeds("parse_report") {
        let r = Report::from_json(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    }
}

#[test]
fn parse_rational_seeds() {
    for (name, text) in seeds("parse_rational") {
        if let Some(q) = parse_rational(&text) {
            assert_eq!(q.to_string(), text, "{name}");
        } else {
            assert_eq!(name, "unreduced");
        }
    }
}
