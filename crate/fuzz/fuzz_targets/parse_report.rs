#![no_main]

use libfuzzer_sys::fuzz_target;
use mahler_core::cli::Report;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = Report::from_json(text) {
        assert_eq!(Report::from_json(&r.to_json()).expect("round trip"), r);
    }
});
