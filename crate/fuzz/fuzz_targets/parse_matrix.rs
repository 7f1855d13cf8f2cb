#![no_main]

use libfuzzer_sys::fuzz_target;
use mahler_core::cli::parse_matrix;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(a) = parse_matrix(text) {
        let again = parse_matrix(&a.to_string()).expect("display output parses");
        assert_eq!(again, a);
    }
});
