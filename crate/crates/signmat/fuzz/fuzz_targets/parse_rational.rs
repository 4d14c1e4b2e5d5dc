#![no_main]

use libfuzzer_sys::fuzz_target;
use signmat::exactla::{format_rational, parse_rational};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(r) = parse_rational(text) {
            // Accepted inputs must round-trip exactly.
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }
});
