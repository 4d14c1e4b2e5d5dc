#![no_main]

use libfuzzer_sys::fuzz_target;
use signmat::io::{emit_coord_matrix, parse_coord_matrix};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(m) = parse_coord_matrix(text) {
            // Accepted inputs must round-trip exactly.
            let emitted = emit_coord_matrix(&m);
            assert_eq!(parse_coord_matrix(&emitted).unwrap(), m);
        }
    }
});
