#![no_main]

use libfuzzer_sys::fuzz_target;
use signmat::io::{emit_edge_list, parse_edge_list};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(g) = parse_edge_list(text) {
            // Accepted inputs must round-trip exactly.
            let emitted = emit_edge_list(&g);
            assert_eq!(parse_edge_list(&emitted).unwrap(), g);
        }
    }
});
