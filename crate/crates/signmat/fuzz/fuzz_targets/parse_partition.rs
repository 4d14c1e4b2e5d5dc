#![no_main]

use libfuzzer_sys::fuzz_target;
use signmat::io::parse_partition;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(b) = parse_partition(text) {
            assert!(!b.entries().is_empty());
        }
    }
});
