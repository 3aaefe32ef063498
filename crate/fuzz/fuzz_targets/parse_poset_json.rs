#![no_main]

use beilab::parse::parse_poset_json;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(p) = parse_poset_json(text) {
            // the order relation is antisymmetric
            for a in 0..p.len() {
                for b in 0..p.len() {
                    assert!(!(p.less(a, b) && p.less(b, a)));
                }
            }
        }
    }
});
