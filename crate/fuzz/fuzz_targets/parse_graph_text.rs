#![no_main]

use beilab::parse::parse_graph_text;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(g) = parse_graph_text(text) {
            assert!(g.edges().iter().all(|&(i, j)| 1 <= i && i < j && j <= g.n()));
        }
    }
});
