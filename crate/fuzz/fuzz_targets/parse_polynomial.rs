#![no_main]

use beilab::parse::parse_polynomial;
use beilab::{PrimeField, Ring};
use libfuzzer_sys::fuzz_target;

// first byte picks the ring size, the rest is the polynomial text
fuzz_target!(|data: &[u8]| {
    let Some((&k, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let field = PrimeField::new(32003).unwrap();
    let ring = Ring::new(usize::from(k % 12), field).unwrap();
    if let Ok(p) = parse_polynomial(ring, text) {
        // display output parses back to the same polynomial
        let again = parse_polynomial(ring, &p.to_string()).expect("display round-trips");
        assert_eq!(p, again);
    }
});
