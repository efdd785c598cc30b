#![no_main]

use libfuzzer_sys::fuzz_target;
use picspace::IntPolynomial;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = IntPolynomial::from_json(text) {
        let again = IntPolynomial::from_json(&p.to_json().to_string()).expect("printed polynomials parse");
        assert_eq!(p, again);
    }
});
