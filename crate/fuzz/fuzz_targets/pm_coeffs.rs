#![no_main]

use libfuzzer_sys::fuzz_target;
use picspace::poly::parse_coefficient_list;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_coefficient_list(text) {
        let listed: Vec<String> = p.coefficients().iter().map(|c| c.to_string()).collect();
        if !listed.is_empty() {
            assert_eq!(parse_coefficient_list(&listed.join(",")).unwrap(), p);
        }
    }
});
