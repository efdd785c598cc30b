#![no_main]

use libfuzzer_sys::fuzz_target;
use picspace::schubert::{check_relevant, parse_conditions, Permutation};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(conditions) = parse_conditions(text) {
        for c in conditions {
            let w = c.permutation;
            assert_eq!(Permutation::new(w.word().to_vec()).as_ref(), Ok(&w));
            let _ = check_relevant(&w, w.size().saturating_sub(1) as u32);
        }
    }
});
