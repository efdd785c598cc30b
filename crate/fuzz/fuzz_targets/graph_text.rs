#![no_main]

use libfuzzer_sys::fuzz_target;
use picspace::Multigraph;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = Multigraph::parse(text) {
        let again = Multigraph::parse(&g.to_text()).expect("printed graphs parse");
        assert_eq!(g, again);
        assert_eq!(g.canonical_key(), again.canonical_key());
    }
});
