//! Replays the fuzz corpus and random inputs through every parser. Parsers
//! must return `Ok` or an error, never panic, and printed output must parse
//! back to the same value.

use std::fs;
use std::path::PathBuf;

use proptest::prelude::*;

use picspace::poly::parse_coefficient_list;
use picspace::schubert::{check_relevant, parse_conditions, Permutation};
use picspace::{IntPolynomial, Multigraph};

fn graph_roundtrip(text: &str) {
    if let Ok(g) = Multigraph::parse(text) {
        let again = Multigraph::parse(&g.to_text()).expect("printed graphs parse");
        assert_eq!(g, again);
    }
}

fn conditions_roundtrip(text: &str) {
    if let Ok(conditions) = parse_conditions(text) {
        for c in conditions {
            let w = c.permutation;
            assert_eq!(Permutation::new(w.word().to_vec()).as_ref(), Ok(&w));
            let _ = check_relevant(&w, w.size().saturating_sub(1) as u32);
        }
    }
}

fn coeffs_roundtrip(text: &str) {
    if let Ok(p) = parse_coefficient_list(text) {
        let listed: Vec<String> = p.coefficients().iter().map(|c| c.to_string()).collect();
        if !listed.is_empty() {
            assert_eq!(parse_coefficient_list(&listed.join(",")).unwrap(), p);
        }
    }
}

fn poly_roundtrip(text: &str) {
    if let Ok(p) = IntPolynomial::from_json(text) {
        assert_eq!(IntPolynomial::from_json(&p.to_json().to_string()).unwrap(), p);
    }
}

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let text = fs::read_to_string(&path).unwrap();
            (path, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn corpus_seeds() {
    let mut accepted = 0;
    for (_, text) in seeds("graph_text") {
        graph_roundtrip(&text);
        accepted += usize::from(Multigraph::parse(&text).is_ok());
    }
    assert!(accepted > 0);
    for (_, text) in seeds("conditions_json") {
        conditions_roundtrip(&text);
    }
    for (_, text) in seeds("pm_coeffs") {
        coeffs_roundtrip(&text);
    }
    for (_, text) in seeds("poly_json") {
        poly_roundtrip(&text);
    }
}

#[test]
fn seeds_cover_both_outcomes() {
    let graphs = seeds("graph_text");
    assert!(graphs.iter().any(|(_, t)| Multigraph::parse(t).is_ok()));
    assert!(graphs.iter().any(|(_, t)| Multigraph::parse(t).is_err()));
    let polys = seeds("poly_json");
    assert!(polys.iter().any(|(_, t)| IntPolynomial::from_json(t).is_ok()));
    assert!(polys.iter().any(|(_, t)| IntPolynomial::from_json(t).is_err()));
}

proptest! {
    #[test]
    fn random_graph_text(text in "([ve#] [a-c0-9]{0,2}( [a-c0-9]{1,2}){0,3}\n){0,8}") {
        graph_roundtrip(&text);
    }

    #[test]
    fn random_bytes(bytes in proptest::collection::vec(any::<u8>(), 0..200)) {
        let text = String::from_utf8_lossy(&bytes);
        graph_roundtrip(&text);
        conditions_roundtrip(&text);
        coeffs_roundtrip(&text);
        poly_roundtrip(&text);
    }

    #[test]
    fn random_coefficients(text in "(-?[0-9]{1,3}|x| )(,(-?[0-9]{1,3}| ))*") {
        coeffs_roundtrip(&text);
    }

    #[test]
    fn random_conditions(
        entries in proptest::collection::vec((0u8..4, 0u8..4, proptest::collection::vec(0usize..6, 0..6)), 0..4)
    ) {
        let items: Vec<String> = entries
            .iter()
            .map(|(v, e, w)| format!("{{\"vertex\": {v}, \"edge\": \"{e}\", \"permutation\": {w:?}}}"))
            .collect();
        conditions_roundtrip(&format!("[{}]", items.join(",")));
    }
}
