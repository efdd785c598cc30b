//! Shared corpus and brute-force oracles for the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use picspace::{IntPolynomial, Multigraph};

pub fn tree3() -> Multigraph {
    Multigraph::parse("v 1\nv 2\nv 3\ne 12 1 2\ne 13 1 3\n").unwrap()
}

/// Named test graphs, every one with at most 10 edges and 7 vertices.
pub fn corpus() -> Vec<(&'static str, Multigraph)> {
    let k3 = Multigraph::complete(3);
    vec![
        ("K1", Multigraph::edgeless(1)),
        ("N3", Multigraph::edgeless(3)),
        ("K2", Multigraph::complete(2)),
        ("K3", k3.clone()),
        ("K4", Multigraph::complete(4)),
        ("digon", Multigraph::banana(2)),
        ("acetylene", Multigraph::banana(3)),
        ("banana4", Multigraph::banana(4)),
        ("L1", Multigraph::bouquet(1)),
        ("L2", Multigraph::bouquet(2)),
        ("L3", Multigraph::bouquet(3)),
        ("K3+loop", k3.with_loops("1", 1).unwrap()),
        ("digon+loops", Multigraph::banana(2).with_loops("1", 2).unwrap()),
        ("tree3", tree3()),
        ("tree3+loops", tree3().with_loops("2", 1).unwrap().with_loops("1", 1).unwrap()),
        ("P4+loops", Multigraph::path(4).with_loops("2", 2).unwrap().with_loops("4", 1).unwrap()),
        ("P6", Multigraph::path(6)),
        ("star5", Multigraph::star(5)),
        ("C4", Multigraph::cycle(4)),
        ("C5", Multigraph::cycle(5)),
        ("K3+digon", k3.prefixed("a").disjoint_union(&Multigraph::banana(2).prefixed("b")).unwrap()),
        ("K2+L1", Multigraph::complete(2).prefixed("a").disjoint_union(&Multigraph::bouquet(1).prefixed("b")).unwrap()),
        ("tree3+K3", tree3().prefixed("a").disjoint_union(&k3.prefixed("b")).unwrap()),
        ("K4-e", Multigraph::complete(4).delete("34").unwrap()),
    ]
}

/// Trees (hence 2-, 3- and 4-parallel independent).
pub fn trees() -> Vec<(String, Multigraph)> {
    let mut out: Vec<(String, Multigraph)> = (1..=6).map(|n| (format!("P{n}"), Multigraph::path(n))).collect();
    out.push(("star5".into(), Multigraph::star(5)));
    out.push(("tree3".into(), tree3()));
    out.push((
        "spider".into(),
        Multigraph::parse("v 1\nv 2\nv 3\nv 4\nv 5\nv 6\ne a 1 2\ne b 2 3\ne c 1 4\ne d 4 5\ne f 1 6\n").unwrap(),
    ));
    out
}

fn edge_index(g: &Multigraph) -> (usize, Vec<(usize, usize)>) {
    let names: Vec<_> = g.vertices().cloned().collect();
    let pos = |v: &str| names.iter().position(|n| &**n == v).unwrap();
    (names.len(), g.edges().map(|(_, e)| (pos(&e.u), pos(&e.w))).collect())
}

/// True if the edges selected by `mask` contain no cycle.
fn acyclic(n: usize, ends: &[(usize, usize)], mask: u32) -> bool {
    let mut label: Vec<usize> = (0..n).collect();
    for (i, &(u, w)) in ends.iter().enumerate() {
        if mask >> i & 1 == 0 {
            continue;
        }
        let (a, b) = (label[u], label[w]);
        if a == b {
            return false;
        }
        for l in label.iter_mut() {
            if *l == b {
                *l = a;
            }
        }
    }
    true
}

/// Number of maximal spanning forests, by checking every edge subset.
pub fn spanning_forests(g: &Multigraph) -> u64 {
    let (n, ends) = edge_index(g);
    assert!(ends.len() <= 20);
    let forests: Vec<u32> = (0..1u32 << ends.len()).filter(|&m| acyclic(n, &ends, m)).collect();
    let largest = forests.iter().map(|m| m.count_ones()).max().unwrap_or(0);
    forests.iter().filter(|m| m.count_ones() == largest).count() as u64
}

fn eval_rational(p: &IntPolynomial, at: &[BigRational]) -> BigRational {
    let mut total = BigRational::zero();
    for (m, c) in p.terms() {
        let mut term = BigRational::from_integer(c.clone());
        for (x, &e) in at.iter().zip(m.exponents()) {
            term *= num_traits::pow(x.clone(), e as usize);
        }
        total += term;
    }
    total
}

fn q_number(n: u32, q: &BigRational) -> BigRational {
    (0..n).fold(BigRational::zero(), |acc, i| acc + num_traits::pow(q.clone(), i as usize))
}

/// Evaluates `([d]-1)^(v-c) [d+1]^c T(x, y)` with `x = [2][d]/([d]-1)` and
/// `y = [d]` at a rational `q`, straight from the rational formula.
pub fn rational_poincare(t: &IntPolynomial, v: usize, c: usize, d: u32, q: &BigRational) -> BigRational {
    let dq = q_number(d, q);
    let dm1 = &dq - BigRational::one();
    let x = q_number(2, q) * &dq / &dm1;
    let t_val = eval_rational(t, &[x, dq]);
    num_traits::pow(dm1, v - c) * num_traits::pow(q_number(d + 1, q), c) * t_val
}

/// Checks a univariate `p` against the rational formula at enough points to
/// pin down a polynomial of degree `degree_bound`.
pub fn agrees_with_rational_formula(
    p: &IntPolynomial,
    t: &IntPolynomial,
    g: &Multigraph,
    d: u32,
    degree_bound: u64,
) -> bool {
    (1..=degree_bound as i64 + 2).all(|k| {
        let q = BigRational::from_integer(BigInt::from(k));
        eval_rational(p, std::slice::from_ref(&q)) == rational_poincare(t, g.num_vertices(), g.num_components(), d, &q)
    })
}
