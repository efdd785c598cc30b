//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. All comparisons are exact.

mod common;

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use picspace::homology::{self, poincare, poincare_closed_form};
use picspace::orchard::OrchardRing;
use picspace::schubert::{self, divided_difference, schubert_vars, Permutation};
use picspace::tutte::{tutte, tutte_by_subsets, tutte_with_pivots};
use picspace::{IntPolynomial, Multigraph};

use common::{agrees_with_rational_formula, corpus, spanning_forests, tree3, trees};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn uni(coeffs: &[i64]) -> IntPolynomial {
    IntPolynomial::univariate("q", coeffs.iter().copied())
}

fn acetylene() -> Check {
    let g = Multigraph::banana(3);
    let expected = uni(&[1, 5, 9, 9, 5, 1]);
    let p = poincare(&g, 2).map_err(err)?;
    ensure(p.polynomial == expected, || format!("recurrence gave {}", p.polynomial))?;
    let c = poincare_closed_form(&g, 2).map_err(err)?;
    ensure(c.polynomial == expected, || format!("closed form gave {}", c.polynomial))
}

fn example_four_pictures() -> Check {
    let ring = OrchardRing::build(&tree3(), 3).map_err(err)?;
    let vars = ring.variables().clone();
    let gen = |n: &str| IntPolynomial::generator(&vars, n).unwrap();
    let cube = (gen("x_1") * gen("x_2") * gen("x_3")).pow(3);
    let point = ring.point_class();
    ensure(point == ring.reduce(&cube).map_err(err)?, || format!("point class {point} is not (x1 x2 x3)^3"))?;

    let w2134 = Permutation::new(vec![2, 1, 3, 4]).map_err(err)?;
    let w1324 = Permutation::new(vec![1, 3, 2, 4]).map_err(err)?;
    let listed = [
        ("1", "12", &w2134, "x_1"),
        ("2", "12", &w2134, "x_2"),
        ("3", "13", &w2134, "x_3"),
        ("1", "12", &w1324, "z_12"),
        ("1", "12", &w1324, "z_12"),
        ("1", "12", &w1324, "z_12"),
        ("1", "13", &w1324, "z_13"),
        ("1", "13", &w1324, "z_13"),
        ("1", "13", &w1324, "z_13"),
    ];
    let mut classes = Vec::new();
    for (v, e, w, expected) in listed {
        let class = schubert::pullback_class(&ring, v, e, w).map_err(err)?;
        let want = ring.generator(expected).map_err(err)?;
        ensure(class == want, || format!("pullback of {w} at ({v}, {e}) is {class}, expected {expected}"))?;
        classes.push(class);
    }
    let product = gen("x_1") * gen("x_2") * gen("x_3") * gen("z_12").pow(3) * gen("z_13").pow(3);
    let four = cube.scale(&BigInt::from(4));
    ensure(ring.reduce(&product).map_err(err)? == ring.reduce(&four).map_err(err)?, || {
        "x1 x2 x3 z12^3 z13^3 != 4 (x1 x2 x3)^3".into()
    })?;
    let n = schubert::intersection_number(&ring, &classes).map_err(err)?;
    ensure(n == BigInt::from(4), || format!("intersection number {n}"))
}

fn parallel_verdicts() -> Check {
    let verdict = |g: &Multigraph, d| homology::parallel_independent(g, d).map(|v| v.independent).map_err(err);
    ensure(verdict(&Multigraph::complete(3), 2)?, || "K3 should be independent at d=2".into())?;
    ensure(!verdict(&Multigraph::complete(3), 3)?, || "K3 should be dependent at d=3".into())?;
    ensure(!verdict(&Multigraph::complete(4), 2)?, || "K4 should be dependent at d=2".into())?;
    for (name, t) in trees() {
        for d in 2..=4 {
            ensure(verdict(&t, d)?, || format!("{name} should be independent at d={d}"))?;
        }
    }
    Ok(())
}

fn oracle_equivalences() -> Check {
    let start = Instant::now();
    for (name, g) in corpus() {
        assert!(g.num_edges() <= 10 && g.num_vertices() <= 7, "{name} is outside the corpus bounds");
        let t = tutte(&g);
        let brute = tutte_by_subsets(&g).map_err(err)?;
        ensure(t == brute, || format!("{name}: tutte {t} vs subsets {brute}"))?;
        for d in [2, 3, 4] {
            let p = poincare(&g, d).map_err(err)?;
            let c = poincare_closed_form(&g, d).map_err(err)?;
            ensure(p == c, || format!("{name}, d={d}: recurrence {p} vs closed form {c}"))?;
            let bound = u64::from(d) * g.num_vertices() as u64 + u64::from(d - 1) * g.num_edges() as u64;
            ensure(agrees_with_rational_formula(&p.polynomial, &t, &g, d, bound), || {
                format!("{name}, d={d}: {p} disagrees with the rational Tutte specialization")
            })?;
            let dim = homology::picture_space_dimension_oracle(&g, d).map_err(err)?;
            ensure(p.degree() == dim, || {
                format!("{name}, d={d}: deg P = {} but max cellule dimension {dim}", p.degree())
            })?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed.as_secs() < 60, || format!("corpus took {elapsed:?}"))
}

fn ring_cross_checks() -> Check {
    let orchards: Vec<_> = corpus().into_iter().filter(|(_, g)| g.is_orchard()).collect();
    ensure(orchards.len() >= 8, || format!("only {} orchards in the corpus", orchards.len()))?;
    for (name, g) in orchards {
        for d in [2u32, 3] {
            let ring = OrchardRing::build(&g, d).map_err(err)?;
            let p = poincare(&g, d).map_err(err)?;
            let ranks: Vec<BigInt> = ring.graded_ranks().into_iter().map(BigInt::from).collect();
            ensure(ranks == p.coefficients(), || format!("{name}, d={d}: ranks {ranks:?} vs {p}"))?;
            let (c, e) = (g.num_components() as u32, g.num_edges() as u32);
            let isthmuses = g.edges().filter(|(_, ends)| !ends.is_loop()).count() as u32;
            let expected = BigInt::from(d + 1).pow(c) * BigInt::from(2).pow(isthmuses) * BigInt::from(d).pow(e);
            ensure(BigInt::from(ring.basis().len()) == expected, || {
                format!("{name}, d={d}: basis size {} vs {expected}", ring.basis().len())
            })?;
            ensure(ring.graded_ranks().last() == Some(&1), || format!("{name}, d={d}: top piece is not rank 1"))?;
            let point = ring.point_class();
            let top = point.polynomial().homogeneous_component(ring.top_degree());
            ensure(!point.is_zero() && &top == point.polynomial(), || {
                format!("{name}, d={d}: point class {point} is not a nonzero top-degree class")
            })?;
            ensure(point.polynomial().num_terms() == 1, || {
                format!("{name}, d={d}: top piece is not spanned by one monomial")
            })?;
        }
    }
    Ok(())
}

fn random_pivot(rng: &mut StdRng) -> impl FnMut(&Multigraph) -> picspace::graph::Id + '_ {
    move |h: &Multigraph| {
        let ids: Vec<_> = h.edges().map(|(id, _)| id.clone()).collect();
        ids[rng.gen_range(0..ids.len())].clone()
    }
}

fn random_poly(rng: &mut StdRng, vars: &picspace::Variables, max_exp: u32, max_terms: usize) -> IntPolynomial {
    let n = rng.gen_range(0..=max_terms);
    IntPolynomial::from_terms(
        vars,
        (0..n).map(|_| {
            let exps: Vec<u32> =
                (0..vars.len()).map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(0..=max_exp) }).collect();
            (exps, BigInt::from(rng.gen_range(-9i64..=9)))
        }),
    )
}

fn property_suites() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for (name, g) in corpus() {
        let t = tutte(&g);
        let p = poincare(&g, 2).map_err(err)?;
        for round in 0..20 {
            let got = tutte_with_pivots(&g, random_pivot(&mut rng));
            ensure(got == t, || format!("{name}: pivot order {round} gave {got}, expected {t}"))?;
            let got = homology::poincare_with_pivots(&g, 2, random_pivot(&mut rng)).map_err(err)?;
            ensure(got == p, || format!("{name}: Poincaré pivot order {round} gave {got}"))?;
        }
    }

    for n in 2..=5usize {
        let vars = schubert_vars(n);
        for _ in 0..100 {
            let f = random_poly(&mut rng, &vars, 4, 6);
            for i in 1..n {
                let once = divided_difference(i, &f).map_err(err)?;
                ensure(divided_difference(i, &once).map_err(err)?.is_zero(), || format!("d_{i}^2 f != 0 for f = {f}"))?;
                if i + 1 < n {
                    let dd = |k: usize, p: &IntPolynomial| divided_difference(k, p).unwrap();
                    ensure(dd(i, &dd(i + 1, &dd(i, &f))) == dd(i + 1, &dd(i, &dd(i + 1, &f))), || {
                        format!("braid relation fails at i={i} for f = {f}")
                    })?;
                }
            }
        }
    }

    for (name, g) in corpus().into_iter().filter(|(_, g)| g.is_orchard()) {
        for d in [2u32, 3] {
            let ring = OrchardRing::build(&g, d).map_err(err)?;
            let vars = ring.variables().clone();
            for _ in 0..100 {
                let a = random_poly(&mut rng, &vars, d + 1, 4);
                let b = random_poly(&mut rng, &vars, d + 1, 4);
                let (ra, rb) = (ring.reduce(&a).map_err(err)?, ring.reduce(&b).map_err(err)?);
                ensure(ring.reduce(ra.polynomial()).map_err(err)? == ra, || {
                    format!("{name}: reduce not idempotent on {a}")
                })?;
                let whole = ring.reduce(&(&a * &b)).map_err(err)?;
                ensure(ra.mul(&rb).map_err(err)? == whole, || {
                    format!("{name}: reduce(ab) != reduce(a) reduce(b) for {a}, {b}")
                })?;
                let in_basis = ra.polynomial().terms().all(|(m, _)| ring.basis().binary_search(m).is_ok());
                ensure(in_basis, || format!("{name}: normal form {ra} leaves the basis"))?;
            }
        }
    }
    Ok(())
}

fn spot_values() -> Check {
    for (name, g) in corpus() {
        let t = tutte(&g);
        let at = |x: i64, y: i64| {
            let values = BTreeMap::from([("x".to_string(), BigInt::from(x)), ("y".to_string(), BigInt::from(y))]);
            t.evaluate(&values).unwrap()
        };
        let e = g.num_edges() as u32;
        ensure(at(2, 2) == BigInt::from(2).pow(e), || format!("{name}: T(2,2) = {}", at(2, 2)))?;
        let forests = spanning_forests(&g);
        ensure(at(1, 1) == BigInt::from(forests), || {
            format!("{name}: T(1,1) = {} but {forests} spanning forests", at(1, 1))
        })?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("acetylene Poincaré series at d=2", acetylene),
        ("tree example: point class, pullbacks, four pictures", example_four_pictures),
        ("d-parallel independence verdicts", parallel_verdicts),
        ("oracle equivalences on the corpus", oracle_equivalences),
        ("orchard ring against Poincaré series", ring_cross_checks),
        ("property suites", property_suites),
        ("Tutte spot values", spot_values),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(()) => println!("PASS criterion {}: {name} ({:.2?})", i + 1, start.elapsed()),
            Err(msg) => {
                failures += 1;
                println!("FAIL criterion {}: {name}: {msg}", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
