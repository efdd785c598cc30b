//! Tutte polynomial `T_G(x, y)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::Result;
use crate::graph::{Id, Multigraph};
use crate::poly::{IntPolynomial, Monomial, Variables};
use crate::recurrence::{self, CacheMode, DeletionContraction};
use crate::Limits;

pub fn tutte_vars() -> Variables {
    Variables::new(["x", "y"])
}

struct TutteRecurrence {
    x: IntPolynomial,
    y: IntPolynomial,
}

impl TutteRecurrence {
    fn new() -> Self {
        let vars = tutte_vars();
        TutteRecurrence { x: IntPolynomial::generator_at(&vars, 0), y: IntPolynomial::generator_at(&vars, 1) }
    }
}

impl DeletionContraction for TutteRecurrence {
    fn tag(&self) -> Vec<u8> {
        b"tutte;".to_vec()
    }

    fn edgeless(&self, _g: &Multigraph) -> IntPolynomial {
        IntPolynomial::one(&tutte_vars())
    }

    fn on_loop(&self, deleted: IntPolynomial) -> IntPolynomial {
        &self.y * &deleted
    }

    fn on_isthmus(&self, contracted: IntPolynomial) -> IntPolynomial {
        &self.x * &contracted
    }

    fn on_ordinary(&self, deleted: IntPolynomial, contracted: IntPolynomial) -> IntPolynomial {
        deleted + contracted
    }
}

/// `T_G(x, y)` by deletion-contraction, memoized per call.
pub fn tutte(g: &Multigraph) -> IntPolynomial {
    tutte_cached(g, CacheMode::PerCall)
}

pub fn tutte_cached(g: &Multigraph, cache: CacheMode<'_>) -> IntPolynomial {
    recurrence::evaluate(&TutteRecurrence::new(), g, cache)
}

/// Deletion-contraction with caller-chosen pivots and no memoization.
pub fn tutte_with_pivots<F>(g: &Multigraph, choose: F) -> IntPolynomial
where
    F: FnMut(&Multigraph) -> Id,
{
    recurrence::evaluate_with_pivots(&TutteRecurrence::new(), g, choose)
}

/// Number of edge subsets `F` with `r(E) - r(F) = a` and `|F| - r(F) = b`,
/// keyed by `(a, b)`. Enumerates all `2^e` subsets.
pub fn corank_nullity_counts(g: &Multigraph, limits: &Limits) -> Result<BTreeMap<(u32, u32), u64>> {
    limits.check_subset_edges(g.num_edges())?;
    if g.num_edges() > 63 {
        return Err(crate::Error::GuardExceeded {
            what: "edge count for subset expansion",
            value: g.num_edges() as u64,
            limit: 63,
        });
    }
    let index: BTreeMap<&Id, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let ends: Vec<(usize, usize)> = g.edges().map(|(_, e)| (index[&e.u], index[&e.w])).collect();
    let n = g.num_vertices();
    let e = ends.len();
    let mut parent = vec![0usize; n];
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    let mut rank_of = |mask: u64| -> usize {
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i;
        }
        let mut r = 0;
        for (i, &(u, w)) in ends.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let (a, b) = (find(&mut parent, u), find(&mut parent, w));
                if a != b {
                    parent[a] = b;
                    r += 1;
                }
            }
        }
        r
    };
    let full = (1u64 << e) - 1;
    let rank_e = rank_of(full);
    let mut counts = BTreeMap::new();
    let mut mask = 0u64;
    loop {
        let r = rank_of(mask);
        let key = ((rank_e - r) as u32, (mask.count_ones() as usize - r) as u32);
        *counts.entry(key).or_insert(0) += 1;
        if mask == full {
            break;
        }
        mask += 1;
    }
    Ok(counts)
}

/// `T_G(x, y) = sum_F (x-1)^(r(E)-r(F)) (y-1)^(|F|-r(F))`, expanded exactly.
pub fn tutte_by_subsets(g: &Multigraph) -> Result<IntPolynomial> {
    tutte_by_subsets_with(g, &Limits::default())
}

pub fn tutte_by_subsets_with(g: &Multigraph, limits: &Limits) -> Result<IntPolynomial> {
    let counts = corank_nullity_counts(g, limits)?;
    let vars = tutte_vars();
    let xm1 = IntPolynomial::from_terms(&vars, [(vec![1, 0], 1.into()), (vec![0, 0], (-1).into())]);
    let ym1 = IntPolynomial::from_terms(&vars, [(vec![0, 1], 1.into()), (vec![0, 0], (-1).into())]);
    let mut total = IntPolynomial::zero(&vars);
    for ((a, b), n) in counts {
        total += (xm1.pow(a) * ym1.pow(b)).scale(&BigInt::from(n));
    }
    Ok(total)
}

/// Coefficients `N(a, b)` of `T_G` in the basis `(x-1)^a (y-1)^b`, read off a
/// Tutte polynomial by shifting `x -> x+1`, `y -> y+1`.
pub fn shifted_coefficients(t: &IntPolynomial) -> BTreeMap<(u32, u32), BigInt> {
    let vars = tutte_vars();
    let shift = |i: usize| IntPolynomial::generator_at(&vars, i) + IntPolynomial::one(&vars);
    let bindings = BTreeMap::from([("x".to_string(), shift(0)), ("y".to_string(), shift(1))]);
    let shifted = t.substitute(&bindings).expect("Tutte polynomials live in x, y");
    shifted.terms().map(|(m, c): (&Monomial, &BigInt)| ((m.exponents()[0], m.exponents()[1]), c.clone())).collect()
}
