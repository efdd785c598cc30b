//! Compressed Poincaré series of picture spaces and what can be read off them.
//!
//! `P^d_G(q) = sum_i rank H_{2i}(X^d(G)) q^i`. The primary route is the
//! four-case deletion-contraction recurrence; the Tutte specialization is
//! evaluated in denominator-free form as an independent route:
//!
//! ```text
//! P^d_G = [d+1]^c * sum_F [d+1]^(r(E)-r(F)) ([d]-1)^|F|
//! ```
//!
//! which follows from the corank-nullity expansion because
//! `[2][d] - ([d]-1) = [d+1]`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::{self, Multigraph, Partition};
use crate::poly::{q_analogue, IntPolynomial, Variables};
use crate::recurrence::{self, CacheMode, DeletionContraction};
use crate::tutte;
use crate::Limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareSeries {
    pub polynomial: IntPolynomial,
    pub d: u32,
    pub graph: Multigraph,
}

impl PoincareSeries {
    /// Betti numbers `rank H_{2k}`, `k = 0..=deg`.
    pub fn coefficients(&self) -> Vec<BigInt> {
        self.polynomial.coefficients()
    }

    pub fn degree(&self) -> u64 {
        self.polynomial.total_degree().unwrap_or(0)
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.polynomial.fmt(f)
    }
}

struct PoincareRecurrence {
    d: u32,
    d_q: IntPolynomial,
    d1_q: IntPolynomial,
    d_q_minus_one: IntPolynomial,
    isthmus_factor: IntPolynomial,
}

impl PoincareRecurrence {
    fn new(d: u32) -> Self {
        let d_q = q_analogue(d);
        let one = IntPolynomial::one(d_q.variables());
        PoincareRecurrence {
            d,
            d1_q: q_analogue(d + 1),
            d_q_minus_one: &d_q - &one,
            isthmus_factor: &q_analogue(2) * &d_q,
            d_q,
        }
    }
}

impl DeletionContraction for PoincareRecurrence {
    fn tag(&self) -> Vec<u8> {
        format!("poincare;d={};", self.d).into_bytes()
    }

    fn edgeless(&self, g: &Multigraph) -> IntPolynomial {
        self.d1_q.pow(g.num_vertices() as u32)
    }

    fn on_loop(&self, deleted: IntPolynomial) -> IntPolynomial {
        &self.d_q * &deleted
    }

    fn on_isthmus(&self, contracted: IntPolynomial) -> IntPolynomial {
        &self.isthmus_factor * &contracted
    }

    fn on_ordinary(&self, deleted: IntPolynomial, contracted: IntPolynomial) -> IntPolynomial {
        deleted + &self.d_q_minus_one * &contracted
    }
}

/// `P^d_G(q)` by the loop / isthmus / ordinary-edge recurrence.
pub fn poincare(g: &Multigraph, d: u32) -> Result<PoincareSeries> {
    poincare_with(g, d, &Limits::default(), CacheMode::PerCall)
}

pub fn poincare_with(g: &Multigraph, d: u32, limits: &Limits, cache: CacheMode<'_>) -> Result<PoincareSeries> {
    limits.check_d(d)?;
    let polynomial = recurrence::evaluate(&PoincareRecurrence::new(d), g, cache);
    Ok(PoincareSeries { polynomial, d, graph: g.clone() })
}

/// The Poincaré recurrence with caller-chosen pivots and no memoization.
pub fn poincare_with_pivots<F>(g: &Multigraph, d: u32, choose: F) -> Result<PoincareSeries>
where
    F: FnMut(&Multigraph) -> graph::Id,
{
    Limits::default().check_d(d)?;
    let polynomial = recurrence::evaluate_with_pivots(&PoincareRecurrence::new(d), g, choose);
    Ok(PoincareSeries { polynomial, d, graph: g.clone() })
}

/// `pm^c * sum_{a,b} N(a,b) pm^a ([d]-1)^(r(E)-a+b)` where `N(a,b)` are the
/// coefficients of `T_G` in powers of `(x-1)` and `(y-1)`.
fn cleared_specialization(g: &Multigraph, d: u32, pm: &IntPolynomial) -> IntPolynomial {
    let t = tutte::tutte(g);
    let c = g.num_components() as u32;
    let rank_e = (g.num_vertices() - g.num_components()) as u32;
    let d_q = q_analogue(d);
    let y_minus_one = &d_q - &IntPolynomial::one(d_q.variables());
    let mut sum = IntPolynomial::zero(&Variables::new(["q"]));
    for ((a, b), n) in tutte::shifted_coefficients(&t) {
        sum += (pm.pow(a) * y_minus_one.pow(rank_e - a + b)).scale(&n);
    }
    pm.pow(c) * sum
}

/// `P^d_G(q)` as the Tutte specialization
/// `([d]-1)^(v-c) [d+1]^c T_G([2][d]/([d]-1), [d])`, with all denominators
/// cleared before evaluation.
pub fn poincare_closed_form(g: &Multigraph, d: u32) -> Result<PoincareSeries> {
    poincare_closed_form_with(g, d, &Limits::default())
}

pub fn poincare_closed_form_with(g: &Multigraph, d: u32, limits: &Limits) -> Result<PoincareSeries> {
    limits.check_d(d)?;
    let polynomial = cleared_specialization(g, d, &q_analogue(d + 1));
    Ok(PoincareSeries { polynomial, d, graph: g.clone() })
}

/// Poincaré series of the space of pictures of `G` on a simply connected
/// compact complex `d`-manifold `M` with even free homology, given
/// `pm = Poin(M; q^(1/2))`:
/// `([d]-1)^(v-c) pm^c T_G((pm + [d] - 1)/([d]-1), [d])`.
pub fn poincare_manifold(g: &Multigraph, d: u32, pm: &IntPolynomial) -> Result<IntPolynomial> {
    poincare_manifold_with(g, d, pm, &Limits::default())
}

pub fn poincare_manifold_with(g: &Multigraph, d: u32, pm: &IntPolynomial, limits: &Limits) -> Result<IntPolynomial> {
    limits.check_d(d)?;
    let pm = pm.with_vars(&Variables::new(["q"]))?;
    let constant = pm.coefficients().into_iter().next().unwrap_or_default();
    if !constant.is_one() {
        return Err(Error::BadManifoldPolynomial(constant.to_string()));
    }
    Ok(cleared_specialization(g, d, &pm))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelVerdict {
    pub independent: bool,
    /// `P^d_G / [d+1]^c`.
    pub witness_polynomial: IntPolynomial,
    /// `d (v - c)`.
    pub expected_degree: u64,
}

/// Whether `E(G)` is independent in the generic `d`-parallel matroid: true iff
/// `P^d_G / [d+1]^c` is monic of degree `d (v - c)`.
pub fn parallel_independent(g: &Multigraph, d: u32) -> Result<ParallelVerdict> {
    parallel_independent_with(g, d, &Limits::default())
}

pub fn parallel_independent_with(g: &Multigraph, d: u32, limits: &Limits) -> Result<ParallelVerdict> {
    let p = poincare_with(g, d, limits, CacheMode::PerCall)?;
    let c = g.num_components() as u32;
    let witness = p
        .polynomial
        .exact_div(&q_analogue(d + 1).pow(c))
        .map_err(|e| Error::Internal(format!("Poincaré series not divisible by [d+1]^c: {e}")))?;
    let expected_degree = u64::from(d) * (g.num_vertices() - g.num_components()) as u64;
    Ok(ParallelVerdict {
        independent: witness.is_monic_of_degree(expected_degree),
        witness_polynomial: witness,
        expected_degree,
    })
}

/// `dim X^d_A(G) = d |A| + (d-1) u(A)`.
pub fn cellule_dimension(g: &Multigraph, a: &Partition, d: u32) -> Result<u64> {
    Limits::unbounded().check_d(d)?;
    let u = graph::unconstrained_count(g, a)? as u64;
    Ok(u64::from(d) * a.num_blocks() as u64 + u64::from(d - 1) * u)
}

/// Largest cellule dimension, with every partition attaining it.
pub fn cellule_maxima(g: &Multigraph, d: u32, limits: &Limits) -> Result<(u64, Vec<Partition>)> {
    limits.check_d(d)?;
    let mut best = 0;
    let mut achieving = Vec::new();
    for a in graph::partitions(g, limits)? {
        let dim = cellule_dimension(g, &a, d)?;
        if dim > best {
            best = dim;
            achieving.clear();
        }
        if dim == best {
            achieving.push(a);
        }
    }
    Ok((best, achieving))
}

/// Complex dimension of `X^d(G)` as the largest cellule dimension over all
/// vertex partitions.
pub fn picture_space_dimension_oracle(g: &Multigraph, d: u32) -> Result<u64> {
    Ok(cellule_maxima(g, d, &Limits::default())?.0)
}
