//! Schubert polynomials and enumerative counts on orchard picture spaces.
//!
//! Permutations are written in one-line notation and are 1-indexed. The
//! Schubert polynomial of `w in S_n` lives in `Z[xi_1, ..., xi_n]`; it is
//! obtained from `S_{w0} = xi_1^(n-1) xi_2^(n-2) ... xi_(n-1)` by divided
//! differences along any chain of ascents from `w` up to `w0`.
//!
//! Intersection numbers assume the pulled-back Schubert varieties meet
//! transversely; nothing here checks that.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::orchard::{edge_generator, vertex_generator, CohomologyClass, OrchardRing};
use crate::poly::{IntPolynomial, Monomial, Variables};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// Validates that `word` is a bijection on `1..=word.len()`.
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &x in &word {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidPermutation(word));
            }
            seen[x] = true;
        }
        if n == 0 {
            return Err(Error::InvalidPermutation(word));
        }
        Ok(Permutation(word))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// `(n, n-1, ..., 1)`.
    pub fn longest(n: usize) -> Self {
        Permutation((1..=n).rev().collect())
    }

    /// The transposition of `i` and `i + 1`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::BadIndex { index: i, max: n.saturating_sub(1) });
        }
        let mut w = Self::identity(n);
        w.0.swap(i - 1, i);
        Ok(w)
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.0
    }

    /// `w(i)` for `1 <= i <= n`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
    }

    /// Positions `i` with `w(i) < w(i+1)`.
    pub fn ascents(&self) -> Vec<usize> {
        (1..self.size()).filter(|&i| self.at(i) < self.at(i + 1)).collect()
    }

    /// Positions `i` with `w(i) > w(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.size()).filter(|&i| self.at(i) > self.at(i + 1)).collect()
    }

    /// `w * s_i`: swaps the entries in positions `i` and `i + 1`.
    pub fn times_simple(&self, i: usize) -> Self {
        let mut w = self.clone();
        w.0.swap(i - 1, i);
        w
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.size() < 10 {
            self.0.iter().try_for_each(|x| write!(f, "{x}"))
        } else {
            let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

pub fn schubert_vars(n: usize) -> Variables {
    Variables::new((1..=n).map(|i| format!("xi_{i}")))
}

/// `(f - s_i f) / (v_i - v_(i+1))`, where `v_1, v_2, ...` are the variables
/// of `f` in order and `s_i` swaps `v_i` with `v_(i+1)`.
pub fn divided_difference(i: usize, f: &IntPolynomial) -> Result<IntPolynomial> {
    let vars = f.variables().clone();
    let n = vars.len();
    if i == 0 || i >= n {
        return Err(Error::BadIndex { index: i, max: n.saturating_sub(1) });
    }
    let mut swapped = IntPolynomial::zero(&vars);
    for (m, c) in f.terms() {
        let mut e = m.exponents().to_vec();
        e.swap(i - 1, i);
        swapped.add_term(Monomial::new(e), c.clone());
    }
    let numerator = f - &swapped;
    let den = IntPolynomial::generator_at(&vars, i - 1) - IntPolynomial::generator_at(&vars, i);
    numerator.exact_div(&den).map_err(|e| Error::Internal(format!("divided difference {i} did not divide: {e}")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertPolynomial {
    perm: Permutation,
    poly: IntPolynomial,
}

impl SchubertPolynomial {
    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    /// A polynomial in `xi_1, ..., xi_n`.
    pub fn polynomial(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn into_polynomial(self) -> IntPolynomial {
        self.poly
    }
}

impl fmt::Display for SchubertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

fn staircase(n: usize) -> IntPolynomial {
    let vars = schubert_vars(n);
    let exps: Vec<u32> = (0..n).map(|i| (n - 1 - i) as u32).collect();
    IntPolynomial::from_terms(&vars, [(exps, BigInt::from(1))])
}

/// `S_w`, following the leftmost ascent at each step.
pub fn schubert_polynomial(w: &Permutation) -> SchubertPolynomial {
    schubert_polynomial_with(w, |ascents| ascents[0])
}

/// `S_w`, with `choose` picking which ascent of the current permutation to
/// climb through. Every choice gives the same polynomial.
pub fn schubert_polynomial_with<F>(w: &Permutation, mut choose: F) -> SchubertPolynomial
where
    F: FnMut(&[usize]) -> usize,
{
    let mut word = Vec::new();
    let mut current = w.clone();
    loop {
        let ascents = current.ascents();
        if ascents.is_empty() {
            break;
        }
        let i = choose(&ascents);
        assert!(ascents.contains(&i), "chosen index {i} is not an ascent");
        word.push(i);
        current = current.times_simple(i);
    }
    let mut poly = staircase(w.size());
    for &i in word.iter().rev() {
        poly = divided_difference(i, &poly).expect("Schubert polynomials divide exactly");
    }
    SchubertPolynomial { perm: w.clone(), poly }
}

/// Checks that `w in S_(d+1)` indexes a Schubert variety of the partial flag
/// manifold of point-in-line flags, i.e. `w_3 < w_4 < ... < w_(d+1)`, so that
/// `S_w` only involves `xi_1` and `xi_2`.
pub fn check_relevant(w: &Permutation, d: u32) -> Result<()> {
    let irrelevant = |reason: String| Err(Error::IrrelevantPermutation { perm: w.word().to_vec(), reason });
    if w.size() != d as usize + 1 {
        return irrelevant(format!("expected a permutation of 1..={} for d = {d}", d + 1));
    }
    if let Some(&i) = w.descents().iter().find(|&&i| i >= 3) {
        return irrelevant(format!(
            "w_{i} = {} > w_{} = {}; entries 3..={} must increase",
            w.at(i),
            i + 1,
            w.at(i + 1),
            d + 1
        ));
    }
    Ok(())
}

/// `pi_{v,e}^* [Omega_w]`: the class of pictures whose flag
/// `P(v) in P(e)` lies in the Schubert variety of `w`.
pub fn pullback_class(ring: &OrchardRing, v: &str, e: &str, w: &Permutation) -> Result<CohomologyClass> {
    let g = ring.graph();
    if !g.has_vertex(v) {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    if !g.edge(e)?.contains(v) {
        return Err(Error::NotIncident { vertex: v.to_string(), edge: e.to_string() });
    }
    check_relevant(w, ring.d())?;
    let s = schubert_polynomial(w).into_polynomial();
    let n = w.size();
    if (2..n).any(|k| s.degree_in(k) > 0) {
        return Err(Error::Internal(format!("S_{w} involves variables beyond xi_2")));
    }
    let vars = ring.variables();
    let x = IntPolynomial::generator(vars, &vertex_generator(v))?;
    let z = IntPolynomial::generator(vars, &edge_generator(e))?;
    let mut bindings = BTreeMap::new();
    bindings.insert("xi_1".to_string(), x.clone());
    bindings.insert("xi_2".to_string(), &z - &x);
    for k in 3..=n {
        bindings.insert(format!("xi_{k}"), IntPolynomial::zero(vars));
    }
    ring.reduce(&s.substitute(&bindings)?)
}

/// The multiple of the point class carried by the product of `classes`; zero
/// when the product has no top-degree part.
pub fn intersection_number(ring: &OrchardRing, classes: &[CohomologyClass]) -> Result<BigInt> {
    let mut product = ring.reduce(&IntPolynomial::one(ring.variables()))?;
    for c in classes {
        product = product.mul(c)?;
    }
    ring.point_multiple(&product)
}

/// One incidence condition: the flag at vertex `vertex` and edge `edge` must
/// lie in the Schubert variety of `permutation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub vertex: String,
    pub edge: String,
    pub permutation: Permutation,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IdValue {
    Text(String),
    Number(u64),
}

impl From<IdValue> for String {
    fn from(v: IdValue) -> String {
        match v {
            IdValue::Text(s) => s,
            IdValue::Number(n) => n.to_string(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCondition {
    vertex: IdValue,
    edge: IdValue,
    permutation: Vec<usize>,
}

/// Parses a JSON list of `{"vertex", "edge", "permutation"}` objects. Vertex
/// and edge ids may be strings or non-negative integers.
pub fn parse_conditions(text: &str) -> Result<Vec<Condition>> {
    let raw: Vec<RawCondition> =
        serde_json::from_str(text).map_err(|e| Error::parse(Some(e.line()).filter(|&l| l > 0), e.to_string()))?;
    raw.into_iter()
        .map(|r| {
            Ok(Condition {
                vertex: r.vertex.into(),
                edge: r.edge.into(),
                permutation: Permutation::new(r.permutation)?,
            })
        })
        .collect()
}

/// Pulls back every condition and returns the intersection number.
pub fn count_pictures(ring: &OrchardRing, conditions: &[Condition]) -> Result<BigInt> {
    let classes = conditions
        .iter()
        .map(|c| pullback_class(ring, &c.vertex, &c.edge, &c.permutation))
        .collect::<Result<Vec<_>>>()?;
    intersection_number(ring, &classes)
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly(n: usize) -> impl Strategy<Value = IntPolynomial> {
        proptest::collection::vec((proptest::collection::vec(0u32..4, n), -5i64..=5), 0..6).prop_map(move |terms| {
            IntPolynomial::from_terms(&schubert_vars(n), terms.into_iter().map(|(e, c)| (e, BigInt::from(c))))
        })
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((1..=n).collect::<Vec<_>>()).prop_shuffle().prop_map(|w| Permutation::new(w).unwrap())
    }

    proptest! {
        #[test]
        fn nil_and_braid(f in arb_poly(5), i in 1usize..4) {
            let once = divided_difference(i, &f).unwrap();
            prop_assert!(divided_difference(i, &once).unwrap().is_zero());
            let dd = |k: usize, p: &IntPolynomial| divided_difference(k, p).unwrap();
            prop_assert_eq!(dd(i, &dd(i + 1, &dd(i, &f))), dd(i + 1, &dd(i, &dd(i + 1, &f))));
        }

        #[test]
        fn word_independent_and_homogeneous(w in (2usize..=6).prop_flat_map(arb_perm), seed in any::<u64>()) {
            let canonical = schubert_polynomial(&w).into_polynomial();
            let mut state = seed;
            let random = schubert_polynomial_with(&w, |asc| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                asc[(state >> 33) as usize % asc.len()]
            }).into_polynomial();
            prop_assert_eq!(&canonical, &random);
            prop_assert!(canonical.is_homogeneous());
            prop_assert_eq!(canonical.total_degree(), Some(w.length() as u64));
        }
    }
}
