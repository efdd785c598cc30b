//! Sparse polynomials with arbitrary-precision integer coefficients.
//!
//! A polynomial carries its own ordered list of generator names. Monomials are
//! ordered graded-lexicographically with respect to that list (the first
//! generator is the largest), and every term map is kept free of zero
//! coefficients. Binary operations require both operands to share a generator
//! list; a polynomial over the empty list (a bare integer) is promoted to the
//! other operand's generators automatically.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Ordered list of generator names shared by a family of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variables(Arc<[String]>);

impl Variables {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Variables(names.into_iter().map(Into::into).collect())
    }

    pub fn empty() -> Self {
        Variables(Arc::from(Vec::new()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

/// Exponent vector. Ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0.iter().zip(&other.0).map(|(&a, &b)| a.checked_sub(b)).collect::<Option<Vec<_>>>().map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    vars: Variables,
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPolynomial {
    pub fn zero(vars: &Variables) -> Self {
        IntPolynomial { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Variables) -> Self {
        Self::constant(vars, 1)
    }

    pub fn constant(vars: &Variables, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::one(vars.len()), c.into());
        p
    }

    /// The polynomial consisting of the generator `name`.
    pub fn generator(vars: &Variables, name: &str) -> Result<Self> {
        let idx = vars.index_of(name).ok_or_else(|| Error::ForeignVariable(name.to_string()))?;
        Ok(Self::generator_at(vars, idx))
    }

    pub fn generator_at(vars: &Variables, idx: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        let mut p = Self::zero(vars);
        p.add_term(Monomial(exps), BigInt::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms<I>(vars: &Variables, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut p = Self::zero(vars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), vars.len(), "exponent vector arity mismatch");
            p.add_term(Monomial(exps), c);
        }
        p
    }

    /// Univariate polynomial in `var` with `coeffs[i]` the coefficient of `var^i`.
    pub fn univariate<C>(var: &str, coeffs: impl IntoIterator<Item = C>) -> Self
    where
        C: Into<BigInt>,
    {
        let vars = Variables::new([var]);
        Self::from_terms(&vars, coeffs.into_iter().enumerate().map(|(i, c)| (vec![i as u32], c.into())))
    }

    pub fn variables(&self) -> &Variables {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(first) => degs.all(|d| d == first),
        }
    }

    pub fn homogeneous_component(&self, degree: u64) -> Self {
        IntPolynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        IntPolynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        IntPolynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect() }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Re-expresses `self` over `target`. Every generator that actually occurs
    /// in `self` must be present in `target`.
    pub fn with_vars(&self, target: &Variables) -> Result<Self> {
        if &self.vars == target {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names().iter().enumerate() {
            match target.index_of(name) {
                Some(j) => map.push(Some(j)),
                None if self.degree_in(i) == 0 => map.push(None),
                None => return Err(Error::ForeignVariable(name.clone())),
            }
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (i, &e) in m.0.iter().enumerate() {
                if let Some(j) = map[i] {
                    exps[j] += e;
                }
            }
            out.add_term(Monomial(exps), c.clone());
        }
        Ok(out)
    }

    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        if a.vars == b.vars {
            (a.clone(), b.clone())
        } else if a.vars.is_empty() {
            (a.with_vars(&b.vars).expect("constants embed anywhere"), b.clone())
        } else if b.vars.is_empty() {
            (a.clone(), b.with_vars(&a.vars).expect("constants embed anywhere"))
        } else {
            panic!("polynomial generator mismatch: {:?} vs {:?}", a.vars.names(), b.vars.names())
        }
    }

    /// Exact quotient `self / den`, by leading-term elimination in the
    /// graded-lexicographic order. Fails unless `den * q == self`.
    pub fn exact_div(&self, den: &Self) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (num, den) = Self::unify(self, den);
        let (lead_m, lead_c) = den.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = num;
        let mut quot = Self::zero(&den.vars);
        while let Some((m, c)) = rem.leading_term() {
            let inexact = || Error::InexactDivision(format!("({self}) / ({den})"));
            let qm = m.div(&lead_m).ok_or_else(inexact)?;
            if !(c % &lead_c).is_zero() {
                return Err(inexact());
            }
            let qc = c / &lead_c;
            rem -= den.mul_term(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Substitutes a polynomial for every generator. All bindings must live
    /// over one common generator list (integers are promoted).
    pub fn substitute(&self, bindings: &BTreeMap<String, IntPolynomial>) -> Result<Self> {
        let images = self
            .vars
            .names()
            .iter()
            .map(|n| bindings.get(n).ok_or_else(|| Error::MissingBinding(n.clone())))
            .collect::<Result<Vec<_>>>()?;
        let target = images.iter().map(|p| p.vars.clone()).find(|v| !v.is_empty()).unwrap_or_else(Variables::empty);
        let images = images.into_iter().map(|p| p.with_vars(&target)).collect::<Result<Vec<_>>>()?;
        let mut powers: Vec<Vec<IntPolynomial>> = images.iter().map(|_| vec![IntPolynomial::one(&target)]).collect();
        let mut out = Self::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Self::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out += term;
        }
        Ok(out)
    }

    /// Evaluates at integer values of every generator.
    pub fn evaluate(&self, values: &BTreeMap<String, BigInt>) -> Result<BigInt> {
        let vals = self
            .vars
            .names()
            .iter()
            .map(|n| values.get(n).ok_or_else(|| Error::MissingBinding(n.clone())))
            .collect::<Result<Vec<_>>>()?;
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in vals.iter().zip(&m.0) {
                t *= num_traits::pow(BigInt::clone(v), e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Positional evaluation, values in generator order.
    pub fn evaluate_at(&self, values: &[i64]) -> BigInt {
        assert_eq!(values.len(), self.vars.len(), "evaluation arity mismatch");
        let map = self.vars.names().iter().cloned().zip(values.iter().map(|&v| BigInt::from(v))).collect();
        self.evaluate(&map).expect("all generators bound")
    }

    /// Dense coefficient list, constant term first. Univariate only.
    pub fn coefficients(&self) -> Vec<BigInt> {
        assert!(self.vars.len() <= 1, "coefficients() requires a univariate polynomial");
        let Some(deg) = self.total_degree() else {
            return Vec::new();
        };
        let mut out = vec![BigInt::zero(); deg as usize + 1];
        for (m, c) in &self.terms {
            out[m.degree() as usize] = c.clone();
        }
        out
    }

    /// Leading term has coefficient 1 and total degree `degree`.
    pub fn is_monic_of_degree(&self, degree: u64) -> bool {
        self.leading_term().is_some_and(|(m, c)| m.degree() == degree && c.is_one())
    }

    pub fn is_palindromic(&self) -> bool {
        let coeffs = self.coefficients();
        coeffs.iter().eq(coeffs.iter().rev())
    }

    /// `{"vars":[...],"terms":[[[e1,...],"coeff"],...]}`, terms descending.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.terms.iter().rev().map(|(m, c)| json!([m.0, c.to_string()])).collect();
        json!({ "vars": self.vars.names(), "terms": terms })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::parse(Some(e.line()), e.to_string()))?;
        Self::from_json_value(&value)
    }

    pub fn from_json_value(value: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::parse(None, msg.to_string());
        let obj = value.as_object().ok_or_else(|| bad("expected a JSON object"))?;
        if obj.keys().any(|k| k != "vars" && k != "terms") {
            return Err(bad("unexpected key; only `vars` and `terms` are allowed"));
        }
        let names = obj
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("`vars` must be an array"))?
            .iter()
            .map(|v| v.as_str().map(str::to_string).ok_or_else(|| bad("variable names must be strings")))
            .collect::<Result<Vec<_>>>()?;
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || names[..i].contains(n) {
                return Err(bad("variable names must be nonempty and distinct"));
            }
        }
        let vars = Variables::new(names);
        let terms = obj.get("terms").and_then(Value::as_array).ok_or_else(|| bad("`terms` must be an array"))?;
        let mut p = Self::zero(&vars);
        for t in terms {
            let pair =
                t.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("each term must be [exponents, coeff]"))?;
            let exps = pair[0]
                .as_array()
                .ok_or_else(|| bad("exponents must be an array"))?
                .iter()
                .map(|e| {
                    e.as_u64()
                        .and_then(|e| u32::try_from(e).ok())
                        .ok_or_else(|| bad("exponents must be nonnegative 32-bit integers"))
                })
                .collect::<Result<Vec<_>>>()?;
            if exps.len() != vars.len() {
                return Err(bad("exponent vector arity does not match `vars`"));
            }
            let coeff =
                pair[1].as_str().and_then(parse_decimal).ok_or_else(|| bad("coefficients must be decimal strings"))?;
            let m = Monomial(exps);
            if p.terms.contains_key(&m) {
                return Err(bad("repeated monomial"));
            }
            p.add_term(m, coeff);
        }
        Ok(p)
    }
}

fn parse_decimal(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parses comma-separated integer coefficients, constant term first, into a
/// polynomial in `q`.
pub fn parse_coefficient_list(text: &str) -> Result<IntPolynomial> {
    let coeffs = text
        .trim()
        .split(',')
        .enumerate()
        .map(|(i, tok)| {
            parse_decimal(tok.trim())
                .ok_or_else(|| Error::parse(None, format!("coefficient {} (`{}`) is not an integer", i, tok.trim())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPolynomial::univariate("q", coeffs))
}

/// `[d]_q = 1 + q + ... + q^(d-1)`.
pub fn q_analogue(d: u32) -> IntPolynomial {
    let mut p = IntPolynomial::zero(&Variables::new(["q"]));
    for i in 0..d {
        p.add_term(Monomial(vec![i]), BigInt::one());
    }
    p
}

/// `h_d(a, b) = sum_{i=0}^{d} a^i b^(d-i)`, the complete homogeneous
/// polynomial of degree `d` in two arguments.
pub fn h_poly(d: u32, a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let (a, b) = IntPolynomial::unify(a, b);
    let mut a_pows = vec![IntPolynomial::one(&a.vars)];
    let mut b_pows = vec![IntPolynomial::one(&b.vars)];
    for i in 0..d as usize {
        a_pows.push(&a_pows[i] * &a);
        b_pows.push(&b_pows[i] * &b);
    }
    let mut sum = IntPolynomial::zero(&a.vars);
    for i in 0..=d as usize {
        sum += &a_pows[i] * &b_pows[d as usize - i];
    }
    sum
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let factors: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        let name = &self.vars.names()[i];
                        if e == 1 {
                            name.clone()
                        } else {
                            format!("{name}^{e}")
                        }
                    })
                    .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl AddAssign<IntPolynomial> for IntPolynomial {
    fn add_assign(&mut self, rhs: IntPolynomial) {
        *self += &rhs;
    }
}

impl AddAssign<&IntPolynomial> for IntPolynomial {
    fn add_assign(&mut self, rhs: &IntPolynomial) {
        if self.vars != rhs.vars {
            let (a, b) = IntPolynomial::unify(self, rhs);
            *self = a;
            for (m, c) in b.terms {
                self.add_term(m, c);
            }
            return;
        }
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<IntPolynomial> for IntPolynomial {
    fn sub_assign(&mut self, rhs: IntPolynomial) {
        *self += -rhs;
    }
}

impl SubAssign<&IntPolynomial> for IntPolynomial {
    fn sub_assign(&mut self, rhs: &IntPolynomial) {
        *self += -rhs;
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(mut self) -> IntPolynomial {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        let (a, b) = IntPolynomial::unify(self, rhs);
        let mut out = IntPolynomial::zero(&a.vars);
        for (m, c) in &a.terms {
            for (n, d) in &b.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $method(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $method(self, rhs: &IntPolynomial) -> IntPolynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<IntPolynomial> for &IntPolynomial {
            type Output = IntPolynomial;
            fn $method(self, rhs: IntPolynomial) -> IntPolynomial {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);
