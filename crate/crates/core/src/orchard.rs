//! Integral cohomology rings of orchard picture spaces.
//!
//! An orchard is a graph in which every edge is a loop or an isthmus. Its
//! picture space is an iterated projective bundle, and
//! `H^*(X^d(G); Z)` is the quotient of `Z[x_v, z_e]` by
//!
//! ```text
//! x_v^(d+1)                      for every vertex v
//! h_d(x_v, z_e - x_v)            for every edge e at v
//! (x_v - x_w)(z_e - x_v - x_w)   for every isthmus e = vw
//! ```
//!
//! Normal forms come from the bundle tower. Pruning the graph (remove a loop,
//! or remove a leaf and turn its edge into a loop at the neighbour) until only
//! isolated roots remain and reading the steps backwards gives, for each
//! generator, one relation that is monic in a pure power of it:
//!
//! * root `r`: `x_r^(d+1) = 0`;
//! * loop `e` at `v`: `z_e^d = z_e^d - h_d(x_v, z_e - x_v)`;
//! * leaf `v` hanging from `w` by `e`: `x_v^2 = x_v z_e - x_w z_e + x_w^2`.
//!
//! Each right-hand side only involves the generator itself to a lower power
//! and generators introduced earlier in the tower, so rewriting terminates in
//! the lexicographic order that ranks later generators higher. The leading
//! terms are pairwise coprime, which makes the rules a Gröbner basis and the
//! normal form unique.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{Id, Multigraph};
use crate::poly::{h_poly, IntPolynomial, Monomial, Variables};
use crate::Limits;

pub fn is_orchard(g: &Multigraph) -> bool {
    g.is_orchard()
}

/// One step of pruning an orchard down to its roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PruneStep {
    /// Remove the loop `edge` at `vertex`.
    Loop { edge: Id, vertex: Id },
    /// Remove the leaf `vertex` together with its only edge, which reappears
    /// as a loop at `parent`.
    Leaf { vertex: Id, edge: Id, parent: Id },
}

impl fmt::Display for PruneStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PruneStep::Loop { edge, vertex } => write!(f, "loop {edge} at {vertex}"),
            PruneStep::Leaf { vertex, edge, parent } => write!(f, "leaf {vertex} via {edge} to {parent}"),
        }
    }
}

#[derive(Debug)]
struct RingData {
    graph: Multigraph,
    d: u32,
    key: String,
    vars: Variables,
    pruning: Vec<PruneStep>,
    roots: Vec<Id>,
    /// Generator indices from the top of the tower down.
    order: Vec<usize>,
    bounds: Vec<u32>,
    /// `replacement[i]` equals `gen_i ^ bounds[i]` in the ring.
    replacement: Vec<IntPolynomial>,
    relations: Vec<(String, IntPolynomial)>,
    basis: Vec<Monomial>,
}

/// `H^*(X^d(G); Z)` for an orchard `G`. Cheap to clone.
#[derive(Clone, Debug)]
pub struct OrchardRing(Arc<RingData>);

impl PartialEq for OrchardRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.key == other.0.key
    }
}

impl Eq for OrchardRing {}

pub fn vertex_generator(v: &str) -> String {
    format!("x_{v}")
}

pub fn edge_generator(e: &str) -> String {
    format!("z_{e}")
}

fn prune(g: &Multigraph) -> (Vec<PruneStep>, Vec<Id>) {
    let mut edges: BTreeMap<Id, (Id, Id)> = g.edges().map(|(id, e)| (id.clone(), (e.u.clone(), e.w.clone()))).collect();
    let mut vertices: Vec<Id> = g.vertices().cloned().collect();
    let mut steps = Vec::new();
    loop {
        if let Some((id, (v, _))) = edges.iter().find(|(_, (u, w))| u == w) {
            steps.push(PruneStep::Loop { edge: id.clone(), vertex: v.clone() });
            let id = id.clone();
            edges.remove(&id);
            continue;
        }
        let leaf = vertices.iter().find_map(|v| {
            let mut inc = edges.iter().filter(|(_, (a, b))| a == v || b == v);
            match (inc.next(), inc.next()) {
                (Some((id, (a, b))), None) => Some((v.clone(), id.clone(), if a == v { b.clone() } else { a.clone() })),
                _ => None,
            }
        });
        let Some((vertex, edge, parent)) = leaf else { break };
        vertices.retain(|x| *x != vertex);
        edges.insert(edge.clone(), (parent.clone(), parent.clone()));
        steps.push(PruneStep::Leaf { vertex, edge, parent });
    }
    debug_assert!(edges.is_empty(), "orchards prune completely");
    (steps, vertices)
}

impl OrchardRing {
    pub fn build(g: &Multigraph, d: u32) -> Result<Self> {
        Self::build_with(g, d, &Limits::default())
    }

    pub fn build_with(g: &Multigraph, d: u32, limits: &Limits) -> Result<Self> {
        limits.check_d(d)?;
        for (id, e) in g.edges() {
            if !e.is_loop() && !g.is_isthmus(id)? {
                return Err(Error::NotOrchard(id.to_string()));
            }
        }
        let names: Vec<String> =
            g.vertices().map(|v| vertex_generator(v)).chain(g.edges().map(|(e, _)| edge_generator(e))).collect();
        let vars = Variables::new(names);
        let x_idx = |v: &str| vars.index_of(&vertex_generator(v)).expect("vertex generator");
        let z_idx = |e: &str| vars.index_of(&edge_generator(e)).expect("edge generator");
        let gen = |i: usize| IntPolynomial::generator_at(&vars, i);

        let (pruning, roots) = prune(g);
        let n = vars.len();
        let mut bounds = vec![0; n];
        let mut replacement = vec![IntPolynomial::zero(&vars); n];
        let mut bottom_up = Vec::with_capacity(n);
        for r in &roots {
            let i = x_idx(r);
            bounds[i] = d + 1;
            bottom_up.push(i);
        }
        for step in pruning.iter().rev() {
            match step {
                PruneStep::Loop { edge, vertex } => {
                    let (z, x) = (gen(z_idx(edge)), gen(x_idx(vertex)));
                    let i = z_idx(edge);
                    bounds[i] = d;
                    replacement[i] = z.pow(d) - h_poly(d, &x, &(&z - &x));
                    bottom_up.push(i);
                }
                PruneStep::Leaf { vertex, edge, parent } => {
                    let (xv, z, xw) = (gen(x_idx(vertex)), gen(z_idx(edge)), gen(x_idx(parent)));
                    let i = x_idx(vertex);
                    bounds[i] = 2;
                    replacement[i] = &(&xv * &z) - &(&xw * &z) + &xw * &xw;
                    bottom_up.push(i);
                }
            }
        }
        debug_assert_eq!(bottom_up.len(), n);
        let order: Vec<usize> = bottom_up.into_iter().rev().collect();

        let mut relations = Vec::new();
        for v in g.vertices() {
            relations.push((format!("{}^{}", vertex_generator(v), d + 1), gen(x_idx(v)).pow(d + 1)));
        }
        for v in g.vertices() {
            let x = gen(x_idx(v));
            for (e, _) in g.incident_edges(v) {
                let z = gen(z_idx(e));
                relations.push((
                    format!("h_{d}({}, {} - {})", vertex_generator(v), edge_generator(e), vertex_generator(v)),
                    h_poly(d, &x, &(&z - &x)),
                ));
            }
        }
        for (e, ends) in g.edges().filter(|(_, e)| !e.is_loop()) {
            let (xv, xw, z) = (gen(x_idx(&ends.u)), gen(x_idx(&ends.w)), gen(z_idx(e)));
            relations.push((format!("mixed relation of {e}"), (&xv - &xw) * (&(&z - &xv) - &xw)));
        }

        let basis = enumerate_basis(&bounds);
        let key = format!("{}d={d}", g.to_text());
        Ok(OrchardRing(Arc::new(RingData {
            graph: g.clone(),
            d,
            key,
            vars,
            pruning,
            roots,
            order,
            bounds,
            replacement,
            relations,
            basis,
        })))
    }

    pub fn graph(&self) -> &Multigraph {
        &self.0.graph
    }

    pub fn d(&self) -> u32 {
        self.0.d
    }

    pub fn variables(&self) -> &Variables {
        &self.0.vars
    }

    pub fn generator(&self, name: &str) -> Result<CohomologyClass> {
        let p = IntPolynomial::generator(&self.0.vars, name)?;
        Ok(self.reduce_internal(&p))
    }

    pub fn pruning_order(&self) -> &[PruneStep] {
        &self.0.pruning
    }

    pub fn roots(&self) -> &[Id] {
        &self.0.roots
    }

    /// Exponent bound per generator in the normal-form basis.
    pub fn exponent_bounds(&self) -> &[u32] {
        &self.0.bounds
    }

    /// Rewriting rules `generator^bound -> replacement`, top of the tower first.
    pub fn rewrite_rules(&self) -> impl Iterator<Item = (&str, u32, &IntPolynomial)> {
        self.0.order.iter().map(|&i| (self.0.vars.names()[i].as_str(), self.0.bounds[i], &self.0.replacement[i]))
    }

    /// The defining relations in `x_v`, `z_e` form.
    pub fn relations(&self) -> &[(String, IntPolynomial)] {
        &self.0.relations
    }

    /// The relations in terms of `x_v` and `y_{e,v}`, rewritten through
    /// `y_{e,v} = z_e - x_v`.
    pub fn bundle_relations(&self) -> Vec<IntPolynomial> {
        let vars = &self.0.vars;
        let d = self.0.d;
        let x = |v: &str| IntPolynomial::generator(vars, &vertex_generator(v)).unwrap();
        let y = |e: &str, v: &str| IntPolynomial::generator(vars, &edge_generator(e)).unwrap() - x(v);
        let g = &self.0.graph;
        let mut out = Vec::new();
        for v in g.vertices() {
            out.push(x(v).pow(d + 1));
            for (e, _) in g.incident_edges(v) {
                out.push(h_poly(d, &x(v), &y(e, v)));
            }
        }
        for (e, ends) in g.edges().filter(|(_, e)| !e.is_loop()) {
            let (v, w) = (&*ends.u, &*ends.w);
            out.push(&(&x(v) - &x(w)) + &(&y(e, v) - &y(e, w)));
            out.push(&(&x(v) * &y(e, v)) - &(&x(w) * &y(e, w)));
        }
        out
    }

    /// Normal-form monomials, in ascending graded order.
    pub fn basis(&self) -> &[Monomial] {
        &self.0.basis
    }

    pub fn top_degree(&self) -> u64 {
        self.0.bounds.iter().map(|&b| u64::from(b - 1)).sum()
    }

    /// Number of basis monomials in each degree `0..=top_degree`.
    pub fn graded_ranks(&self) -> Vec<u64> {
        let mut ranks = vec![0; self.top_degree() as usize + 1];
        for m in &self.0.basis {
            ranks[m.degree() as usize] += 1;
        }
        ranks
    }

    /// The unique basis monomial of top degree.
    pub fn top_monomial(&self) -> Monomial {
        Monomial::new(self.0.bounds.iter().map(|b| b - 1).collect())
    }

    /// Normal form of `p`, which may use any subset of the ring generators.
    pub fn reduce(&self, p: &IntPolynomial) -> Result<CohomologyClass> {
        let p = p.with_vars(&self.0.vars)?;
        Ok(self.reduce_internal(&p))
    }

    fn reduce_internal(&self, p: &IntPolynomial) -> CohomologyClass {
        let data = &*self.0;
        let to_key = |exps: &[u32]| -> Vec<u32> { data.order.iter().map(|&i| exps[i]).collect() };
        let from_key = |key: &[u32]| -> Vec<u32> {
            let mut exps = vec![0; key.len()];
            for (k, &i) in data.order.iter().enumerate() {
                exps[i] = key[k];
            }
            exps
        };
        let mut work: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        let add = |work: &mut BTreeMap<Vec<u32>, BigInt>, key: Vec<u32>, c: BigInt| {
            let slot = work.entry(key).or_insert_with(BigInt::zero);
            *slot += c;
        };
        for (m, c) in p.terms() {
            add(&mut work, to_key(m.exponents()), c.clone());
        }
        let mut out = IntPolynomial::zero(&data.vars);
        while let Some((key, c)) = work.pop_last() {
            if c.is_zero() {
                continue;
            }
            let mut exps = from_key(&key);
            let Some(&i) = data.order.iter().find(|&&i| exps[i] >= data.bounds[i]) else {
                out.add_term(Monomial::new(exps), c);
                continue;
            };
            exps[i] -= data.bounds[i];
            let rest = Monomial::new(exps);
            for (rm, rc) in data.replacement[i].terms() {
                add(&mut work, to_key(rest.mul(rm).exponents()), &c * rc);
            }
        }
        CohomologyClass { ring: self.clone(), poly: out }
    }

    /// `prod_v x_v^d prod_{loops e at v} h_{d-1}(x_v, z_e - x_v)`.
    pub fn point_class(&self) -> CohomologyClass {
        let vars = &self.0.vars;
        let d = self.0.d;
        let g = &self.0.graph;
        let mut p = IntPolynomial::one(vars);
        for v in g.vertices() {
            let x = IntPolynomial::generator(vars, &vertex_generator(v)).unwrap();
            p = p * x.pow(d);
            for (e, ends) in g.incident_edges(v) {
                if ends.is_loop() {
                    let z = IntPolynomial::generator(vars, &edge_generator(e)).unwrap();
                    p = p * h_poly(d - 1, &x, &(&z - &x));
                }
            }
        }
        self.reduce_internal(&p)
    }

    /// The coefficient `lambda` with `class_top = lambda * [point]`, where
    /// `class_top` is the top-degree component of `class`.
    pub fn point_multiple(&self, class: &CohomologyClass) -> Result<BigInt> {
        self.check_owns(class)?;
        let top = self.top_monomial();
        let pc = self.point_class().poly.coeff(&top);
        let c = class.poly.coeff(&top);
        if pc.is_zero() || !(&c % &pc).is_zero() {
            return Err(Error::Internal(format!("top class {c} is not a multiple of the point class {pc}")));
        }
        Ok(c / pc)
    }

    fn check_owns(&self, class: &CohomologyClass) -> Result<()> {
        if &class.ring == self {
            Ok(())
        } else {
            Err(Error::ForeignRing)
        }
    }

    pub fn to_json(&self) -> Value {
        let vars = &self.0.vars;
        let render =
            |m: &Monomial| IntPolynomial::from_terms(vars, [(m.exponents().to_vec(), BigInt::one())]).to_string();
        json!({
            "d": self.0.d,
            "generators": vars.names(),
            "relations": self.0.relations.iter().map(|(name, p)| json!({"name": name, "polynomial": p.to_string()})).collect::<Vec<_>>(),
            "pruning_order": self.0.pruning.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "roots": self.0.roots.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "rewrite_rules": self.rewrite_rules().map(|(g, b, r)| json!({"lhs": format!("{g}^{b}"), "rhs": r.to_string()})).collect::<Vec<_>>(),
            "basis": self.0.basis.iter().map(render).collect::<Vec<_>>(),
            "graded_ranks": self.graded_ranks(),
            "point_class": self.point_class().to_string(),
        })
    }
}

fn enumerate_basis(bounds: &[u32]) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..b).map(move |e| {
                    let mut next = prefix.clone();
                    next.push(e);
                    next
                })
            })
            .collect();
    }
    let mut basis: Vec<Monomial> = out.into_iter().map(Monomial::new).collect();
    basis.sort();
    basis
}

/// A reduced element of an [`OrchardRing`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    ring: OrchardRing,
    poly: IntPolynomial,
}

impl CohomologyClass {
    pub fn ring(&self) -> &OrchardRing {
        &self.ring
    }

    /// The normal-form representative.
    pub fn polynomial(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, other: &CohomologyClass) -> Result<CohomologyClass> {
        self.ring.check_owns(other)?;
        Ok(CohomologyClass { ring: self.ring.clone(), poly: &self.poly + &other.poly })
    }

    pub fn mul(&self, other: &CohomologyClass) -> Result<CohomologyClass> {
        self.ring.check_owns(other)?;
        Ok(self.ring.reduce_internal(&(&self.poly * &other.poly)))
    }

    pub fn scale(&self, c: &BigInt) -> CohomologyClass {
        CohomologyClass { ring: self.ring.clone(), poly: self.poly.scale(c) }
    }
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}
