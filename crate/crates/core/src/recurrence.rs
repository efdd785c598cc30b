//! Memoized deletion-contraction evaluation.
//!
//! Both the Tutte polynomial and the Poincaré series of a picture space obey a
//! recurrence of the same shape: a closed value on edgeless graphs, and one
//! rule each for loops, isthmuses and all other edges. [`DeletionContraction`]
//! captures one such recurrence; [`evaluate`] runs it with the canonical pivot
//! rule and a memo table keyed by [`Multigraph::canonical_key`].

use std::collections::HashMap;
use std::sync::Mutex;

use crate::graph::{Id, Multigraph};
use crate::poly::IntPolynomial;

pub trait DeletionContraction {
    /// Distinguishes this recurrence (and its parameters) in a shared cache.
    fn tag(&self) -> Vec<u8>;
    fn edgeless(&self, g: &Multigraph) -> IntPolynomial;
    fn on_loop(&self, deleted: IntPolynomial) -> IntPolynomial;
    fn on_isthmus(&self, contracted: IntPolynomial) -> IntPolynomial;
    fn on_ordinary(&self, deleted: IntPolynomial, contracted: IntPolynomial) -> IntPolynomial;
}

/// Memo table that may be shared between computations and threads.
#[derive(Debug, Default)]
pub struct SharedCache {
    table: Mutex<HashMap<Vec<u8>, IntPolynomial>>,
}

impl SharedCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.table.lock().unwrap().clear();
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub enum CacheMode<'a> {
    /// A fresh table for each top-level call.
    #[default]
    PerCall,
    Shared(&'a SharedCache),
    Disabled,
}

enum Table<'a> {
    Local(HashMap<Vec<u8>, IntPolynomial>),
    Shared(&'a SharedCache),
    None,
}

impl Table<'_> {
    fn get(&self, key: &[u8]) -> Option<IntPolynomial> {
        match self {
            Table::Local(m) => m.get(key).cloned(),
            Table::Shared(c) => c.table.lock().unwrap().get(key).cloned(),
            Table::None => None,
        }
    }

    fn put(&mut self, key: Vec<u8>, value: &IntPolynomial) {
        match self {
            Table::Local(m) => {
                m.insert(key, value.clone());
            }
            Table::Shared(c) => {
                c.table.lock().unwrap().insert(key, value.clone());
            }
            Table::None => {}
        }
    }
}

/// What the canonical pivot rule found.
pub(crate) enum Pivot {
    Loop(Id),
    Isthmus(Id),
    Ordinary(Id),
}

/// Loops first, then isthmuses, then the smallest remaining edge; ties broken
/// by smallest edge id.
pub(crate) fn canonical_pivot(g: &Multigraph) -> Option<Pivot> {
    if let Some((id, _)) = g.edges().find(|(_, e)| e.is_loop()) {
        return Some(Pivot::Loop(id.clone()));
    }
    let first = g.edges().next()?.0.clone();
    for (id, _) in g.edges() {
        if g.is_isthmus(id).expect("edge exists") {
            return Some(Pivot::Isthmus(id.clone()));
        }
    }
    Some(Pivot::Ordinary(first))
}

fn classify(g: &Multigraph, id: Id) -> Pivot {
    if g.is_loop(&id).expect("edge exists") {
        Pivot::Loop(id)
    } else if g.is_isthmus(&id).expect("edge exists") {
        Pivot::Isthmus(id)
    } else {
        Pivot::Ordinary(id)
    }
}

pub fn evaluate<R: DeletionContraction + ?Sized>(rec: &R, g: &Multigraph, cache: CacheMode<'_>) -> IntPolynomial {
    let mut table = match cache {
        CacheMode::PerCall => Table::Local(HashMap::new()),
        CacheMode::Shared(c) => Table::Shared(c),
        CacheMode::Disabled => Table::None,
    };
    let tag = rec.tag();
    eval_rec(rec, g, &tag, &mut table, &mut |g| canonical_pivot(g))
}

/// Runs the recurrence without memoization, letting `choose` pick the pivot
/// edge at every step. The result must not depend on the choices.
pub fn evaluate_with_pivots<R, F>(rec: &R, g: &Multigraph, mut choose: F) -> IntPolynomial
where
    R: DeletionContraction + ?Sized,
    F: FnMut(&Multigraph) -> Id,
{
    let mut table = Table::None;
    let mut pick = |g: &Multigraph| {
        if g.num_edges() == 0 {
            None
        } else {
            Some(classify(g, choose(g)))
        }
    };
    eval_rec(rec, g, &[], &mut table, &mut pick)
}

fn eval_rec<R: DeletionContraction + ?Sized>(
    rec: &R,
    g: &Multigraph,
    tag: &[u8],
    table: &mut Table<'_>,
    pick: &mut dyn FnMut(&Multigraph) -> Option<Pivot>,
) -> IntPolynomial {
    let key = if matches!(table, Table::None) {
        Vec::new()
    } else {
        let mut k = tag.to_vec();
        k.extend(g.canonical_key());
        if let Some(hit) = table.get(&k) {
            return hit;
        }
        k
    };
    let value = match pick(g) {
        None => rec.edgeless(g),
        Some(Pivot::Loop(e)) => {
            let deleted = eval_rec(rec, &g.delete(&e).unwrap(), tag, table, pick);
            rec.on_loop(deleted)
        }
        Some(Pivot::Isthmus(e)) => {
            let contracted = eval_rec(rec, &g.contract(&e).unwrap(), tag, table, pick);
            rec.on_isthmus(contracted)
        }
        Some(Pivot::Ordinary(e)) => {
            let deleted = eval_rec(rec, &g.delete(&e).unwrap(), tag, table, pick);
            let contracted = eval_rec(rec, &g.contract(&e).unwrap(), tag, table, pick);
            rec.on_ordinary(deleted, contracted)
        }
    };
    table.put(key, &value);
    value
}
