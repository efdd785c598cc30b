//! Exact invariants of graph picture spaces.
//!
//! Given a multigraph `G` and a dimension `d >= 2`, the space of pictures of
//! `G` in complex projective `d`-space (a point per vertex, a line per edge,
//! incidences respected) has free even-dimensional homology whose ranks are a
//! specialization of the Tutte polynomial. This crate computes:
//!
//! * Tutte polynomials by memoized deletion-contraction, with a
//!   corank-nullity subset expansion as an independent check ([`tutte`]);
//! * compressed Poincaré series, their generalization to pictures on other
//!   manifolds, the `d`-parallel independence test and the cellule dimension
//!   bound ([`homology`]);
//! * integral cohomology rings of orchards (forests with loops) with a
//!   normal-form reducer, monomial basis and point class ([`orchard`]);
//! * Schubert polynomials, pullback classes and intersection numbers on
//!   orchard picture spaces ([`schubert`]).
//!
//! All arithmetic is exact over arbitrary-precision integers.

pub mod error;
pub mod graph;
pub mod homology;
pub mod orchard;
pub mod poly;
pub mod recurrence;
pub mod schubert;
pub mod tutte;

pub use error::{Error, Result};
pub use graph::{Multigraph, Partition};
pub use poly::{IntPolynomial, Monomial, Variables};

/// Size guards for the exponential enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest edge count accepted by the `2^e` subset expansion.
    pub max_subset_edges: usize,
    /// Largest vertex count accepted by set-partition enumeration.
    pub max_partition_vertices: usize,
    /// Largest picture-space dimension `d`.
    pub max_d: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_subset_edges: 24, max_partition_vertices: 14, max_d: 64 }
    }
}

impl Limits {
    pub fn unbounded() -> Self {
        Limits { max_subset_edges: usize::MAX, max_partition_vertices: usize::MAX, max_d: u32::MAX }
    }

    pub(crate) fn check_subset_edges(&self, e: usize) -> Result<()> {
        guard("edge count for subset expansion", e as u64, self.max_subset_edges as u64)
    }

    pub(crate) fn check_partition_vertices(&self, v: usize) -> Result<()> {
        guard("vertex count for partition enumeration", v as u64, self.max_partition_vertices as u64)
    }

    /// `2 <= d <= max_d`.
    pub(crate) fn check_d(&self, d: u32) -> Result<()> {
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
        guard("dimension d", u64::from(d), u64::from(self.max_d))
    }
}

fn guard(what: &'static str, value: u64, limit: u64) -> Result<()> {
    if value > limit {
        Err(Error::GuardExceeded { what, value, limit })
    } else {
        Ok(())
    }
}
