//! Finite commutative rings, their compressed intersection annihilator
//! graphs `IA(R)`, torsion and total graphs, graph invariants, and an
//! executable theorem harness.

pub mod analysis;
pub mod arith;
pub mod caps;
pub mod error;
pub mod graph;
pub mod harness;
pub mod ring;

pub use analysis::{invariants, is_complete_bipartite, is_isomorphic, Extent, InvariantReport};
pub use arith::Factorization;
pub use caps::Caps;
pub use error::{Error, Result};
pub use graph::{Graph, GraphKind};
pub use harness::{
    check_ring, check_subject, sweep, CheckId, Family, Report, Subject, SweepConfig, TheoremCheck,
};
pub use ring::{AnnKey, Element, ElementSet, FiniteRing, RingSpec};
