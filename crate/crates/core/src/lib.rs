//! Certificates for surface subgroups of right-angled Artin groups.
//!
//! Given a finite simple graph `G`, the right-angled Artin group `A(G)` has
//! one generator per vertex and a commutation relation per edge. This crate
//! decides, where it can, whether `A(G)` contains a hyperbolic surface group,
//! and backs every answer with a certificate that an independent checker
//! replays:
//!
//! * [`obstruction`] finds induced forbidden graphs, possibly after a chain of
//!   co-contractions, which witness that a surface subgroup exists;
//! * [`prover`] searches for a derivation in the closure class generated by
//!   complete graphs under join, clique amalgamation, bisimplicial edge
//!   addition and co-contraction, which rules one out; [`checker`] replays it;
//! * [`classify`] combines both and never conflates "unknown" with "no".
//!
//! [`words`] solves the word problem in `A(G)` and checks surface-group
//! homomorphisms and their boundary conditions.

pub mod checker;
pub mod classify;
pub mod error;
pub mod graph;
pub mod obstruction;
pub mod ops;
pub mod prover;
pub mod recognize;
pub mod report;
pub mod words;

pub use classify::{classify, ClassifyConfig, Verdict};
pub use error::*;
pub use graph::{Graph, VertexId, VertexMap};

/// Crate version, embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
