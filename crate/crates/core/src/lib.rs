//! Exact calculator for the cohomology Bousfield-Kan spectral sequences of the
//! diagonal cosimplicial models of spaces of long knots, string links, homotopy
//! string links and braids in `R^n`.
//!
//! The levels of those cosimplicial spaces are (partial) configuration spaces,
//! whose cohomology is presented by chord diagrams: degree-`(n-1)` generators
//! indexed by edges of a graph (complete for links, complete multipartite for
//! homotopy links, per-tensor-factor complete for braids), subject to
//! square-zero, (anti)commutativity and circuit relations.  Everything is
//! computed in exact arithmetic, over the rationals or a prime field.
//!
//! Module map:
//! * [`graph`] — vertex/edge combinatorics of the underlying subspace
//!   arrangement, plus the deletion-contraction chromatic polynomial used as an
//!   independent rank oracle;
//! * [`chords`] — normal-form (no-broken-circuit) bases and straightening;
//! * [`simplex`] — index calculus of the category Δ and the cosimplicial
//!   identity harness;
//! * [`models`] — the level cohomologies of the four families and the induced
//!   coface/codegeneracy pullbacks;
//! * [`linalg`] — exact sparse linear algebra over Q and prime fields;
//! * [`specseq`] — assembly of the normalized E1 page, d1, and E2;
//! * [`connectivity`] — quantitative connectivity estimates and convergence
//!   verdicts;
//! * [`report`], [`job`] — serialization and the batch front end used by the
//!   `ss` binary.

pub mod chords;
pub mod connectivity;
pub mod graph;
pub mod job;
pub mod linalg;
pub mod models;
pub mod poly;
pub mod report;
pub mod simplex;
pub mod specseq;

mod error;

pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T, E = Error> = std::result::Result<T, E>;
