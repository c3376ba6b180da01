//! Exact toolkit for two-distance sets that contain a regular simplex.
//!
//! The crate constructs the maximal two-distance sets of its instance
//! catalog, certifies the two-distance property by exact rational geometry,
//! and certifies maximality by exhaustive combinatorial search. Everything is
//! deterministic and tolerance-free: distances are certified as equalities of
//! rationals, and maximality verdicts come with exhaustion accounting.
//!
//! Module map:
//! - [`exactgeom`]: the hyperplane model, simplex, embedding, spectra.
//! - [`paramspace`]: admissible `(d, k, k', beta, alpha)` enumeration per
//!   integer LRS ratio.
//! - [`designs`]: affine planes, the Witt design family, Hadamard and
//!   intersecting families, design verification, padding.
//! - [`searcher`]: addability, instance catalog, two-distance verification,
//!   maximality certification, obstruction and clique searches.
//! - [`report`]: JSON schemas for instances and reports.

pub mod bits;
pub mod designs;
pub mod exactgeom;
pub mod paramspace;
pub mod rational;
pub mod report;
pub mod searcher;

pub use exactgeom::{CandidateVector, Point};
pub use paramspace::{Branch, ParamTuple};
pub use rational::Rational;
