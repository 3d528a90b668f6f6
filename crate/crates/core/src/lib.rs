//! Exact clique-maximization workbench for graphs that forbid k
//! vertex-disjoint copies of a small connected pattern.
//!
//! The crate provides:
//!
//! - compact immutable graphs on up to 64 vertices with a bit-exact
//!   graph6 codec ([`graph`], [`graph6`]);
//! - exact canonical labeling for isomorphism classes ([`canon`]);
//! - exact s-clique counting, rooted counts, and clique support
//!   ([`cliques`]);
//! - vertex-disjoint packing decisions, with a dedicated branch and
//!   bound for the three-vertex path ([`packing`]);
//! - closed-form evaluators and bound sums over an `ex` oracle
//!   ([`formulas`]);
//! - builders for the candidate extremal families ([`constructions`]);
//! - isomorph-free exhaustive enumeration and exact optima with all
//!   optimizers ([`search`]);
//! - end-to-end verification reports ([`verify`]).
//!
//! Everything is immutable and pure; all operations are safe to call
//! concurrently.

pub mod canon;
pub mod cliques;
pub mod constructions;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod graph6;
pub mod packing;
pub mod search;
pub mod verify;

pub use canon::{are_isomorphic, canonical_label, CanonicalLabel};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet, MAX_ORDER};
pub use packing::PatternGraph;
