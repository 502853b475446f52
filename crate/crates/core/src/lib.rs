//! Exact computation over topological spaces presented by countable sets of
//! basic dots.
//!
//! A space is a countable set of dots with a decidable apartness and a
//! decidable refinement order; a point is a lazily produced, strictly
//! shrinking stream of dots; a continuous function is a dot-to-dot map that
//! sends points to points. On top of this the crate ships:
//!
//! * the lean dyadic reals `sigma_R` (dots `[n/2^m, (n+2)/2^m]`) with exact
//!   arithmetic as refinement morphisms and stream transducers;
//! * n-ary (binary/ternary/decimal) trees, Baire and Cantor space, finite
//!   products, and the rational-interval reference reals;
//! * trea structure: depth grading, successor trails, unglueing of glued
//!   spaces into trees, and fann (finitely-branching) checks;
//! * conversion of stateful stream transducers into plain dot maps over
//!   `sigma_R` via two-level interval widening;
//! * construction of a fann from a totally bounded metric presentation with
//!   deterministic choice rules for refinement and apartness;
//! * an expression layer evaluating rational arithmetic to any requested
//!   precision, and the in/out/let decision demo built on it.
//!
//! Everything is exact: relations compare integers, streams carry dyadic or
//! rational endpoints, and no floating point appears anywhere.

pub mod arith;
pub mod axioms;
pub mod error;
pub mod expr;
pub mod fragment;
pub mod metric;
pub mod morphism;
pub mod point;
pub mod rational;
pub mod space;
pub mod spaces;
pub mod text;
pub mod trail;

pub use error::{Error, Result};
pub use point::{
    begins_with, chooses_between, point_prefix_valid, points_apart_within, ApartnessWitness, Point,
    Side,
};
pub use space::{grd, strictly_refines, touch, Graded, Space};
