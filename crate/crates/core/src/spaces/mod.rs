//! Concrete spaces: the lean dyadic reals and unit interval, the rational
//! interval reference reals, n-ary trees, Baire and Cantor space, and finite
//! products.

pub mod baire;
pub mod lean;
pub mod nary;
pub mod product;
pub mod rational_interval;

pub use baire::{baire_relations, BaireDot, BaireSpace};
pub use lean::{
    from_rational, from_rational_with_depths, hull_at_depth, lean_apart, lean_children,
    LeanDyadicDot, Sigma01, SigmaR,
};
pub use nary::{
    nary_dot_relations, nary_from_rational, nary_unit_from_rational, NAryDot, NAryKind, NAryLine,
    NAryUnit,
};
pub use product::{PairDot, Product};
pub use rational_interval::{RRat, RationalIntervalDot};
