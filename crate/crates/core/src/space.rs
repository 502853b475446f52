//! The space contract: a countable set of basic dots carrying a decidable
//! pre-apartness and a decidable refinement partial order.
//!
//! Required laws, checked exhaustively on finite fragments by the axiom suite
//! ([`crate::axioms`]):
//!
//! * `apart` is symmetric and antireflexive;
//! * `refines` is reflexive, transitive and antisymmetric;
//! * `refines(a, b)` and `apart(c, b)` imply `apart(c, a)`;
//! * every dot refines `maximal_dot()`.

use std::fmt;
use std::hash::Hash;

use crate::error::Result;

/// A space descriptor. Immutable, cheap to clone, freely shareable.
pub trait Space: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Dot: Clone + Eq + Hash + Ord + fmt::Debug + fmt::Display + Send + Sync;

    /// Short human-readable name used in diagnostics.
    fn name(&self) -> String;

    /// Whether the value denotes a dot of this space.
    fn is_dot(&self, a: &Self::Dot) -> bool;

    fn apart(&self, a: &Self::Dot, b: &Self::Dot) -> bool;

    fn refines(&self, a: &Self::Dot, b: &Self::Dot) -> bool;

    fn maximal_dot(&self) -> Self::Dot;

    // ----- derived ---------------------------------------------------------

    /// Decidable complement of `apart`.
    fn touch(&self, a: &Self::Dot, b: &Self::Dot) -> bool {
        !self.apart(a, b)
    }

    /// `refines(a, b)` with `a != b`.
    fn strictly_refines(&self, a: &Self::Dot, b: &Self::Dot) -> bool {
        a != b && self.refines(a, b)
    }

    fn is_maximal(&self, a: &Self::Dot) -> bool {
        *a == self.maximal_dot()
    }
}

/// A graded space: dots are stratified into levels and each successor step
/// descends exactly one level. This is what makes successor trails, treas and
/// fanns meaningful.
pub trait Graded: Space {
    /// The grading of a dot: interval depth for dyadic and n-ary spaces,
    /// sequence length for Baire-like spaces, ball level for metric fanns.
    /// The maximal dot has depth 0.
    fn depth(&self, a: &Self::Dot) -> u32;

    /// Depth of the maximal dot's immediate successors: 0 for whole-line
    /// spaces with a sentinel maximal dot, 1 for spaces whose maximal dot is
    /// an ordinary dot (Baire, the unit trees).
    fn min_depth(&self) -> u32;

    /// Immediate successors of a dot, or an error when the set is unbounded
    /// (e.g. the depth-0 dots below a whole-line sentinel).
    fn successors(&self, a: &Self::Dot) -> Result<Vec<Self::Dot>>;

    /// Immediate predecessors of a dot; empty exactly for the maximal dot.
    fn parents(&self, a: &Self::Dot) -> Vec<Self::Dot>;

    /// Number of successor steps from the maximal dot down to `a`: every
    /// successor trail from the maximal dot to `a` has exactly `rank(a)`
    /// non-maximal entries.
    fn rank(&self, a: &Self::Dot) -> u32 {
        if self.is_maximal(a) {
            0
        } else {
            self.depth(a) + 1 - self.min_depth()
        }
    }
}

/// `touch` as a free function, mirroring the operation vocabulary.
pub fn touch<S: Space>(space: &S, a: &S::Dot, b: &S::Dot) -> bool {
    space.touch(a, b)
}

/// `strictly_refines` as a free function.
pub fn strictly_refines<S: Space>(space: &S, a: &S::Dot, b: &S::Dot) -> bool {
    space.strictly_refines(a, b)
}

/// Trail-length grading of a dot in a graded space.
pub fn grd<S: Graded>(space: &S, a: &S::Dot) -> u32 {
    space.depth(a)
}
