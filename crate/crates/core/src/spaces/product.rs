//! Finite products of graded spaces.
//!
//! A product dot is an equal-depth pair of component dots, plus a maximal
//! dot. Apartness is the componentwise disjunction, refinement the
//! componentwise conjunction, and successors are all pairs of component
//! successors, which keeps the product graded with the components' depth.

use std::fmt;

use crate::error::{Error, Result};
use crate::space::{Graded, Space};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairDot<A, B> {
    Top,
    Pair(A, B),
}

impl<A: fmt::Display, B: fmt::Display> fmt::Display for PairDot<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairDot::Top => write!(f, "TOP"),
            PairDot::Pair(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

/// The product of two graded spaces with synchronized depths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Product<S1: Graded, S2: Graded> {
    pub left: S1,
    pub right: S2,
}

impl<S1: Graded, S2: Graded> Product<S1, S2> {
    /// Requires the component gradings to start at the same level so that
    /// equal-depth pairing is well defined.
    pub fn new(left: S1, right: S2) -> Result<Self> {
        if left.min_depth() != right.min_depth() {
            return Err(Error::UnsupportedEnumeration(format!(
                "cannot pair {} (min depth {}) with {} (min depth {})",
                left.name(),
                left.min_depth(),
                right.name(),
                right.min_depth()
            )));
        }
        Ok(Product { left, right })
    }

    /// Builds an equal-depth pair dot.
    pub fn pair(&self, a: S1::Dot, b: S2::Dot) -> Result<PairDot<S1::Dot, S2::Dot>> {
        if self.left.rank(&a) != self.right.rank(&b) {
            return Err(Error::Precondition(format!(
                "pair components must have equal depth: {a} vs {b}"
            )));
        }
        Ok(PairDot::Pair(a, b))
    }
}

impl<S1: Graded, S2: Graded> Space for Product<S1, S2> {
    type Dot = PairDot<S1::Dot, S2::Dot>;

    fn name(&self) -> String {
        format!("{} x {}", self.left.name(), self.right.name())
    }

    fn is_dot(&self, a: &Self::Dot) -> bool {
        match a {
            PairDot::Top => true,
            PairDot::Pair(x, y) => {
                self.left.is_dot(x)
                    && self.right.is_dot(y)
                    && !self.left.is_maximal(x)
                    && !self.right.is_maximal(y)
                    && self.left.rank(x) == self.right.rank(y)
            }
        }
    }

    fn apart(&self, a: &Self::Dot, b: &Self::Dot) -> bool {
        match (a, b) {
            (PairDot::Pair(x1, y1), PairDot::Pair(x2, y2)) => {
                self.left.apart(x1, x2) || self.right.apart(y1, y2)
            }
            _ => false,
        }
    }

    fn refines(&self, a: &Self::Dot, b: &Self::Dot) -> bool {
        match (a, b) {
            (_, PairDot::Top) => true,
            (PairDot::Top, _) => false,
            (PairDot::Pair(x1, y1), PairDot::Pair(x2, y2)) => {
                self.left.refines(x1, x2) && self.right.refines(y1, y2)
            }
        }
    }

    fn maximal_dot(&self) -> Self::Dot {
        PairDot::Top
    }
}

impl<S1: Graded, S2: Graded> Graded for Product<S1, S2> {
    fn depth(&self, a: &Self::Dot) -> u32 {
        match a {
            PairDot::Top => 0,
            PairDot::Pair(x, _) => self.left.depth(x),
        }
    }

    fn min_depth(&self) -> u32 {
        self.left.min_depth()
    }

    fn successors(&self, a: &Self::Dot) -> Result<Vec<Self::Dot>> {
        match a {
            PairDot::Top => Err(Error::UnsupportedEnumeration(format!(
                "the maximal dot of {} has unboundedly many successors",
                self.name()
            ))),
            PairDot::Pair(x, y) => {
                let xs = self.left.successors(x)?;
                let ys = self.right.successors(y)?;
                let mut out = Vec::with_capacity(xs.len() * ys.len());
                for sx in &xs {
                    for sy in &ys {
                        out.push(PairDot::Pair(sx.clone(), sy.clone()));
                    }
                }
                Ok(out)
            }
        }
    }

    fn parents(&self, a: &Self::Dot) -> Vec<Self::Dot> {
        match a {
            PairDot::Top => vec![],
            PairDot::Pair(x, y) => {
                if self.left.rank(x) == 1 {
                    return vec![PairDot::Top];
                }
                let xs = self.left.parents(x);
                let ys = self.right.parents(y);
                let mut out = Vec::with_capacity(xs.len() * ys.len());
                for px in &xs {
                    for py in &ys {
                        out.push(PairDot::Pair(px.clone(), py.clone()));
                    }
                }
                out
            }
        }
    }
}
