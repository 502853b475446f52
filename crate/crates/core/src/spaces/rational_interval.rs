//! The natural reals over all closed rational intervals.
//!
//! This is the reference presentation of the real line: dots are arbitrary
//! `[p, q]` with rational `p < q` plus the maximal dot `(-inf, inf)`. Two
//! dots are apart iff the closed intervals are disjoint, and refinement is
//! endpoint containment. The space is not graded (there is no depth), so it
//! serves relation checks only; point constructors target `sigma_R` instead.

use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::rational::format_rational;
use crate::space::Space;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RationalIntervalDot {
    Top,
    Interval { lo: BigRational, hi: BigRational },
}

impl RationalIntervalDot {
    /// Builds `[lo, hi]`; requires `lo < hi`.
    pub fn interval(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::Precondition(format!(
                "rational interval needs lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(RationalIntervalDot::Interval { lo, hi })
    }
}

impl fmt::Display for RationalIntervalDot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalIntervalDot::Top => write!(f, "TOP"),
            RationalIntervalDot::Interval { lo, hi } => {
                write!(f, "[{}, {}]", format_rational(lo), format_rational(hi))
            }
        }
    }
}

/// The pre-natural space of all rational intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RRat;

impl Space for RRat {
    type Dot = RationalIntervalDot;

    fn name(&self) -> String {
        "R_rat".into()
    }

    fn is_dot(&self, a: &RationalIntervalDot) -> bool {
        match a {
            RationalIntervalDot::Top => true,
            RationalIntervalDot::Interval { lo, hi } => lo < hi,
        }
    }

    fn apart(&self, a: &RationalIntervalDot, b: &RationalIntervalDot) -> bool {
        use RationalIntervalDot::*;
        match (a, b) {
            (Top, _) | (_, Top) => false,
            (Interval { lo: a0, hi: a1 }, Interval { lo: b0, hi: b1 }) => a1 < b0 || b1 < a0,
        }
    }

    fn refines(&self, a: &RationalIntervalDot, b: &RationalIntervalDot) -> bool {
        use RationalIntervalDot::*;
        match (a, b) {
            (_, Top) => true,
            (Top, _) => false,
            (Interval { lo: a0, hi: a1 }, Interval { lo: b0, hi: b1 }) => b0 <= a0 && a1 <= b1,
        }
    }

    fn maximal_dot(&self) -> RationalIntervalDot {
        RationalIntervalDot::Top
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{big, ratio};

    fn iv(a: (i64, i64), b: (i64, i64)) -> RationalIntervalDot {
        RationalIntervalDot::interval(ratio(a.0, a.1), ratio(b.0, b.1)).unwrap()
    }

    #[test]
    fn relations() {
        let s = RRat;
        let a = iv((0, 1), (1, 1));
        let b = iv((1, 1), (2, 1));
        let c = iv((3, 1), (4, 1));
        assert!(!s.apart(&a, &b)); // shared endpoint touches
        assert!(s.apart(&a, &c));
        assert!(s.refines(&iv((1, 4), (3, 4)), &a));
        assert!(!s.refines(&a, &iv((1, 4), (3, 4))));
        assert!(s.refines(&a, &RationalIntervalDot::Top));
        assert!(!s.apart(&RationalIntervalDot::Top, &c));
        assert!(RationalIntervalDot::interval(big(1), big(1)).is_err());
    }
}
