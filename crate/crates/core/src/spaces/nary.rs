//! n-ary interval trees: the binary, ternary and decimal real numbers.
//!
//! A dot `N(b, n, m)` denotes `[n/b^m, (n+1)/b^m]`. Unlike the lean dyadic
//! dots these do not overlap within one depth, so the poset of non-maximal
//! dots is a tree: every dot of depth `m > 0` has exactly one depth-`(m-1)`
//! parent. Two flavours are provided: the whole line with a sentinel maximal
//! dot ([`NAryLine`]), and the unit tree rooted at `[0, 1]` ([`NAryUnit`]).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::point::Point;
use crate::rational::powi;
use crate::space::{Graded, Space};

/// Depth caps per base keeping endpoint arithmetic in `i128` fast paths.
fn max_depth(base: u32) -> u32 {
    match base {
        2 => 90,
        3 => 56,
        10 => 27,
        _ => 20,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NAryKind {
    Top,
    Interval { n: i128, m: u32 },
}

/// An n-ary dot. The base travels with the dot so that relations can reject
/// mixed-base queries and the textual form `N(b,n,m)` is self-contained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NAryDot {
    pub base: u32,
    pub kind: NAryKind,
}

impl NAryDot {
    pub fn top(base: u32) -> Self {
        NAryDot {
            base,
            kind: NAryKind::Top,
        }
    }

    pub fn interval(base: u32, n: i128, m: u32) -> Self {
        NAryDot {
            base,
            kind: NAryKind::Interval { n, m },
        }
    }

    pub fn is_top(&self) -> bool {
        matches!(self.kind, NAryKind::Top)
    }

    /// Exact endpoints; `None` for the sentinel maximal dot.
    pub fn endpoints(&self) -> Option<(BigRational, BigRational)> {
        match self.kind {
            NAryKind::Top => None,
            NAryKind::Interval { n, m } => {
                let scale = powi(self.base, -(m as i64));
                let lo = BigRational::from_integer(BigInt::from(n)) * &scale;
                let hi = BigRational::from_integer(BigInt::from(n + 1)) * scale;
                Some((lo, hi))
            }
        }
    }

    /// Base-b digits `d_1 .. d_m` of the interval's position below the unit
    /// dot `[0, 1]`: the base-b expansion of `n` padded to `m` digits.
    /// Requires `0 <= n < b^m`.
    pub fn unit_digits(&self) -> Result<Vec<u32>> {
        match self.kind {
            NAryKind::Top => Err(Error::OutOfRange("maximal dot has no digits".into())),
            NAryKind::Interval { n, m } => {
                if n < 0 {
                    return Err(Error::OutOfRange(format!("{self} lies below 0")));
                }
                let b = self.base as i128;
                let mut digits = vec![0u32; m as usize];
                let mut v = n;
                for slot in digits.iter_mut().rev() {
                    *slot = (v % b) as u32;
                    v /= b;
                }
                if v != 0 {
                    return Err(Error::OutOfRange(format!("{self} lies above 1")));
                }
                Ok(digits)
            }
        }
    }
}

impl fmt::Display for NAryDot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            NAryKind::Top => write!(f, "TOP"),
            NAryKind::Interval { n, m } => write!(f, "N({},{},{})", self.base, n, m),
        }
    }
}

fn pow_i128(base: u32, e: u32) -> Option<i128> {
    (base as i128).checked_pow(e)
}

/// Compares `n1/b^m1` with `n2/b^m2` exactly, with a big-integer fallback.
fn cmp_scaled(base: u32, n1: i128, m1: u32, n2: i128, m2: u32) -> Ordering {
    if m1 == m2 {
        return n1.cmp(&n2);
    }
    if m1 < m2 {
        match pow_i128(base, m2 - m1).and_then(|p| n1.checked_mul(p)) {
            Some(v) => v.cmp(&n2),
            None => (BigInt::from(n1) * BigInt::from(base).pow(m2 - m1)).cmp(&BigInt::from(n2)),
        }
    } else {
        match pow_i128(base, m1 - m2).and_then(|p| n2.checked_mul(p)) {
            Some(v) => n1.cmp(&v),
            None => BigInt::from(n1).cmp(&(BigInt::from(n2) * BigInt::from(base).pow(m1 - m2))),
        }
    }
}

/// Endpoint-exact apartness and refinement on same-base n-ary dots.
pub fn nary_dot_relations(a: &NAryDot, b: &NAryDot) -> Result<(bool, bool)> {
    if a.base != b.base {
        return Err(Error::SpaceMismatch {
            left: format!("base {}", a.base),
            right: format!("base {}", b.base),
        });
    }
    let base = a.base;
    let (apart, refines) = match (a.kind, b.kind) {
        (NAryKind::Top, NAryKind::Top) => (false, true),
        (_, NAryKind::Top) => (false, true),
        (NAryKind::Top, _) => (false, false),
        (NAryKind::Interval { n: na, m: ma }, NAryKind::Interval { n: nb, m: mb }) => {
            let apart = cmp_scaled(base, na + 1, ma, nb, mb) == Ordering::Less
                || cmp_scaled(base, nb + 1, mb, na, ma) == Ordering::Less;
            let refines = cmp_scaled(base, na, ma, nb, mb) != Ordering::Less
                && cmp_scaled(base, na + 1, ma, nb + 1, mb) != Ordering::Greater;
            (apart, refines)
        }
    };
    Ok((apart, refines))
}

fn base_ok(space_base: u32, a: &NAryDot) -> bool {
    a.base == space_base
}

/// The n-ary reals over the whole line, with a sentinel maximal dot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NAryLine {
    pub base: u32,
}

impl NAryLine {
    pub fn new(base: u32) -> Self {
        NAryLine { base }
    }
}

impl Space for NAryLine {
    type Dot = NAryDot;

    fn name(&self) -> String {
        format!("R_{}", self.base)
    }

    fn is_dot(&self, a: &NAryDot) -> bool {
        base_ok(self.base, a)
            && match a.kind {
                NAryKind::Top => true,
                NAryKind::Interval { m, .. } => m <= max_depth(self.base),
            }
    }

    fn apart(&self, a: &NAryDot, b: &NAryDot) -> bool {
        nary_dot_relations(a, b).map(|(ap, _)| ap).unwrap_or(false)
    }

    fn refines(&self, a: &NAryDot, b: &NAryDot) -> bool {
        nary_dot_relations(a, b).map(|(_, rf)| rf).unwrap_or(false)
    }

    fn maximal_dot(&self) -> NAryDot {
        NAryDot::top(self.base)
    }
}

impl Graded for NAryLine {
    fn depth(&self, a: &NAryDot) -> u32 {
        match a.kind {
            NAryKind::Top => 0,
            NAryKind::Interval { m, .. } => m,
        }
    }

    fn min_depth(&self) -> u32 {
        0
    }

    fn successors(&self, a: &NAryDot) -> Result<Vec<NAryDot>> {
        match a.kind {
            NAryKind::Top => Err(Error::UnsupportedEnumeration(format!(
                "the maximal dot of R_{} has unboundedly many depth-0 successors",
                self.base
            ))),
            NAryKind::Interval { n, m } => {
                let b = self.base as i128;
                Ok((0..b)
                    .map(|j| NAryDot::interval(self.base, n * b + j, m + 1))
                    .collect())
            }
        }
    }

    fn parents(&self, a: &NAryDot) -> Vec<NAryDot> {
        match a.kind {
            NAryKind::Top => vec![],
            NAryKind::Interval { n, m } => {
                if m == 0 {
                    vec![NAryDot::top(self.base)]
                } else {
                    vec![NAryDot::interval(
                        self.base,
                        n.div_euclid(self.base as i128),
                        m - 1,
                    )]
                }
            }
        }
    }
}

/// The n-ary tree over `[0, 1]`: dots `N(b, n, m)` with `0 <= n < b^m`,
/// maximal dot `[0, 1] = N(b, 0, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NAryUnit {
    pub base: u32,
}

impl NAryUnit {
    pub fn new(base: u32) -> Self {
        NAryUnit { base }
    }

    fn in_unit(&self, a: &NAryDot) -> bool {
        match a.kind {
            NAryKind::Top => false,
            NAryKind::Interval { n, m } => {
                n >= 0
                    && m <= max_depth(self.base)
                    && pow_i128(self.base, m).map_or(false, |p| n < p)
            }
        }
    }
}

impl Space for NAryUnit {
    type Dot = NAryDot;

    fn name(&self) -> String {
        format!("[0,1]_{}", self.base)
    }

    fn is_dot(&self, a: &NAryDot) -> bool {
        base_ok(self.base, a) && self.in_unit(a)
    }

    fn apart(&self, a: &NAryDot, b: &NAryDot) -> bool {
        nary_dot_relations(a, b).map(|(ap, _)| ap).unwrap_or(false)
    }

    fn refines(&self, a: &NAryDot, b: &NAryDot) -> bool {
        nary_dot_relations(a, b).map(|(_, rf)| rf).unwrap_or(false)
    }

    fn maximal_dot(&self) -> NAryDot {
        NAryDot::interval(self.base, 0, 0)
    }
}

impl Graded for NAryUnit {
    fn depth(&self, a: &NAryDot) -> u32 {
        match a.kind {
            NAryKind::Top => 0,
            NAryKind::Interval { m, .. } => m,
        }
    }

    fn min_depth(&self) -> u32 {
        1
    }

    fn successors(&self, a: &NAryDot) -> Result<Vec<NAryDot>> {
        match a.kind {
            NAryKind::Top => Err(Error::UnsupportedEnumeration(
                "sentinel dot does not belong to the unit tree".into(),
            )),
            NAryKind::Interval { n, m } => {
                let b = self.base as i128;
                Ok((0..b)
                    .map(|j| NAryDot::interval(self.base, n * b + j, m + 1))
                    .collect())
            }
        }
    }

    fn parents(&self, a: &NAryDot) -> Vec<NAryDot> {
        match a.kind {
            NAryKind::Top => vec![],
            NAryKind::Interval { n, m } => {
                if m == 0 {
                    vec![]
                } else {
                    vec![NAryDot::interval(
                        self.base,
                        n.div_euclid(self.base as i128),
                        m - 1,
                    )]
                }
            }
        }
    }
}

fn nary_hull(base: u32, q: &BigRational, m: u32, clamp_unit: bool) -> Result<NAryDot> {
    let scaled = q * powi(base, m as i64);
    let mut n = scaled
        .floor()
        .to_integer()
        .to_i128()
        .ok_or_else(|| Error::OutOfRange(format!("{q} out of range at depth {m}")))?;
    if clamp_unit {
        let cap = pow_i128(base, m)
            .ok_or_else(|| Error::OutOfRange(format!("depth {m} too deep for base {base}")))?;
        n = n.clamp(0, cap - 1);
    }
    Ok(NAryDot::interval(base, n, m))
}

/// Canonical point for `q` on the n-ary line: index `k` holds the depth-`k`
/// dot whose interval contains `q` (ties resolved to the left).
pub fn nary_from_rational(base: u32, q: &BigRational) -> Point<NAryLine> {
    let q = q.clone();
    Point::new(NAryLine::new(base), move |produced| {
        let k = produced.len() as u32;
        if k > max_depth(base) {
            return Err(Error::OutOfRange(format!(
                "canonical base-{base} stream pulled past depth {}",
                max_depth(base)
            )));
        }
        nary_hull(base, &q, k, false)
    })
}

/// Canonical point for `q` in the unit tree; requires `0 <= q <= 1`. At the
/// right endpoint the stream descends along the rightmost branch.
pub fn nary_unit_from_rational(base: u32, q: &BigRational) -> Result<Point<NAryUnit>> {
    use num_traits::{One, Zero};
    if q < &BigRational::zero() || q > &BigRational::one() {
        return Err(Error::OutOfRange(format!("{q} outside [0, 1]")));
    }
    let q = q.clone();
    Ok(Point::new(NAryUnit::new(base), move |produced| {
        let k = produced.len() as u32;
        if k > max_depth(base) {
            return Err(Error::OutOfRange(format!(
                "canonical base-{base} stream pulled past depth {}",
                max_depth(base)
            )));
        }
        nary_hull(base, &q, k, true)
    }))
}
