//! Lean dyadic intervals: the dots of `sigma_R` and of its unit subfann
//! `sigma_[0,1]`.
//!
//! A non-maximal dot `D(n, m)` denotes the closed interval
//! `[n/2^m, (n+2)/2^m]` of width `2^(1-m)`. Endpoint comparisons are exact
//! integer arithmetic throughout; there is no floating point anywhere in the
//! relations.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::point::Point;
use crate::rational::{floor_times_pow2, pow2};
use crate::space::{Graded, Space};

/// Depth cap keeping all endpoint arithmetic inside `i128` fast paths for
/// canonical streams while leaving generous headroom for composed morphisms.
pub const MAX_DEPTH: u32 = 96;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LeanDyadicDot {
    /// The maximal dot: the whole line.
    Top,
    /// `[n/2^m, (n+2)/2^m]`.
    Dot { n: i128, m: u32 },
}

pub use LeanDyadicDot::Top;

impl LeanDyadicDot {
    pub fn dot(n: i128, m: u32) -> Self {
        LeanDyadicDot::Dot { n, m }
    }

    pub fn is_top(&self) -> bool {
        matches!(self, LeanDyadicDot::Top)
    }

    /// Exact endpoints; `None` for the maximal dot.
    pub fn interval(&self) -> Option<(BigRational, BigRational)> {
        match self {
            LeanDyadicDot::Top => None,
            LeanDyadicDot::Dot { n, m } => {
                let scale = pow2(-(*m as i64));
                let lo = BigRational::from_integer(BigInt::from(*n)) * &scale;
                let hi = BigRational::from_integer(BigInt::from(n + 2)) * scale;
                Some((lo, hi))
            }
        }
    }

    /// Width `2^(1-m)`; `None` for the maximal dot.
    pub fn width(&self) -> Option<BigRational> {
        match self {
            LeanDyadicDot::Top => None,
            LeanDyadicDot::Dot { m, .. } => Some(pow2(1 - *m as i64)),
        }
    }
}

impl fmt::Display for LeanDyadicDot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeanDyadicDot::Top => write!(f, "TOP"),
            LeanDyadicDot::Dot { n, m } => write!(f, "D({n},{m})"),
        }
    }
}

fn shifted(n: i128, sh: u32) -> Option<i128> {
    if sh == 0 {
        Some(n)
    } else if sh >= 127 {
        None
    } else {
        n.checked_mul(1i128 << sh)
    }
}

/// Compares `n1/2^m1` with `n2/2^m2` exactly. The common case (equal depths,
/// small magnitudes) stays in machine integers; the rare overflowing case
/// falls back to big integers.
pub(crate) fn cmp_dyadic(n1: i128, m1: u32, n2: i128, m2: u32) -> Ordering {
    if m1 == m2 {
        return n1.cmp(&n2);
    }
    let (lo_side, sh_left) = if m1 < m2 { (true, m2 - m1) } else { (false, m1 - m2) };
    if lo_side {
        match shifted(n1, sh_left) {
            Some(v) => v.cmp(&n2),
            None => (BigInt::from(n1) << sh_left).cmp(&BigInt::from(n2)),
        }
    } else {
        match shifted(n2, sh_left) {
            Some(v) => n1.cmp(&v),
            None => BigInt::from(n1).cmp(&(BigInt::from(n2) << sh_left)),
        }
    }
}

fn lean_refines(a: &LeanDyadicDot, b: &LeanDyadicDot) -> bool {
    match (a, b) {
        (_, LeanDyadicDot::Top) => true,
        (LeanDyadicDot::Top, _) => false,
        (LeanDyadicDot::Dot { n: na, m: ma }, LeanDyadicDot::Dot { n: nb, m: mb }) => {
            cmp_dyadic(*na, *ma, *nb, *mb) != Ordering::Less
                && cmp_dyadic(na + 2, *ma, nb + 2, *mb) != Ordering::Greater
        }
    }
}

/// Exact endpoint apartness: disjoint closed intervals. The maximal dot is
/// apart from nothing.
pub fn lean_apart(a: &LeanDyadicDot, b: &LeanDyadicDot) -> bool {
    match (a, b) {
        (LeanDyadicDot::Top, _) | (_, LeanDyadicDot::Top) => false,
        (LeanDyadicDot::Dot { n: na, m: ma }, LeanDyadicDot::Dot { n: nb, m: mb }) => {
            cmp_dyadic(na + 2, *ma, *nb, *mb) == Ordering::Less
                || cmp_dyadic(nb + 2, *mb, *na, *ma) == Ordering::Less
        }
    }
}

/// The three immediate successors of a non-maximal dot. The maximal dot has
/// unboundedly many depth-0 successors, so enumerating them is refused.
pub fn lean_children(a: &LeanDyadicDot) -> Result<Vec<LeanDyadicDot>> {
    match a {
        LeanDyadicDot::Top => Err(Error::UnsupportedEnumeration(
            "the maximal dot of sigma_R has unboundedly many depth-0 successors".into(),
        )),
        LeanDyadicDot::Dot { n, m } => Ok(vec![
            LeanDyadicDot::dot(2 * n, m + 1),
            LeanDyadicDot::dot(2 * n + 1, m + 1),
            LeanDyadicDot::dot(2 * n + 2, m + 1),
        ]),
    }
}

fn lean_parents(a: &LeanDyadicDot) -> Vec<LeanDyadicDot> {
    match a {
        LeanDyadicDot::Top => vec![],
        LeanDyadicDot::Dot { n, m } => {
            if *m == 0 {
                vec![LeanDyadicDot::Top]
            } else {
                let k_min = (n - 1).div_euclid(2);
                let k_max = n.div_euclid(2);
                (k_min..=k_max)
                    .map(|k| LeanDyadicDot::dot(k, m - 1))
                    .collect()
            }
        }
    }
}

/// Leftmost depth-`d` lean dot containing `a`, optionally constrained to lie
/// inside `within`. `None` when no such dot exists.
pub(crate) fn ancestor_at_depth(
    a: &LeanDyadicDot,
    d: u32,
    within: Option<&LeanDyadicDot>,
) -> Option<LeanDyadicDot> {
    let (na, ma) = match a {
        LeanDyadicDot::Top => return None,
        LeanDyadicDot::Dot { n, m } => (*n, *m),
    };
    if d > ma {
        return None;
    }
    let delta = ma - d;
    if delta >= 127 {
        return None;
    }
    let unit = 1i128 << delta;
    // a inside candidate: nu <= n_a/2^delta  and  nu + 2 >= (n_a+2)/2^delta
    let mut hi = na.div_euclid(unit);
    let mut lo = (na + 2 + unit - 1).div_euclid(unit) - 2;
    if let Some(w) = within {
        match w {
            LeanDyadicDot::Top => {}
            LeanDyadicDot::Dot { n: nw, m: mw } => {
                if *mw > d {
                    return None;
                }
                let scale = shifted(1, d - mw)?;
                lo = lo.max(nw.checked_mul(scale)?);
                hi = hi.min((nw + 2).checked_mul(scale)? - 2);
            }
        }
    }
    if lo > hi {
        None
    } else {
        Some(LeanDyadicDot::dot(lo, d))
    }
}

/// The canonical hull: the depth-`t` dot `D(floor(lo * 2^t), t)`, which
/// contains `[lo, hi]` whenever `hi - lo <= 2^(-t)`.
pub fn hull_at_depth(lo: &BigRational, hi: &BigRational, t: u32) -> Result<LeanDyadicDot> {
    if lo > hi {
        return Err(Error::Precondition(format!(
            "hull_at_depth: empty interval [{lo}, {hi}]"
        )));
    }
    if (hi - lo) > pow2(-(t as i64)) {
        return Err(Error::Precondition(format!(
            "hull_at_depth: interval [{lo}, {hi}] wider than 2^-{t}"
        )));
    }
    let n = floor_times_pow2(lo, t);
    let n = n.to_i128().ok_or_else(|| {
        Error::OutOfRange(format!("hull_at_depth: left endpoint {lo} out of range at depth {t}"))
    })?;
    Ok(LeanDyadicDot::dot(n, t))
}

/// The whole real line over lean dyadic intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SigmaR;

impl Space for SigmaR {
    type Dot = LeanDyadicDot;

    fn name(&self) -> String {
        "sigma_R".into()
    }

    fn is_dot(&self, a: &LeanDyadicDot) -> bool {
        match a {
            LeanDyadicDot::Top => true,
            LeanDyadicDot::Dot { m, .. } => *m <= MAX_DEPTH,
        }
    }

    fn apart(&self, a: &LeanDyadicDot, b: &LeanDyadicDot) -> bool {
        lean_apart(a, b)
    }

    fn refines(&self, a: &LeanDyadicDot, b: &LeanDyadicDot) -> bool {
        lean_refines(a, b)
    }

    fn maximal_dot(&self) -> LeanDyadicDot {
        LeanDyadicDot::Top
    }
}

impl Graded for SigmaR {
    fn depth(&self, a: &LeanDyadicDot) -> u32 {
        match a {
            LeanDyadicDot::Top => 0,
            LeanDyadicDot::Dot { m, .. } => *m,
        }
    }

    fn min_depth(&self) -> u32 {
        0
    }

    fn successors(&self, a: &LeanDyadicDot) -> Result<Vec<LeanDyadicDot>> {
        lean_children(a)
    }

    fn parents(&self, a: &LeanDyadicDot) -> Vec<LeanDyadicDot> {
        lean_parents(a)
    }
}

/// The unit interval as a subfann of `sigma_R`: dots `D(n, m)` with
/// `m >= 1`, `0 <= n`, `n + 2 <= 2^m`; maximal dot `[0, 1] = D(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sigma01;

fn in_unit(a: &LeanDyadicDot) -> bool {
    match a {
        LeanDyadicDot::Top => false,
        LeanDyadicDot::Dot { n, m } => {
            *m >= 1 && *m <= MAX_DEPTH && *n >= 0 && shifted(1, *m).map_or(false, |p| n + 2 <= p)
        }
    }
}

impl Space for Sigma01 {
    type Dot = LeanDyadicDot;

    fn name(&self) -> String {
        "sigma_[0,1]".into()
    }

    fn is_dot(&self, a: &LeanDyadicDot) -> bool {
        in_unit(a)
    }

    fn apart(&self, a: &LeanDyadicDot, b: &LeanDyadicDot) -> bool {
        lean_apart(a, b)
    }

    fn refines(&self, a: &LeanDyadicDot, b: &LeanDyadicDot) -> bool {
        lean_refines(a, b)
    }

    fn maximal_dot(&self) -> LeanDyadicDot {
        LeanDyadicDot::dot(0, 1)
    }
}

impl Graded for Sigma01 {
    fn depth(&self, a: &LeanDyadicDot) -> u32 {
        match a {
            LeanDyadicDot::Top => 0,
            LeanDyadicDot::Dot { m, .. } => m.saturating_sub(1),
        }
    }

    fn min_depth(&self) -> u32 {
        1
    }

    /// All three lean children of a unit dot stay inside the unit interval,
    /// so the branching is uniform and finite: a fann.
    fn successors(&self, a: &LeanDyadicDot) -> Result<Vec<LeanDyadicDot>> {
        lean_children(a)
    }

    fn parents(&self, a: &LeanDyadicDot) -> Vec<LeanDyadicDot> {
        if self.is_maximal(a) {
            return vec![];
        }
        lean_parents(a).into_iter().filter(in_unit).collect()
    }
}

/// The canonical point for a rational: the dot at index `k` is the canonical
/// depth-`k` hull of `q`, so every dot contains `q` exactly and consecutive
/// dots strictly refine (width `2^(1-k)` at index `k`).
pub fn from_rational(q: &BigRational) -> Point<SigmaR> {
    let q = q.clone();
    Point::new(SigmaR, move |produced| {
        let k = produced.len() as u32;
        if k > MAX_DEPTH {
            return Err(Error::OutOfRange(format!(
                "canonical stream for {q} pulled past depth {MAX_DEPTH}"
            )));
        }
        hull_at_depth(&q, &q, k)
    })
}

/// A canonical point on a caller-supplied depth schedule. The schedule must
/// be strictly increasing for the stream to satisfy the point contract; this
/// is how tests build differently-scheduled representatives of one rational.
pub fn from_rational_with_depths(
    q: &BigRational,
    mut depth_at: impl FnMut(usize) -> u32 + Send + 'static,
) -> Point<SigmaR> {
    let q = q.clone();
    Point::new(SigmaR, move |produced| {
        let t = depth_at(produced.len()).min(MAX_DEPTH);
        hull_at_depth(&q, &q, t)
    })
}
