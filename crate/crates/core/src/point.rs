//! Points as lazily produced, strictly shrinking dot streams.
//!
//! A [`Point`] is a single-consumer cursor over an infinite sequence of dots
//! of one space, each strictly refining its predecessor. Produced dots are
//! memoized, so `p.dot(k)` is stable across calls. All point-level questions
//! are semi-decisions bounded by an explicit fuel and report absence instead
//! of diverging.

use crate::error::{Error, Result};
use crate::space::Space;

/// Producer signature: given the dots produced so far, yield the next one.
pub type DotProducer<S> =
    Box<dyn FnMut(&[<S as Space>::Dot]) -> Result<<S as Space>::Dot> + Send>;

pub struct Point<S: Space> {
    space: S,
    dots: Vec<S::Dot>,
    next: DotProducer<S>,
}

impl<S: Space> Point<S> {
    /// Wraps a raw producer. The producer is trusted to satisfy the point
    /// contract; [`point_prefix_valid`] checks finite prefixes of it.
    pub fn new(
        space: S,
        next: impl FnMut(&[S::Dot]) -> Result<S::Dot> + Send + 'static,
    ) -> Self {
        Point {
            space,
            dots: Vec::new(),
            next: Box::new(next),
        }
    }

    /// A point backed by a finite dot list; pulling past the end reports
    /// [`Error::Exhausted`]. Intended for tests and prefix checks.
    pub fn from_dots(space: S, dots: Vec<S::Dot>) -> Self {
        let mut remaining = dots.into_iter();
        let mut produced = 0usize;
        Point::new(space, move |_| match remaining.next() {
            Some(d) => {
                produced += 1;
                Ok(d)
            }
            None => Err(Error::Exhausted { produced }),
        })
    }

    pub fn space(&self) -> &S {
        &self.space
    }

    /// The dot at index `k`, pulling the stream forward as needed.
    pub fn dot(&mut self, k: usize) -> Result<S::Dot> {
        while self.dots.len() <= k {
            let d = (self.next)(&self.dots)?;
            self.dots.push(d);
        }
        Ok(self.dots[k].clone())
    }

    /// Dots produced so far (no pulling).
    pub fn produced(&self) -> &[S::Dot] {
        &self.dots
    }
}

impl<S: Space> std::fmt::Debug for Point<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Point({}; {} dots produced)",
            self.space.name(),
            self.dots.len()
        )
    }
}

/// Which element of a queried dot pair a witness separates from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

/// A finite certificate that two streams (or a stream and a dot pair) are
/// apart: at `index` the dot-level apartness relation holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ApartnessWitness {
    pub index: usize,
    pub side: Side,
}

/// Searches indices `0..fuel` for the least `n` with `p[n] # q[n]`.
///
/// Absence of a witness does not prove the points equivalent; equivalence is
/// an infinite property and can only be refuted, never confirmed, at finite
/// fuel.
pub fn points_apart_within<S: Space>(
    p: &mut Point<S>,
    q: &mut Point<S>,
    fuel: u32,
) -> Result<Option<ApartnessWitness>> {
    if p.space() != q.space() {
        return Err(Error::SpaceMismatch {
            left: p.space().name(),
            right: q.space().name(),
        });
    }
    let space = p.space().clone();
    for n in 0..fuel as usize {
        let a = p.dot(n)?;
        let b = q.dot(n)?;
        if space.apart(&a, &b) {
            return Ok(Some(ApartnessWitness {
                index: n,
                side: Side::First,
            }));
        }
    }
    Ok(None)
}

/// True iff each consecutive pair among `p[0..k]` strictly refines.
pub fn point_prefix_valid<S: Space>(p: &mut Point<S>, k: usize) -> Result<bool> {
    let space = p.space().clone();
    let mut prev = match k {
        0 => return Ok(true),
        _ => p.dot(0)?,
    };
    for i in 1..k {
        let d = p.dot(i)?;
        if !space.strictly_refines(&d, &prev) {
            return Ok(false);
        }
        prev = d;
    }
    Ok(true)
}

/// Semi-decides `p` beginning with `a`: some index `m < fuel` has
/// `p[m]` strictly refining `a`.
pub fn begins_with<S: Space>(p: &mut Point<S>, a: &S::Dot, fuel: u32) -> Result<bool> {
    let space = p.space().clone();
    for m in 0..fuel as usize {
        let d = p.dot(m)?;
        if space.strictly_refines(&d, a) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Semi-decides the choice clause of the point contract: for apart dots
/// `a # b`, some produced dot is apart from `a` (side `First`) or from `b`
/// (side `Second`).
pub fn chooses_between<S: Space>(
    p: &mut Point<S>,
    a: &S::Dot,
    b: &S::Dot,
    fuel: u32,
) -> Result<Option<ApartnessWitness>> {
    let space = p.space().clone();
    if !space.apart(a, b) {
        return Err(Error::Precondition(format!(
            "chooses_between requires apart dots, got {a} touching {b}"
        )));
    }
    for m in 0..fuel as usize {
        let d = p.dot(m)?;
        if space.apart(&d, a) {
            return Ok(Some(ApartnessWitness {
                index: m,
                side: Side::First,
            }));
        }
        if space.apart(&d, b) {
            return Ok(Some(ApartnessWitness {
                index: m,
                side: Side::Second,
            }));
        }
    }
    Ok(None)
}
