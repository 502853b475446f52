//! Exact real arithmetic over `sigma_R`.
//!
//! Negation, min and max are direct refinement morphisms on lean dots.
//! Addition and multiplication cannot be monotone dot maps on the glued trea
//! (floor-based hulls fail nesting across a dot's multiple parents by one
//! grid cell), so they are stream transducers instead: each step computes
//! the exact rational image interval of the current input pair and descends
//! the output lazily, always to the leftmost lean child still containing the
//! image. Outputs therefore always contain the exact result, and shrink
//! because the image interval does.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::morphism::{RefinementMap, Transducer, DEFAULT_APPLY_FUEL};
use crate::point::Point;
use crate::rational::format_rational;
use crate::spaces::lean::{self, LeanDyadicDot, SigmaR};
use crate::spaces::product::{PairDot, Product};

pub type SigmaRPair = Product<SigmaR, SigmaR>;
pub type SigmaRPairDot = PairDot<LeanDyadicDot, LeanDyadicDot>;

pub fn sigma_r_pair() -> SigmaRPair {
    Product::new(SigmaR, SigmaR).expect("sigma_R pairs with itself")
}

/// Endpoint negation: `(n, m) -> (-n-2, m)`. Exact, monotone, involutive.
pub fn neg_map() -> RefinementMap<SigmaR, SigmaR> {
    RefinementMap::new("neg", SigmaR, SigmaR, |a: &LeanDyadicDot| match a {
        LeanDyadicDot::Top => Ok(LeanDyadicDot::Top),
        LeanDyadicDot::Dot { n, m } => Ok(LeanDyadicDot::dot(-n - 2, *m)),
    })
}

fn componentwise(
    label: &str,
    pick: impl Fn(i128, i128) -> i128 + Send + Sync + 'static,
) -> RefinementMap<SigmaRPair, SigmaR> {
    let label_owned = label.to_string();
    RefinementMap::new(
        label,
        sigma_r_pair(),
        SigmaR,
        move |a: &SigmaRPairDot| match a {
            PairDot::Top => Ok(LeanDyadicDot::Top),
            PairDot::Pair(x, y) => match (x, y) {
                (LeanDyadicDot::Top, _) | (_, LeanDyadicDot::Top) => Ok(LeanDyadicDot::Top),
                (
                    LeanDyadicDot::Dot { n: n1, m: m1 },
                    LeanDyadicDot::Dot { n: n2, m: m2 },
                ) => {
                    if m1 != m2 {
                        return Err(Error::Precondition(format!(
                            "{label_owned} needs equal-depth pair dots, got {x} and {y}"
                        )));
                    }
                    Ok(LeanDyadicDot::dot(pick(*n1, *n2), *m1))
                }
            },
        },
    )
}

/// Interval max: `((n1,m),(n2,m)) -> (max(n1,n2), m)`.
pub fn max_map() -> RefinementMap<SigmaRPair, SigmaR> {
    componentwise("max", |a, b| a.max(b))
}

/// Interval min: `((n1,m),(n2,m)) -> (min(n1,n2), m)`.
pub fn min_map() -> RefinementMap<SigmaRPair, SigmaR> {
    componentwise("min", |a, b| a.min(b))
}

/// Descends from `state` while some lean child still contains `[lo, hi]`,
/// always taking the leftmost such child. From the maximal dot the first
/// step lands on the leftmost integer-aligned depth-0 dot containing the
/// interval, when one exists.
fn descend_to_cover(
    state: &LeanDyadicDot,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<LeanDyadicDot> {
    let mut current = *state;
    loop {
        let next = match current {
            LeanDyadicDot::Top => {
                let n_min = hi.ceil().to_integer() - BigInt::from(2);
                let n_max = lo.floor().to_integer();
                if n_min > n_max {
                    None
                } else {
                    let n = n_min.to_i128().ok_or_else(|| {
                        Error::OutOfRange(format!("interval [{lo}, {hi}] out of range"))
                    })?;
                    Some(LeanDyadicDot::dot(n, 0))
                }
            }
            LeanDyadicDot::Dot { .. } => lean::lean_children(&current)?
                .into_iter()
                .find(|c| {
                    let (clo, chi) = c.interval().expect("children are not maximal");
                    &clo <= lo && hi <= &chi
                }),
        };
        match next {
            Some(c) => current = c,
            None => return Ok(current),
        }
    }
}

fn pair_endpoints(
    dot: &SigmaRPairDot,
) -> Option<((BigRational, BigRational), (BigRational, BigRational))> {
    match dot {
        PairDot::Top => None,
        PairDot::Pair(x, y) => Some((x.interval()?, y.interval()?)),
    }
}

fn interval_transducer(
    label: &str,
    image: impl Fn(
            (&BigRational, &BigRational),
            (&BigRational, &BigRational),
        ) -> (BigRational, BigRational)
        + Send
        + Sync
        + 'static,
) -> Transducer<SigmaRPair, SigmaR> {
    Transducer::new(
        label,
        sigma_r_pair(),
        SigmaR,
        move |state: &LeanDyadicDot, input: &SigmaRPairDot| {
            let Some(((xlo, xhi), (ylo, yhi))) = pair_endpoints(input) else {
                return Ok(*state);
            };
            let (lo, hi) = image((&xlo, &xhi), (&ylo, &yhi));
            descend_to_cover(state, &lo, &hi)
        },
    )
}

/// Addition as a stream transducer on the product spraid.
pub fn add_transducer() -> Transducer<SigmaRPair, SigmaR> {
    interval_transducer("add", |(xlo, xhi), (ylo, yhi)| (xlo + ylo, xhi + yhi))
}

/// Multiplication as a stream transducer; the exact product interval comes
/// from the four-endpoint rule on exact rationals.
pub fn mul_transducer() -> Transducer<SigmaRPair, SigmaR> {
    interval_transducer("mul", |(xlo, xhi), (ylo, yhi)| {
        let products = [xlo * ylo, xlo * yhi, xhi * ylo, xhi * yhi];
        let lo = products.iter().min().expect("nonempty").clone();
        let hi = products.iter().max().expect("nonempty").clone();
        (lo, hi)
    })
}

/// A lean dyadic dot together with its exact rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicAnswer {
    pub dot: LeanDyadicDot,
    pub lo: BigRational,
    pub hi: BigRational,
}

impl DyadicAnswer {
    fn from_dot(dot: LeanDyadicDot) -> Self {
        let (lo, hi) = dot.interval().expect("answers are never the maximal dot");
        DyadicAnswer { dot, lo, hi }
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }
}

impl fmt::Display for DyadicAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dot {
            LeanDyadicDot::Top => write!(f, "TOP"),
            LeanDyadicDot::Dot { n, m } => write!(
                f,
                "D({n},{m}) = [{}, {}]",
                format_rational(&self.lo),
                format_rational(&self.hi)
            ),
        }
    }
}

/// Pulls the point until a dot of depth `>= k` appears (width at most
/// `2^(1-k)`) and returns it with exact endpoints.
pub fn eval(p: &mut Point<SigmaR>, k: u32, fuel: u64) -> Result<DyadicAnswer> {
    for i in 0..fuel {
        let dot = p.dot(i as usize)?;
        if let LeanDyadicDot::Dot { m, .. } = dot {
            if m >= k {
                return Ok(DyadicAnswer::from_dot(dot));
            }
        }
    }
    Err(Error::Stall {
        pulls: fuel,
        context: format!("eval to precision {k}"),
    })
}

/// The three possible line calls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallCall {
    In,
    Out,
    Let,
}

impl fmt::Display for BallCall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BallCall::In => write!(f, "IN"),
            BallCall::Out => write!(f, "OUT"),
            BallCall::Let => write!(f, "LET"),
        }
    }
}

/// Pulls ball dots in order and applies the first matching rule: upper
/// endpoint at most the line means IN (touching the line counts in), lower
/// endpoint past the line means OUT, and a dot of width at most `2^(-tol)`
/// still straddling the line means LET.
pub fn hawkeye_decide(
    line: &BigRational,
    ball: &mut Point<SigmaR>,
    tol: u32,
    fuel: u64,
) -> Result<BallCall> {
    for i in 0..fuel {
        let dot = ball.dot(i as usize)?;
        if let Some((lo, hi)) = dot.interval() {
            if &hi <= line {
                return Ok(BallCall::In);
            }
            if &lo > line {
                return Ok(BallCall::Out);
            }
            if let LeanDyadicDot::Dot { m, .. } = dot {
                if m >= tol + 1 {
                    return Ok(BallCall::Let);
                }
            }
        }
    }
    Err(Error::Stall {
        pulls: fuel,
        context: format!("line call at tolerance {tol}"),
    })
}

fn pull_to_depth(
    p: &mut Point<SigmaR>,
    cursor: &mut usize,
    depth: u32,
    fuel: u64,
) -> Result<LeanDyadicDot> {
    let mut pulls = 0u64;
    loop {
        let d = p.dot(*cursor)?;
        if let LeanDyadicDot::Dot { m, .. } = d {
            if m >= depth {
                return Ok(d);
            }
        }
        *cursor += 1;
        pulls += 1;
        if pulls >= fuel {
            return Err(Error::Stall {
                pulls,
                context: format!("pulling a component stream to depth {depth}"),
            });
        }
    }
}

/// Synchronizes two `sigma_R` points into a point of the product spraid:
/// the pair at index `k` holds equal-depth (depth `k`) ancestors of the
/// component streams, nested inside the previously emitted pair.
pub fn pair_point_with_fuel(
    mut px: Point<SigmaR>,
    mut py: Point<SigmaR>,
    fuel: u64,
) -> Point<SigmaRPair> {
    let space = sigma_r_pair();
    let mut ix = 0usize;
    let mut iy = 0usize;
    let mut last: Option<(LeanDyadicDot, LeanDyadicDot)> = None;
    Point::new(space, move |produced| {
        let k = produced.len() as u32;
        let ax = pull_to_depth(&mut px, &mut ix, k, fuel)?;
        let ay = pull_to_depth(&mut py, &mut iy, k, fuel)?;
        let (wx, wy) = match &last {
            Some((x, y)) => (Some(x), Some(y)),
            None => (None, None),
        };
        let bx = lean::ancestor_at_depth(&ax, k, wx).ok_or_else(|| {
            Error::ContractViolation(format!("no depth-{k} ancestor of {ax} inside the last pair"))
        })?;
        let by = lean::ancestor_at_depth(&ay, k, wy).ok_or_else(|| {
            Error::ContractViolation(format!("no depth-{k} ancestor of {ay} inside the last pair"))
        })?;
        last = Some((bx, by));
        Ok(PairDot::Pair(bx, by))
    })
}

pub fn pair_point(px: Point<SigmaR>, py: Point<SigmaR>) -> Point<SigmaRPair> {
    pair_point_with_fuel(px, py, DEFAULT_APPLY_FUEL)
}

/// The canonical product point of two rationals.
pub fn from_rational_pair(x: &BigRational, y: &BigRational) -> Point<SigmaRPair> {
    pair_point(lean::from_rational(x), lean::from_rational(y))
}
