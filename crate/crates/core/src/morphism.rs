//! Refinement morphisms, trail-morphism transducers, and the widening
//! conversion that turns a transducer into a plain dot map over `sigma_R`.
//!
//! A [`RefinementMap`] is a pure dot-to-dot function that sends points to
//! points; applied indexwise to a stream it collapses consecutive duplicate
//! images until strict descent resumes, so the output honors the strict
//! point contract. A [`Transducer`] is the stateful counterpart: it consumes
//! input dots and emits dots refining its previous output, which on a space
//! with unique trail parents is exactly a dot map on successor trails.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fragment::GradedFragment;
use crate::point::Point;
use crate::rational::pow2;
use crate::space::{Graded, Space};
use crate::spaces::lean::{LeanDyadicDot, SigmaR};
use crate::spaces::nary::{NAryDot, NAryKind, NAryLine, NAryUnit};

/// Input pulls allowed per emitted output dot before a stall is reported.
pub const DEFAULT_APPLY_FUEL: u64 = 4096;

pub struct RefinementMap<A: Space, B: Space> {
    label: String,
    domain: A,
    codomain: B,
    f: Arc<dyn Fn(&A::Dot) -> Result<B::Dot> + Send + Sync>,
}

impl<A: Space, B: Space> Clone for RefinementMap<A, B> {
    fn clone(&self) -> Self {
        RefinementMap {
            label: self.label.clone(),
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            f: self.f.clone(),
        }
    }
}

impl<A: Space, B: Space> std::fmt::Debug for RefinementMap<A, B> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RefinementMap({})", self.label)
    }
}

impl<A: Space, B: Space> RefinementMap<A, B> {
    pub fn new(
        label: impl Into<String>,
        domain: A,
        codomain: B,
        f: impl Fn(&A::Dot) -> Result<B::Dot> + Send + Sync + 'static,
    ) -> Self {
        RefinementMap {
            label: label.into(),
            domain,
            codomain,
            f: Arc::new(f),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain(&self) -> &A {
        &self.domain
    }

    pub fn codomain(&self) -> &B {
        &self.codomain
    }

    /// The underlying dot map.
    pub fn dot(&self, a: &A::Dot) -> Result<B::Dot> {
        (self.f)(a)
    }

    /// The indexwise image stream with consecutive duplicates collapsed.
    pub fn apply(&self, p: Point<A>) -> Point<B> {
        self.apply_with_fuel(p, DEFAULT_APPLY_FUEL)
    }

    /// As [`RefinementMap::apply`], allowing `fuel` input pulls per emitted
    /// dot. A stall past the fuel raises a diagnosable error instead of
    /// looping; an image that fails to refine the previous one reports a
    /// contract violation.
    pub fn apply_with_fuel(&self, mut p: Point<A>, fuel: u64) -> Point<B> {
        let f = self.f.clone();
        let codomain = self.codomain.clone();
        let label = self.label.clone();
        let mut consumed = 0usize;
        Point::new(codomain.clone(), move |produced| {
            let mut pulls = 0u64;
            loop {
                if pulls >= fuel {
                    return Err(Error::Stall {
                        pulls,
                        context: format!("image stream of {label}"),
                    });
                }
                let a = p.dot(consumed)?;
                consumed += 1;
                pulls += 1;
                let b = f(&a)?;
                match produced.last() {
                    None => return Ok(b),
                    Some(last) if b == *last => continue,
                    Some(last) if codomain.strictly_refines(&b, last) => return Ok(b),
                    Some(last) => {
                        return Err(Error::ContractViolation(format!(
                            "{label} image {b} does not refine previous image {last}"
                        )))
                    }
                }
            }
        })
    }
}

/// The identity morphism.
pub fn identity<S: Space>(space: &S) -> RefinementMap<S, S> {
    RefinementMap::new(
        format!("id[{}]", space.name()),
        space.clone(),
        space.clone(),
        |a| Ok(a.clone()),
    )
}

/// Composition `a -> g(f(a))`; requires the codomain of `f` to be the domain
/// of `g`.
pub fn compose<A: Space, B: Space, C: Space>(
    f: &RefinementMap<A, B>,
    g: &RefinementMap<B, C>,
) -> Result<RefinementMap<A, C>> {
    if f.codomain != g.domain {
        return Err(Error::SpaceMismatch {
            left: f.codomain.name(),
            right: g.domain.name(),
        });
    }
    let ff = f.f.clone();
    let gf = g.f.clone();
    Ok(RefinementMap::new(
        format!("{} . {}", g.label, f.label),
        f.domain.clone(),
        g.codomain.clone(),
        move |a| gf(&ff(a)?),
    ))
}

/// First monotonicity counterexample of `f` over all fragment pairs, if any.
pub fn monotone_counterexample<A: Graded, B: Space>(
    f: &RefinementMap<A, B>,
    fragment: &GradedFragment<A>,
) -> Result<Option<(A::Dot, A::Dot)>> {
    let dots = fragment.dots();
    let mut images = Vec::with_capacity(dots.len());
    for d in dots {
        images.push(f.dot(d)?);
    }
    let dom = fragment.space();
    let cod = f.codomain();
    for (i, a) in dots.iter().enumerate() {
        for (j, b) in dots.iter().enumerate() {
            if dom.refines(a, b) && !cod.refines(&images[i], &images[j]) {
                return Ok(Some((a.clone(), b.clone())));
            }
        }
    }
    Ok(None)
}

/// Exhaustive monotonicity check of `f` over all fragment pairs.
pub fn check_monotone<A: Graded, B: Space>(
    f: &RefinementMap<A, B>,
    fragment: &GradedFragment<A>,
) -> Result<bool> {
    Ok(monotone_counterexample(f, fragment)?.is_none())
}

/// A stateful dot-stream transformer: `step` consumes one input dot and
/// moves the output state to a refinement of itself.
pub struct Transducer<A: Space, B: Space> {
    label: String,
    domain: A,
    codomain: B,
    step: Arc<dyn Fn(&B::Dot, &A::Dot) -> Result<B::Dot> + Send + Sync>,
}

impl<A: Space, B: Space> Clone for Transducer<A, B> {
    fn clone(&self) -> Self {
        Transducer {
            label: self.label.clone(),
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            step: self.step.clone(),
        }
    }
}

impl<A: Space, B: Space> std::fmt::Debug for Transducer<A, B> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Transducer({})", self.label)
    }
}

impl<A: Space, B: Space> Transducer<A, B> {
    pub fn new(
        label: impl Into<String>,
        domain: A,
        codomain: B,
        step: impl Fn(&B::Dot, &A::Dot) -> Result<B::Dot> + Send + Sync + 'static,
    ) -> Self {
        Transducer {
            label: label.into(),
            domain,
            codomain,
            step: Arc::new(step),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain(&self) -> &A {
        &self.domain
    }

    pub fn codomain(&self) -> &B {
        &self.codomain
    }

    /// One step from `state` on input `input`; the result refines `state`.
    pub fn step(&self, state: &B::Dot, input: &A::Dot) -> Result<B::Dot> {
        let out = (self.step)(state, input)?;
        if !self.codomain.refines(&out, state) {
            return Err(Error::ContractViolation(format!(
                "{} step output {out} does not refine state {state}",
                self.label
            )));
        }
        Ok(out)
    }

    /// Runs the transducer along a point, emitting the state stream with
    /// consecutive duplicates collapsed.
    pub fn drive(&self, p: Point<A>) -> Point<B> {
        self.drive_with_fuel(p, DEFAULT_APPLY_FUEL)
    }

    pub fn drive_with_fuel(&self, mut p: Point<A>, fuel: u64) -> Point<B> {
        let this = self.clone();
        let codomain = self.codomain.clone();
        let mut state = codomain.maximal_dot();
        let mut consumed = 0usize;
        Point::new(codomain.clone(), move |produced| {
            let mut pulls = 0u64;
            loop {
                if pulls >= fuel {
                    return Err(Error::Stall {
                        pulls,
                        context: format!("output stream of {}", this.label),
                    });
                }
                let a = p.dot(consumed)?;
                consumed += 1;
                pulls += 1;
                state = this.step(&state, &a)?;
                match produced.last() {
                    None => return Ok(state.clone()),
                    Some(last) if codomain.strictly_refines(&state, last) => {
                        return Ok(state.clone())
                    }
                    Some(_) => continue,
                }
            }
        })
    }
}

/// The two-level widening: a dot `[(4s+i)/2^(t+2), (4s+i+2)/2^(t+2)]` with
/// `1 <= i <= 4` widens to `[s/2^t, (s+2)/2^t]`; every other dot widens to
/// the maximal dot. The output contains the input with two depths of slack.
pub fn hat_widen(c: &LeanDyadicDot) -> LeanDyadicDot {
    match c {
        LeanDyadicDot::Dot { n, m } if *m >= 2 => {
            LeanDyadicDot::dot((n - 1).div_euclid(4), m - 2)
        }
        _ => LeanDyadicDot::Top,
    }
}

/// Exact intersection of lean dots, required to be a lean dot itself.
fn lean_intersection(values: &BTreeSet<LeanDyadicDot>) -> Result<LeanDyadicDot> {
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    for v in values {
        if let Some((vlo, vhi)) = v.interval() {
            lo = Some(lo.map_or(vlo.clone(), |cur: BigRational| cur.max(vlo)));
            hi = Some(hi.map_or(vhi.clone(), |cur: BigRational| cur.min(vhi)));
        }
    }
    let (lo, hi) = match (lo, hi) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Ok(LeanDyadicDot::Top),
    };
    if lo >= hi {
        return Err(Error::ContractViolation(format!(
            "widened value set has empty intersection [{lo}, {hi}]"
        )));
    }
    let width = &hi - &lo;
    // width must be 2^(1-m) for a natural m
    let mut depth: Option<u32> = None;
    for m in 0..=128u32 {
        let grid = pow2(1 - m as i64);
        if width == grid {
            depth = Some(m);
            break;
        }
        if width > grid {
            break;
        }
    }
    let m = depth.ok_or_else(|| {
        Error::ContractViolation(format!(
            "widened value set intersection [{lo}, {hi}] is not a lean dyadic dot"
        ))
    })?;
    let n = &lo * pow2(m as i64);
    if !n.denom().is_one() {
        return Err(Error::ContractViolation(format!(
            "widened value set intersection [{lo}, {hi}] is off the lean grid"
        )));
    }
    use num_traits::ToPrimitive;
    let n = n
        .numer()
        .to_i128()
        .ok_or_else(|| Error::OutOfRange(format!("intersection endpoint {lo} out of range")))?;
    Ok(LeanDyadicDot::dot(n, m))
}

type ValueSets<D> = Arc<Mutex<HashMap<D, Arc<BTreeSet<LeanDyadicDot>>>>>;

fn value_set<A: Graded>(
    t: &Transducer<A, SigmaR>,
    memo: &ValueSets<A::Dot>,
    dot: &A::Dot,
) -> Result<Arc<BTreeSet<LeanDyadicDot>>> {
    if let Some(vs) = memo.lock().unwrap().get(dot) {
        return Ok(vs.clone());
    }
    let result = if t.domain().is_maximal(dot) {
        let mut top = BTreeSet::new();
        top.insert(LeanDyadicDot::Top);
        Arc::new(top)
    } else {
        let mut values = BTreeSet::new();
        for parent in t.domain().parents(dot) {
            let upstream = value_set(t, memo, &parent)?;
            for v in upstream.iter() {
                let out = t.step(v, dot)?;
                for existing in &values {
                    if SigmaR.apart(existing, &out) {
                        return Err(Error::ContractViolation(format!(
                            "trail values {existing} and {out} at {dot} do not touch"
                        )));
                    }
                }
                values.insert(out);
            }
        }
        if values.is_empty() {
            return Err(Error::ContractViolation(format!(
                "{dot} has no predecessors, so no trail reaches it"
            )));
        }
        Arc::new(values)
    };
    memo.lock().unwrap().insert(dot.clone(), result.clone());
    Ok(result)
}

/// Converts a trail morphism (given as a transducer into `sigma_R`) into a
/// plain dot map: `g(a)` is the intersection of the widened values the
/// transducer reaches over all successor trails to `a`, computed by dynamic
/// programming over predecessors instead of enumerating the exponentially
/// many trails.
///
/// The fragment is validated eagerly: all its value sets are computed, every
/// pair of values at a dot must touch, and every intersection must be a lean
/// dot. The returned map extends past the fragment on demand using the same
/// memoized recursion.
pub fn trail_to_refinement<A: Graded>(
    t: &Transducer<A, SigmaR>,
    fragment: &GradedFragment<A>,
) -> Result<RefinementMap<A, SigmaR>> {
    let memo: ValueSets<A::Dot> = Arc::new(Mutex::new(HashMap::new()));
    for dot in fragment.dots() {
        let vs = value_set(t, &memo, dot)?;
        let widened: BTreeSet<LeanDyadicDot> = vs.iter().map(hat_widen).collect();
        lean_intersection(&widened)?;
    }
    let t = t.clone();
    Ok(RefinementMap::new(
        format!("widen({})", t.label()),
        t.domain().clone(),
        SigmaR,
        move |a| {
            let vs = value_set(&t, &memo, a)?;
            let widened: BTreeSet<LeanDyadicDot> = vs.iter().map(hat_widen).collect();
            lean_intersection(&widened)
        },
    ))
}

/// The staircase map from the ternary unit tree to the binary unit tree:
/// digits 0 and 2 halve to binary digits; from the first digit 1 onward the
/// image pins the plateau value from above.
pub fn cantor_map() -> RefinementMap<NAryUnit, NAryUnit> {
    RefinementMap::new(
        "cantor",
        NAryUnit::new(3),
        NAryUnit::new(2),
        |a: &NAryDot| {
            let m = match a.kind {
                NAryKind::Top => {
                    return Err(Error::OutOfRange("cantor map needs a unit-tree dot".into()))
                }
                NAryKind::Interval { m, .. } => m,
            };
            let digits = a.unit_digits()?;
            let n_out = match digits.iter().position(|&d| d == 1) {
                Some(j) => {
                    let mut c: i128 = 0;
                    for &d in &digits[..j] {
                        c = 2 * c + (d / 2) as i128;
                    }
                    c = 2 * c + 1;
                    c << (m as usize - j - 1)
                }
                None => {
                    let mut c: i128 = 0;
                    for &d in &digits {
                        c = 2 * c + (d / 2) as i128;
                    }
                    c
                }
            };
            Ok(NAryDot::interval(2, n_out, m))
        },
    )
}

/// The forced embedding of binary dots into lean dyadic dots:
/// `[n/2^m, (n+1)/2^m]` is contained in `[n/2^m, (n+2)/2^m]`.
pub fn embed_binary() -> RefinementMap<NAryLine, SigmaR> {
    RefinementMap::new(
        "embed_binary",
        NAryLine::new(2),
        SigmaR,
        |a: &NAryDot| match a.kind {
            NAryKind::Top => Ok(LeanDyadicDot::Top),
            NAryKind::Interval { n, m } => Ok(LeanDyadicDot::dot(n, m)),
        },
    )
}

/// Inclusion of the unit tree into the whole-line tree of the same base.
pub fn include_unit(base: u32) -> RefinementMap<NAryUnit, NAryLine> {
    let unit = NAryUnit::new(base);
    RefinementMap::new(
        format!("include[{}]", unit.name()),
        unit.clone(),
        NAryLine::new(base),
        move |a: &NAryDot| {
            if unit.is_dot(a) {
                Ok(*a)
            } else {
                Err(Error::OutOfRange(format!("{a} is not a unit-tree dot")))
            }
        },
    )
}
