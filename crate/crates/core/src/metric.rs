//! Fanns from totally bounded metric presentations.
//!
//! A presentation is a sequence of finite nets `C_0, C_1, ...` (level `i`
//! centers carry balls of radius `2^-i`) with a rational distance oracle
//! accurate to `2^-prec`, satisfying the net condition: every level-`(i+1)`
//! center lies within `2^-(i+2)` of some level-`i` center.
//!
//! Ball containment and ball apartness are not decidable from approximate
//! distances, but each has a decidable companion relation carved out by a
//! choice rule with slack. The rules used here are deterministic midpoint
//! thresholds:
//!
//! * refinement seed `h`: for levels `s > t`, query the oracle at precision
//!   `2s+2` and choose 0 iff the answer is below
//!   `2^-t - 2^-s - 2^-(2s+1)`; 0 certifies true distance below
//!   `2^-t - 2^-s` (genuine ball containment), 1 certifies it above
//!   `2^-t - 2^-s - 2^-2s`;
//! * apartness `g`: query at precision `s+t+3` and choose 1 iff the answer
//!   exceeds `2^-s + 2^-t + 3*2^-(s+t+2)`; 1 certifies true distance above
//!   `2^-s + 2^-t + 2^-(s+t+1)` (a positive gap between the closed balls),
//!   0 certifies it below `2^-s + 2^-t + 2^-(s+t)`.
//!
//! Refinement is generated between consecutive levels by `h` and closed
//! transitively, which preserves the trea grading; the fully general
//! `(s, t)` form of `h` stays exposed for testing the certified bounds.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fragment::GradedFragment;
use crate::point::Point;
use crate::rational::{abs, parse_rational, pow2, ratio};
use crate::space::{Graded, Space};

type ExactDist = Arc<dyn Fn(usize, usize, u32) -> BigRational + Send + Sync>;

enum DistOracle {
    /// Oracle given as a closure; builtins answer exactly at any precision.
    Fn(ExactDist),
    /// Exact table over unordered label pairs; `prec` is ignored.
    Table(HashMap<(usize, usize), BigRational>),
}

/// Finite nets plus a rational-approximation distance oracle.
pub struct MetricPresentation {
    name: String,
    labels: Vec<String>,
    values: Option<Vec<BigRational>>,
    levels: Vec<Vec<usize>>,
    oracle: DistOracle,
}

impl fmt::Debug for MetricPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MetricPresentation({}, {} levels, {} centers)",
            self.name,
            self.levels.len(),
            self.labels.len()
        )
    }
}

impl MetricPresentation {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn levels(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, i: u32) -> Result<&[usize]> {
        self.levels
            .get(i as usize)
            .map(Vec::as_slice)
            .ok_or_else(|| {
                Error::InvalidPresentation(format!(
                    "{} has {} levels, level {i} requested",
                    self.name,
                    self.levels.len()
                ))
            })
    }

    pub fn label(&self, center: usize) -> &str {
        &self.labels[center]
    }

    /// Numeric position of a center, for presentations over the rationals.
    pub fn value(&self, center: usize) -> Result<&BigRational> {
        self.values
            .as_ref()
            .and_then(|v| v.get(center))
            .ok_or_else(|| {
                Error::InvalidPresentation(format!(
                    "{} does not carry numeric center values",
                    self.name
                ))
            })
    }

    /// Distance between two centers, within `2^-prec` of the true value.
    pub fn dist(&self, a: usize, b: usize, prec: u32) -> Result<BigRational> {
        match &self.oracle {
            DistOracle::Fn(f) => Ok(f(a, b, prec)),
            DistOracle::Table(t) => {
                if a == b {
                    return Ok(t
                        .get(&(a, b))
                        .cloned()
                        .unwrap_or_else(BigRational::zero));
                }
                let key = (a.min(b), a.max(b));
                t.get(&key).cloned().ok_or_else(|| {
                    Error::InvalidPresentation(format!(
                        "no distance between {} and {}",
                        self.labels[a], self.labels[b]
                    ))
                })
            }
        }
    }
}

/// The refinement choice rule. For a center `a` at level `s` and `b` at
/// level `t` with `s > t`: 0 certifies `d(a,b) < 2^-t - 2^-s`, 1 certifies
/// `d(a,b) > 2^-t - 2^-s - 2^-2s`.
pub fn h_choice(
    pres: &MetricPresentation,
    a: (usize, u32),
    b: (usize, u32),
) -> Result<u8> {
    let (ca, s) = a;
    let (cb, t) = b;
    if s <= t {
        return Err(Error::Precondition(format!(
            "h needs s > t, got levels {s} and {t}"
        )));
    }
    let q = pres.dist(ca, cb, 2 * s + 2)?;
    let threshold = pow2(-(t as i64)) - pow2(-(s as i64)) - pow2(-(2 * s as i64) - 1);
    Ok(if q < threshold { 0 } else { 1 })
}

/// The apartness choice rule: 1 certifies
/// `d(a,b) > 2^-s + 2^-t + 2^-(s+t+1)` (the balls have a positive gap),
/// 0 certifies `d(a,b) < 2^-s + 2^-t + 2^-(s+t)`.
pub fn g_choice(
    pres: &MetricPresentation,
    a: (usize, u32),
    b: (usize, u32),
) -> Result<u8> {
    let (ca, s) = a;
    let (cb, t) = b;
    let q = pres.dist(ca, cb, s + t + 3)?;
    let threshold =
        pow2(-(s as i64)) + pow2(-(t as i64)) + ratio(3, 1) * pow2(-(s as i64) - t as i64 - 2);
    Ok(if q > threshold { 1 } else { 0 })
}

/// A metric ball dot `B(c, 2^-i)`, or the maximal dot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BallDot {
    Top,
    Ball {
        level: u32,
        center: usize,
        label: String,
    },
}

impl fmt::Display for BallDot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BallDot::Top => write!(f, "TOP"),
            BallDot::Ball { level, label, .. } => write!(f, "B({label},{level})"),
        }
    }
}

struct FannData {
    name: String,
    dots: Vec<BallDot>,
    index: HashMap<(u32, usize), usize>,
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
    /// Reflexive-transitive closure of the h-generated successor links.
    ancestors: Vec<Vec<bool>>,
    apart: Vec<Vec<bool>>,
}

/// A fann built from a metric presentation. Cheap to clone and share; the
/// relations are table lookups over the built fragment.
#[derive(Clone)]
pub struct FannSpace {
    data: Arc<FannData>,
}

impl fmt::Debug for FannSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FannSpace({}, {} balls)", self.data.name, self.data.dots.len())
    }
}

impl PartialEq for FannSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
    }
}

impl FannSpace {
    fn idx(&self, a: &BallDot) -> Option<usize> {
        match a {
            BallDot::Top => None,
            BallDot::Ball { level, center, .. } => {
                self.data.index.get(&(*level, *center)).copied()
            }
        }
    }

    pub fn ball_dots(&self) -> &[BallDot] {
        &self.data.dots
    }
}

impl Space for FannSpace {
    type Dot = BallDot;

    fn name(&self) -> String {
        format!("fann({})", self.data.name)
    }

    fn is_dot(&self, a: &BallDot) -> bool {
        matches!(a, BallDot::Top) || self.idx(a).is_some()
    }

    fn apart(&self, a: &BallDot, b: &BallDot) -> bool {
        match (self.idx(a), self.idx(b)) {
            (Some(i), Some(j)) => self.data.apart[i][j],
            _ => false,
        }
    }

    fn refines(&self, a: &BallDot, b: &BallDot) -> bool {
        match (a, b) {
            (_, BallDot::Top) => true,
            (BallDot::Top, _) => false,
            _ => match (self.idx(a), self.idx(b)) {
                (Some(i), Some(j)) => self.data.ancestors[i][j],
                _ => false,
            },
        }
    }

    fn maximal_dot(&self) -> BallDot {
        BallDot::Top
    }
}

impl Graded for FannSpace {
    fn depth(&self, a: &BallDot) -> u32 {
        match a {
            BallDot::Top => 0,
            BallDot::Ball { level, .. } => *level,
        }
    }

    fn min_depth(&self) -> u32 {
        0
    }

    fn successors(&self, a: &BallDot) -> Result<Vec<BallDot>> {
        match a {
            BallDot::Top => Ok(self
                .data
                .dots
                .iter()
                .filter(|d| self.depth(d) == 0)
                .cloned()
                .collect()),
            _ => {
                let i = self.idx(a).ok_or_else(|| {
                    Error::OutOfRange(format!("{a} is not a ball of {}", self.data.name))
                })?;
                Ok(self.data.children[i]
                    .iter()
                    .map(|&j| self.data.dots[j].clone())
                    .collect())
            }
        }
    }

    fn parents(&self, a: &BallDot) -> Vec<BallDot> {
        match a {
            BallDot::Top => vec![],
            _ => match self.idx(a) {
                None => vec![],
                Some(i) => {
                    if self.depth(a) == 0 {
                        vec![BallDot::Top]
                    } else {
                        self.data.parents[i]
                            .iter()
                            .map(|&j| self.data.dots[j].clone())
                            .collect()
                    }
                }
            },
        }
    }
}

/// Verifies the finite consequence of the net condition on the centers:
/// every level-`(i+1)` center lies strictly within `2^-(i+2)` of some
/// level-`i` center, certified through the oracle with `2^-(i+16)` slack.
pub fn check_net_condition(pres: &MetricPresentation, max_level: u32) -> Result<()> {
    for i in 0..max_level {
        let coarse = pres.level(i)?;
        let fine = pres.level(i + 1)?;
        let prec = i + 16;
        let bound = pow2(-(i as i64) - 2) - pow2(-(prec as i64));
        for &c_fine in fine {
            let mut covered = false;
            for &c_coarse in coarse {
                if pres.dist(c_fine, c_coarse, prec)? < bound {
                    covered = true;
                    break;
                }
            }
            if !covered {
                return Err(Error::InvalidPresentation(format!(
                    "net condition fails at level {}: center {} is not within 2^-{} of level {}",
                    i + 1,
                    pres.label(c_fine),
                    i + 2,
                    i
                )));
            }
        }
    }
    Ok(())
}

/// Builds the fann on the presentation's balls up to `max_level`: successor
/// links between consecutive levels via `h`, refinement as their transitive
/// closure, apartness via `g`. Construction aborts if a dot at a level
/// below the top has no predecessor or if apartness crosses a refinement
/// chain (either indicates an invalid presentation or too coarse an
/// oracle).
pub fn build_fann(
    pres: &MetricPresentation,
    max_level: u32,
) -> Result<GradedFragment<FannSpace>> {
    if pres.levels() <= max_level as usize {
        return Err(Error::InvalidPresentation(format!(
            "{} has {} levels, cannot build to level {max_level}",
            pres.name,
            pres.levels()
        )));
    }
    check_net_condition(pres, max_level)?;

    let mut dots: Vec<BallDot> = Vec::new();
    let mut index: HashMap<(u32, usize), usize> = HashMap::new();
    for level in 0..=max_level {
        for &center in pres.level(level)? {
            let dot = BallDot::Ball {
                level,
                center,
                label: pres.label(center).to_string(),
            };
            index.insert((level, center), dots.len());
            dots.push(dot);
        }
    }

    let n = dots.len();
    let mut parents: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for level in 1..=max_level {
        for &fine in pres.level(level)? {
            let i = index[&(level, fine)];
            for &coarse in pres.level(level - 1)? {
                let j = index[&(level - 1, coarse)];
                if h_choice(pres, (fine, level), (coarse, level - 1))? == 0 {
                    parents[i].push(j);
                    children[j].push(i);
                }
            }
            if parents[i].is_empty() {
                return Err(Error::InvalidPresentation(format!(
                    "orphan ball: {} at level {level} has no level-{} predecessor",
                    pres.label(fine),
                    level - 1
                )));
            }
        }
    }

    // reflexive-transitive closure, level by level
    let mut ancestors = vec![vec![false; n]; n];
    for i in 0..n {
        ancestors[i][i] = true;
    }
    for level in 1..=max_level {
        for &fine in pres.level(level)? {
            let i = index[&(level, fine)];
            for pi in 0..parents[i].len() {
                let p = parents[i][pi];
                for k in 0..n {
                    if ancestors[p][k] {
                        ancestors[i][k] = true;
                    }
                }
            }
        }
    }

    let mut apart = vec![vec![false; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let (li, ci) = match &dots[i] {
                BallDot::Ball { level, center, .. } => (*level, *center),
                BallDot::Top => unreachable!(),
            };
            let (lj, cj) = match &dots[j] {
                BallDot::Ball { level, center, .. } => (*level, *center),
                BallDot::Top => unreachable!(),
            };
            if g_choice(pres, (ci, li), (cj, lj))? == 1 {
                if ancestors[i][j] || ancestors[j][i] {
                    return Err(Error::InvalidPresentation(format!(
                        "apartness crosses a refinement chain: {} vs {}",
                        dots[i], dots[j]
                    )));
                }
                apart[i][j] = true;
                apart[j][i] = true;
            }
        }
    }

    let space = FannSpace {
        data: Arc::new(FannData {
            name: pres.name.clone(),
            dots: dots.clone(),
            index,
            parents,
            children,
            ancestors,
            apart,
        }),
    };
    GradedFragment::from_dots(space, dots)
}

/// The center value of the point's dot at index `k`. Along a refinement
/// chain the centers form a Cauchy sequence: consecutive centers at levels
/// `j < l` differ by at most `2^-j + 2^-l`.
pub fn fann_point_value(
    pres: &MetricPresentation,
    p: &mut Point<FannSpace>,
    k: usize,
) -> Result<BigRational> {
    match p.dot(k)? {
        BallDot::Top => Err(Error::OutOfRange(
            "the maximal dot carries no center value".into(),
        )),
        BallDot::Ball { center, .. } => pres.value(center).cloned(),
    }
}

/// The chain of balls nearest to `x` at each level, as a point of the built
/// fann. Each chosen ball must be a successor of the previous one.
pub fn greedy_chain(
    pres: &MetricPresentation,
    fann: &GradedFragment<FannSpace>,
    x: &BigRational,
) -> Result<Point<FannSpace>> {
    let space = fann.space().clone();
    let max_level = fann.max_rank() - 1;
    let mut chain: Vec<BallDot> = Vec::new();
    let mut previous: Option<BallDot> = None;
    for level in 0..=max_level {
        let mut best: Option<(BigRational, BallDot)> = None;
        for &center in pres.level(level)? {
            let d = abs(&(pres.value(center)? - x));
            let dot = BallDot::Ball {
                level,
                center,
                label: pres.label(center).to_string(),
            };
            if best.as_ref().map_or(true, |(cur, _)| d < *cur) {
                best = Some((d, dot));
            }
        }
        let (_, dot) = best.ok_or_else(|| {
            Error::InvalidPresentation(format!("level {level} of {} is empty", pres.name))
        })?;
        if let Some(prev) = &previous {
            if !space.strictly_refines(&dot, prev) {
                return Err(Error::ContractViolation(format!(
                    "greedy chain broke at level {level}: {dot} does not succeed {prev}"
                )));
            }
        }
        previous = Some(dot.clone());
        chain.push(dot);
    }
    Ok(Point::from_dots(space, chain))
}

// ----- builtin presentations and the file format ---------------------------

/// `[0, 1]` with the dyadic nets `C_i = { j * 2^-(i+2) : 0 <= j <= 2^(i+2) }`
/// and the exact metric `|x - y|`.
pub fn unit_interval_presentation(levels: u32) -> MetricPresentation {
    let mut labels = Vec::new();
    let mut values: Vec<BigRational> = Vec::new();
    let mut by_value: HashMap<BigRational, usize> = HashMap::new();
    let mut level_ids = Vec::new();
    for i in 0..levels {
        let denom = 1i64 << (i + 2);
        let mut ids = Vec::new();
        for j in 0..=denom {
            let v = ratio(j, denom);
            let id = *by_value.entry(v.clone()).or_insert_with(|| {
                labels.push(crate::rational::format_rational(&v));
                values.push(v.clone());
                labels.len() - 1
            });
            ids.push(id);
        }
        level_ids.push(ids);
    }
    let values_for_oracle = values.clone();
    MetricPresentation {
        name: "unit-interval".into(),
        labels,
        values: Some(values),
        levels: level_ids,
        oracle: DistOracle::Fn(Arc::new(move |a, b, _prec| {
            abs(&(&values_for_oracle[a] - &values_for_oracle[b]))
        })),
    }
}

/// A single-point space: every net is `{x0}`, all distances zero.
pub fn point_presentation(levels: u32) -> MetricPresentation {
    MetricPresentation {
        name: "point".into(),
        labels: vec!["x0".into()],
        values: Some(vec![BigRational::zero()]),
        levels: (0..levels).map(|_| vec![0]).collect(),
        oracle: DistOracle::Fn(Arc::new(|_, _, _| BigRational::zero())),
    }
}

/// The middle-thirds set: level-`i` centers are the values of ternary
/// digit strings over `{0, 2}` of length `i+2`, with the exact metric.
pub fn cantor_presentation(levels: u32) -> MetricPresentation {
    let mut labels = Vec::new();
    let mut values: Vec<BigRational> = Vec::new();
    let mut by_value: HashMap<BigRational, usize> = HashMap::new();
    let mut level_ids = Vec::new();
    for i in 0..levels {
        let len = i + 2;
        let mut ids = Vec::new();
        for mask in 0..(1u64 << len) {
            let mut v = BigRational::zero();
            let mut label = String::from("0.");
            for bit in 0..len {
                let digit = if mask & (1 << bit) != 0 { 2 } else { 0 };
                label.push(if digit == 2 { '2' } else { '0' });
                v += ratio(digit, 1) * crate::rational::powi(3, -(bit as i64) - 1);
            }
            let id = *by_value.entry(v.clone()).or_insert_with(|| {
                labels.push(label);
                values.push(v.clone());
                labels.len() - 1
            });
            if !ids.contains(&id) {
                ids.push(id);
            }
        }
        level_ids.push(ids);
    }
    let values_for_oracle = values.clone();
    MetricPresentation {
        name: "cantor-set".into(),
        labels,
        values: Some(values),
        levels: level_ids,
        oracle: DistOracle::Fn(Arc::new(move |a, b, _prec| {
            abs(&(&values_for_oracle[a] - &values_for_oracle[b]))
        })),
    }
}

/// Looks up a builtin presentation by name.
pub fn builtin_presentation(name: &str, levels: u32) -> Result<MetricPresentation> {
    match name {
        "unit-interval" => Ok(unit_interval_presentation(levels)),
        "point" => Ok(point_presentation(levels)),
        "cantor-set" => Ok(cantor_presentation(levels)),
        other => Err(Error::InvalidPresentation(format!(
            "unknown builtin presentation {other:?}"
        ))),
    }
}

/// Parses the presentation file format:
///
/// ```text
/// levels=L
/// <center labels of level 0, whitespace separated>
/// ...           (L level lines)
/// a b p/q       (one exact distance per unordered label pair)
/// ```
///
/// Distances between a label and itself default to zero. If every label
/// parses as a rational, centers carry numeric values.
pub fn parse_presentation(name: &str, text: &str) -> Result<MetricPresentation> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidPresentation("empty presentation file".into()))?;
    let level_count: usize = header
        .strip_prefix("levels=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| {
            Error::InvalidPresentation(format!("expected 'levels=L' header, got {header:?}"))
        })?;

    let mut labels: Vec<String> = Vec::new();
    let mut id_of: HashMap<String, usize> = HashMap::new();
    let mut levels = Vec::new();
    for i in 0..level_count {
        let line = lines.next().ok_or_else(|| {
            Error::InvalidPresentation(format!("missing centers for level {i}"))
        })?;
        let mut ids = Vec::new();
        for tok in line.split_whitespace() {
            let id = *id_of.entry(tok.to_string()).or_insert_with(|| {
                labels.push(tok.to_string());
                labels.len() - 1
            });
            ids.push(id);
        }
        if ids.is_empty() {
            return Err(Error::InvalidPresentation(format!("level {i} is empty")));
        }
        levels.push(ids);
    }

    let mut table: HashMap<(usize, usize), BigRational> = HashMap::new();
    for line in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::InvalidPresentation(format!(
                "expected 'a b p/q' distance line, got {line:?}"
            )));
        }
        let a = *id_of.get(parts[0]).ok_or_else(|| {
            Error::InvalidPresentation(format!("unknown center {:?}", parts[0]))
        })?;
        let b = *id_of.get(parts[1]).ok_or_else(|| {
            Error::InvalidPresentation(format!("unknown center {:?}", parts[1]))
        })?;
        let d = parse_rational(parts[2])?;
        table.insert((a.min(b), a.max(b)), d);
    }

    let values: Option<Vec<BigRational>> = labels
        .iter()
        .map(|l| parse_rational(l).ok())
        .collect::<Option<Vec<_>>>();

    Ok(MetricPresentation {
        name: name.into(),
        labels,
        values,
        levels,
        oracle: DistOracle::Table(table),
    })
}
