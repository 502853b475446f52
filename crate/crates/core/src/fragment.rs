//! Finite, predecessor-closed fragments of graded spaces, with depth and
//! successor maps materialized.
//!
//! Whole dot domains are infinite; every exhaustive structure check in this
//! crate runs over a fragment. Construction closes the given dots under
//! immediate predecessors, validates them against the space, and records the
//! one-step successor links, so that the trea grading (all successor trails
//! to a dot have equal length) holds by construction and is re-checked
//! against the refinement relation.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::space::Graded;
use crate::spaces::baire::{BaireDot, BaireSpace};
use crate::spaces::lean::{LeanDyadicDot, Sigma01, SigmaR};
use crate::spaces::nary::{NAryDot, NAryUnit};
use crate::spaces::product::{PairDot, Product};

pub struct GradedFragment<S: Graded> {
    space: S,
    dots: Vec<S::Dot>,
    index: HashMap<S::Dot, usize>,
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
}

impl<S: Graded> GradedFragment<S> {
    /// Builds the fragment spanned by `seed`: the seed dots together with all
    /// their ancestors, ordered by rank (maximal dot first) and deduplicated.
    pub fn from_dots(space: S, seed: impl IntoIterator<Item = S::Dot>) -> Result<Self> {
        let mut dots: Vec<S::Dot> = Vec::new();
        let mut seen: HashMap<S::Dot, ()> = HashMap::new();
        let mut stack: Vec<S::Dot> = seed.into_iter().collect();
        let top = space.maximal_dot();
        stack.push(top);
        while let Some(d) = stack.pop() {
            if seen.contains_key(&d) {
                continue;
            }
            if !space.is_dot(&d) && !space.is_maximal(&d) {
                return Err(Error::InvalidFragment(format!(
                    "{d} is not a dot of {}",
                    space.name()
                )));
            }
            for p in space.parents(&d) {
                if !seen.contains_key(&p) {
                    stack.push(p);
                }
            }
            seen.insert(d.clone(), ());
            dots.push(d);
        }
        dots.sort_by(|a, b| space.rank(a).cmp(&space.rank(b)).then_with(|| a.cmp(b)));

        let index: HashMap<S::Dot, usize> = dots
            .iter()
            .enumerate()
            .map(|(i, d)| (d.clone(), i))
            .collect();
        let mut parents: Vec<Vec<usize>> = vec![Vec::new(); dots.len()];
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); dots.len()];
        for (i, d) in dots.iter().enumerate() {
            let rank = space.rank(d);
            for p in space.parents(d) {
                let j = *index.get(&p).ok_or_else(|| {
                    Error::InvalidFragment(format!("predecessor {p} of {d} missing"))
                })?;
                if space.rank(&p) + 1 != rank {
                    return Err(Error::InvalidFragment(format!(
                        "grading broken: {p} is an immediate predecessor of {d} \
                         but their ranks differ by more than one"
                    )));
                }
                if !space.strictly_refines(d, &p) {
                    return Err(Error::InvalidFragment(format!(
                        "{d} does not refine its claimed predecessor {p}"
                    )));
                }
                parents[i].push(j);
                children[j].push(i);
            }
            if rank > 0 && parents[i].is_empty() {
                return Err(Error::InvalidFragment(format!("{d} has no predecessor")));
            }
        }
        Ok(GradedFragment {
            space,
            dots,
            index,
            parents,
            children,
        })
    }

    pub fn space(&self) -> &S {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.dots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dots.is_empty()
    }

    pub fn dots(&self) -> &[S::Dot] {
        &self.dots
    }

    pub fn dot(&self, i: usize) -> &S::Dot {
        &self.dots[i]
    }

    pub fn contains(&self, d: &S::Dot) -> bool {
        self.index.contains_key(d)
    }

    pub fn index_of(&self, d: &S::Dot) -> Option<usize> {
        self.index.get(d).copied()
    }

    /// Indices of the immediate predecessors of dot `i`.
    pub fn parents_of(&self, i: usize) -> &[usize] {
        &self.parents[i]
    }

    /// Indices of the immediate successors of dot `i` within the fragment.
    pub fn children_of(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    pub fn rank_of(&self, i: usize) -> u32 {
        self.space.rank(&self.dots[i])
    }

    pub fn max_rank(&self) -> u32 {
        self.dots.iter().map(|d| self.space.rank(d)).max().unwrap_or(0)
    }

    /// One line per dot: `depth<TAB>dot<TAB>successor-list`, fragment order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, d) in self.dots.iter().enumerate() {
            let succ = self.children[i]
                .iter()
                .map(|&j| self.dots[j].to_string())
                .collect::<Vec<_>>()
                .join(",");
            out.push_str(&format!("{}\t{}\t{}\n", self.space.depth(d), d, succ));
        }
        out
    }
}

impl<S: Graded> std::fmt::Debug for GradedFragment<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GradedFragment({}, {} dots, max rank {})",
            self.space.name(),
            self.len(),
            self.max_rank()
        )
    }
}

/// The standard `sigma_R` test fragment: depth `m <= max_depth` with
/// `|n| <= 2^(m+3)` at each depth.
pub fn sigma_r_fragment(max_depth: u32) -> GradedFragment<SigmaR> {
    sigma_r_fragment_with(max_depth, |m| 1i128 << (m + 3))
}

/// `sigma_R` fragment with a caller-chosen per-depth bound on `|n|`.
pub fn sigma_r_fragment_with(
    max_depth: u32,
    n_bound: impl Fn(u32) -> i128,
) -> GradedFragment<SigmaR> {
    let mut seed = Vec::new();
    for m in 0..=max_depth {
        let bound = n_bound(m);
        for n in -bound..=bound {
            seed.push(LeanDyadicDot::dot(n, m));
        }
    }
    GradedFragment::from_dots(SigmaR, seed).expect("sigma_R window is predecessor-closed")
}

/// The unit subfann `sigma_[0,1]` down to the given grading.
pub fn sigma01_fragment(max_grading: u32) -> GradedFragment<Sigma01> {
    let mut seed = Vec::new();
    for m in 1..=(max_grading + 1) {
        let cap = (1i128 << m) - 2;
        for n in 0..=cap {
            seed.push(LeanDyadicDot::dot(n, m));
        }
    }
    GradedFragment::from_dots(Sigma01, seed).expect("unit fragment is predecessor-closed")
}

/// The `[0,1]` n-ary tree down to `max_depth`, optionally capping the number
/// of dots kept per level (the left-most `cap` dots; prefixes stay closed).
pub fn nary_unit_fragment(
    base: u32,
    max_depth: u32,
    per_level_cap: Option<i128>,
) -> GradedFragment<NAryUnit> {
    let space = NAryUnit::new(base);
    let mut seed = Vec::new();
    for m in 0..=max_depth {
        let full = (base as i128).checked_pow(m).unwrap_or(i128::MAX);
        let cap = per_level_cap.map_or(full, |c| c.min(full));
        for n in 0..cap {
            seed.push(NAryDot::interval(base, n, m));
        }
    }
    GradedFragment::from_dots(space, seed).expect("unit tree window is prefix-closed")
}

/// All sequences of length `<= max_len` over `{0, .., alphabet-1}`, as a
/// fragment of the given Baire-like space.
pub fn baire_fragment(
    space: BaireSpace,
    alphabet: u32,
    max_len: u32,
) -> GradedFragment<BaireSpace> {
    let mut seed = vec![BaireDot::empty()];
    let mut frontier = vec![BaireDot::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for d in &frontier {
            for j in 0..alphabet {
                let mut v = d.0.clone();
                v.push(j);
                next.push(BaireDot(v));
            }
        }
        seed.extend(next.iter().cloned());
        frontier = next;
    }
    GradedFragment::from_dots(space, seed).expect("sequence set is prefix-closed")
}

/// The equal-depth product fragment of `sigma_R x sigma_R`: depths
/// `<= max_depth` with `|n| <= n_abs` in each component at each depth.
pub fn product_sigma_r_fragment(
    max_depth: u32,
    n_abs: i128,
) -> GradedFragment<Product<SigmaR, SigmaR>> {
    let space = Product::new(SigmaR, SigmaR).expect("sigma_R pairs with itself");
    let mut seed = Vec::new();
    for m in 0..=max_depth {
        for n1 in -n_abs..=n_abs {
            for n2 in -n_abs..=n_abs {
                seed.push(PairDot::Pair(
                    LeanDyadicDot::dot(n1, m),
                    LeanDyadicDot::dot(n2, m),
                ));
            }
        }
    }
    GradedFragment::from_dots(space, seed).expect("product window is predecessor-closed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::Space;

    #[test]
    fn sigma_r_fragment_shape() {
        let frag = sigma_r_fragment(2);
        // depth m seeds 2*2^(m+3)+1 dots; closure adds the left-boundary
        // parent at each depth below the deepest (floor-parents skew left)
        assert_eq!(frag.len(), 1 + 17 + 33 + 65 + 2);
        for m in 0..=2u32 {
            let bound = 1i128 << (m + 3);
            for n in -bound..=bound {
                assert!(frag.contains(&LeanDyadicDot::dot(n, m)));
            }
        }
        assert!(frag.contains(&LeanDyadicDot::Top));
        assert_eq!(frag.dot(0), &LeanDyadicDot::Top);
        assert!(frag.max_rank() == 3);
    }

    #[test]
    fn glued_dot_has_two_parents() {
        let frag = sigma_r_fragment(2);
        let i = frag.index_of(&LeanDyadicDot::dot(2, 1)).unwrap();
        let parents: Vec<_> = frag
            .parents_of(i)
            .iter()
            .map(|&j| frag.dot(j).clone())
            .collect();
        assert_eq!(
            parents,
            vec![LeanDyadicDot::dot(0, 0), LeanDyadicDot::dot(1, 0)]
        );
    }

    #[test]
    fn missing_predecessor_rejected_means_closure_works() {
        // from_dots closes under predecessors, so a lone deep dot succeeds
        let frag =
            GradedFragment::from_dots(SigmaR, vec![LeanDyadicDot::dot(5, 3)]).unwrap();
        // ancestors of [5/8, 7/8]: depth 2: {1,2}; depth 1: {0,1}; depth 0: {0}... plus TOP
        assert!(frag.contains(&LeanDyadicDot::Top));
        assert!(frag.len() >= 6);
        for (i, d) in frag.dots().iter().enumerate() {
            if !frag.space().is_maximal(d) {
                assert!(!frag.parents_of(i).is_empty());
            }
        }
    }

    #[test]
    fn sigma01_fragment_is_ternary_branching() {
        let frag = sigma01_fragment(2);
        // gradings 0,1,2 have 1,3,7 dots
        assert_eq!(frag.len(), 11);
        let root = frag.index_of(&LeanDyadicDot::dot(0, 1)).unwrap();
        assert_eq!(frag.children_of(root).len(), 3);
    }

    #[test]
    fn dump_format_golden() {
        let frag = sigma01_fragment(1);
        let dump = frag.dump();
        let expected = "0\tD(0,1)\tD(0,2),D(1,2),D(2,2)\n\
                        1\tD(0,2)\t\n\
                        1\tD(1,2)\t\n\
                        1\tD(2,2)\t\n";
        assert_eq!(dump, expected);
    }

    #[test]
    fn baire_fragment_counts() {
        let frag = baire_fragment(BaireSpace::baire(), 3, 2);
        assert_eq!(frag.len(), 1 + 3 + 9);
        let frag = baire_fragment(BaireSpace::cantor(), 2, 3);
        assert_eq!(frag.len(), 1 + 2 + 4 + 8);
    }

    #[test]
    fn product_fragment_counts() {
        let frag = product_sigma_r_fragment(1, 2);
        assert_eq!(frag.len(), 1 + 25 + 25);
    }
}
