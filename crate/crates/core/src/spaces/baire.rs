//! Baire space and Cantor space over finite sequences of naturals.
//!
//! The empty sequence is the maximal dot; `b` refines `a` iff `b` extends
//! `a`, and two dots are apart iff neither extends the other. Cantor space is
//! the decidable subspace of sequences over `{0, 1}`; more generally any
//! finite alphabet gives a fan.

use std::fmt;

use crate::error::{Error, Result};
use crate::space::{Graded, Space};

/// A finite sequence of naturals; empty is the maximal dot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaireDot(pub Vec<u32>);

impl BaireDot {
    pub fn empty() -> Self {
        BaireDot(Vec::new())
    }

    pub fn of(entries: &[u32]) -> Self {
        BaireDot(entries.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn extends(&self, other: &BaireDot) -> bool {
        self.0.len() >= other.0.len() && self.0[..other.0.len()] == other.0[..]
    }
}

impl fmt::Display for BaireDot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// Prefix refinement and mutual non-extension apartness.
pub fn baire_relations(a: &BaireDot, c: &BaireDot) -> (bool, bool) {
    let apart = !a.extends(c) && !c.extends(a);
    let refines = c.extends(a);
    (apart, refines)
}

/// Baire space, or a finitely-branching restriction of it.
///
/// `alphabet: None` is full Baire space (unbounded branching, a spread).
/// `alphabet: Some(k)` keeps only sequences over `{0, .., k-1}`; with `k = 2`
/// this is Cantor space, a fan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BaireSpace {
    pub alphabet: Option<u32>,
}

impl BaireSpace {
    pub fn baire() -> Self {
        BaireSpace { alphabet: None }
    }

    pub fn cantor() -> Self {
        BaireSpace { alphabet: Some(2) }
    }

    pub fn with_alphabet(k: u32) -> Self {
        BaireSpace { alphabet: Some(k) }
    }
}

impl Space for BaireSpace {
    type Dot = BaireDot;

    fn name(&self) -> String {
        match self.alphabet {
            None => "baire".into(),
            Some(2) => "cantor".into(),
            Some(k) => format!("baire[{k}]"),
        }
    }

    fn is_dot(&self, a: &BaireDot) -> bool {
        match self.alphabet {
            None => true,
            Some(k) => a.0.iter().all(|&e| e < k),
        }
    }

    fn apart(&self, a: &BaireDot, b: &BaireDot) -> bool {
        baire_relations(a, b).0
    }

    fn refines(&self, a: &BaireDot, b: &BaireDot) -> bool {
        a.extends(b)
    }

    fn maximal_dot(&self) -> BaireDot {
        BaireDot::empty()
    }
}

impl Graded for BaireSpace {
    fn depth(&self, a: &BaireDot) -> u32 {
        a.len() as u32
    }

    fn min_depth(&self) -> u32 {
        1
    }

    fn successors(&self, a: &BaireDot) -> Result<Vec<BaireDot>> {
        match self.alphabet {
            None => Err(Error::UnsupportedEnumeration(
                "Baire space dots have unboundedly many successors".into(),
            )),
            Some(k) => Ok((0..k)
                .map(|j| {
                    let mut v = a.0.clone();
                    v.push(j);
                    BaireDot(v)
                })
                .collect()),
        }
    }

    fn parents(&self, a: &BaireDot) -> Vec<BaireDot> {
        if a.is_empty() {
            vec![]
        } else {
            vec![BaireDot(a.0[..a.0.len() - 1].to_vec())]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bd(e: &[u32]) -> BaireDot {
        BaireDot::of(e)
    }

    #[test]
    fn relation_examples() {
        assert_eq!(baire_relations(&bd(&[1, 2]), &bd(&[1, 3])), (true, false));
        let (apart, refines) = baire_relations(&bd(&[1]), &bd(&[1, 2]));
        assert!(!apart && refines);
        // everything refines the empty sequence
        assert_eq!(baire_relations(&bd(&[]), &bd(&[5, 5])).1, true);
        assert!(!baire_relations(&bd(&[]), &bd(&[7])).0);
    }

    #[test]
    fn apart_xor_comparable_exhaustive() {
        // all pairs of sequences of length <= 4 over {0,1,2}
        let mut dots = vec![bd(&[])];
        for len in 1..=4usize {
            let mut next = Vec::new();
            for d in dots.iter().filter(|d| d.len() == len - 1) {
                for j in 0..3u32 {
                    let mut v = d.0.clone();
                    v.push(j);
                    next.push(BaireDot(v));
                }
            }
            dots.extend(next);
        }
        for a in &dots {
            for b in &dots {
                let (apart, refines_ba) = baire_relations(a, b);
                let refines_ab = baire_relations(b, a).1;
                assert!(
                    apart ^ (refines_ab || refines_ba),
                    "apart and comparability must partition: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn space_shape() {
        let baire = BaireSpace::baire();
        let cantor = BaireSpace::cantor();
        assert_eq!(baire.depth(&bd(&[5, 5, 5])), 3);
        assert_eq!(baire.rank(&bd(&[5, 5, 5])), 3);
        assert!(baire.successors(&bd(&[1])).is_err());
        assert_eq!(
            cantor.successors(&bd(&[1])).unwrap(),
            vec![bd(&[1, 0]), bd(&[1, 1])]
        );
        assert_eq!(cantor.parents(&bd(&[1, 0])), vec![bd(&[1])]);
        assert!(cantor.parents(&bd(&[])).is_empty());
        assert!(cantor.is_dot(&bd(&[0, 1, 1])));
        assert!(!cantor.is_dot(&bd(&[0, 2])));
    }
}
