//! Fault-injection wrapper for demonstrating the axiom suite's failure
//! reporting: apartness is flipped for one ordered dot pair, which breaks
//! symmetry with a concrete counterexample.

use ntop_core::{Result, Space};

#[derive(Debug, Clone, PartialEq)]
pub struct MutatedSpace<S: Space> {
    inner: S,
    poison: (S::Dot, S::Dot),
}

impl<S: Space> MutatedSpace<S> {
    pub fn new(inner: S, poison: (S::Dot, S::Dot)) -> Self {
        MutatedSpace { inner, poison }
    }
}

impl<S: Space> Space for MutatedSpace<S> {
    type Dot = S::Dot;

    fn name(&self) -> String {
        format!("{} (mutated)", self.inner.name())
    }

    fn is_dot(&self, a: &Self::Dot) -> bool {
        self.inner.is_dot(a)
    }

    fn apart(&self, a: &Self::Dot, b: &Self::Dot) -> bool {
        if *a == self.poison.0 && *b == self.poison.1 {
            return !self.inner.apart(a, b);
        }
        self.inner.apart(a, b)
    }

    fn refines(&self, a: &Self::Dot, b: &Self::Dot) -> bool {
        self.inner.refines(a, b)
    }

    fn maximal_dot(&self) -> Self::Dot {
        self.inner.maximal_dot()
    }
}

/// Runs the axiom suite against a copy of the space with one flipped
/// apartness instance.
pub fn mutated_report<S: Space>(
    space: &S,
    dots: &[S::Dot],
) -> Result<ntop_core::axioms::AxiomReport> {
    if dots.len() < 2 {
        return Err(ntop_core::Error::Precondition(
            "fault injection needs at least two dots".into(),
        ));
    }
    let mutated = MutatedSpace::new(space.clone(), (dots[0].clone(), dots[1].clone()));
    Ok(ntop_core::axioms::check_pre_natural_axioms(&mutated, dots))
}
