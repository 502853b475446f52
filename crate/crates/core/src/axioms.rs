//! Exhaustive verification of the pre-natural space axioms on finite dot
//! sets.
//!
//! The five checks: decidability of the relations (witnessed by evaluating
//! them on every ordered pair), symmetry of apartness, antireflexivity of
//! apartness, monotonicity of apartness under refinement, and refinement
//! being a partial order. Apartness rows are packed into bit matrices so the
//! multi-million-pair fragments stay well inside the suite's time budget.

use crate::space::Space;

#[derive(Debug, Clone)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub pass: bool,
    pub counterexample: Option<String>,
    /// Number of relation instances examined.
    pub checked: u64,
}

#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub space: String,
    pub dots: usize,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

struct BitMatrix {
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        BitMatrix {
            words_per_row,
            bits: vec![0; words_per_row * n],
        }
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words_per_row + j / 64] |= 1 << (j % 64);
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words_per_row + j / 64] & (1 << (j % 64)) != 0
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    /// Index of a bit set in `sup`'s row but not in `sub`'s, if any.
    fn row_difference(&self, sup: usize, sub: usize) -> Option<usize> {
        let a = self.row(sup);
        let b = self.row(sub);
        for (w, (&x, &y)) in a.iter().zip(b.iter()).enumerate() {
            let diff = x & !y;
            if diff != 0 {
                return Some(w * 64 + diff.trailing_zeros() as usize);
            }
        }
        None
    }
}

/// Runs the five pre-natural axioms exhaustively over the given dots.
pub fn check_pre_natural_axioms<S: Space>(space: &S, dots: &[S::Dot]) -> AxiomReport {
    let n = dots.len();
    let pairs = (n as u64) * (n as u64);

    let mut apart = BitMatrix::new(n);
    for i in 0..n {
        for j in 0..n {
            if space.apart(&dots[i], &dots[j]) {
                apart.set(i, j);
            }
        }
    }

    // (i) decidability: both relations evaluated on every ordered pair.
    let decidability = AxiomCheck {
        name: "decidability",
        pass: true,
        counterexample: None,
        checked: 2 * pairs,
    };

    // (ii) symmetry of apartness.
    let mut symmetry = AxiomCheck {
        name: "apartness symmetry",
        pass: true,
        counterexample: None,
        checked: pairs,
    };
    'sym: for i in 0..n {
        for j in (i + 1)..n {
            if apart.get(i, j) != apart.get(j, i) {
                symmetry.pass = false;
                symmetry.counterexample = Some(format!("{} vs {}", dots[i], dots[j]));
                break 'sym;
            }
        }
    }

    // (iii) antireflexivity of apartness.
    let mut antireflexive = AxiomCheck {
        name: "apartness antireflexivity",
        pass: true,
        counterexample: None,
        checked: n as u64,
    };
    for (i, d) in dots.iter().enumerate() {
        if apart.get(i, i) {
            antireflexive.pass = false;
            antireflexive.counterexample = Some(d.to_string());
            break;
        }
    }

    // Refinement scan: reflexivity, antisymmetry, and the pair list reused
    // by transitivity and monotonicity.
    let mut order = AxiomCheck {
        name: "refinement partial order",
        pass: true,
        counterexample: None,
        checked: pairs,
    };
    let mut above: Vec<Vec<u32>> = vec![Vec::new(); n];
    for d in dots {
        if !space.refines(d, d) {
            order.pass = false;
            order.counterexample = Some(format!("{d} does not refine itself"));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && space.refines(&dots[i], &dots[j]) {
                above[i].push(j as u32);
            }
        }
    }
    if order.pass {
        'antisym: for i in 0..n {
            for &j in &above[i] {
                if above[j as usize].contains(&(i as u32)) {
                    order.pass = false;
                    order.counterexample = Some(format!(
                        "antisymmetry broken: {} and {} refine each other",
                        dots[i], dots[j as usize]
                    ));
                    break 'antisym;
                }
            }
        }
    }
    if order.pass {
        let mut refb = BitMatrix::new(n);
        for (i, ups) in above.iter().enumerate() {
            for &j in ups {
                refb.set(i, j as usize);
            }
        }
        'trans: for i in 0..n {
            for &j in &above[i] {
                for &k in &above[j as usize] {
                    if k as usize != i && !refb.get(i, k as usize) {
                        order.pass = false;
                        order.counterexample = Some(format!(
                            "transitivity broken: {} in {} in {}",
                            dots[i], dots[j as usize], dots[k as usize]
                        ));
                        break 'trans;
                    }
                }
            }
        }
    }

    // (iv) monotonicity: a refines b and c # b imply c # a, i.e. the apart
    // row of b is contained in the apart row of a.
    let mut monotone = AxiomCheck {
        name: "apartness refinement-monotonicity",
        pass: true,
        counterexample: None,
        checked: above.iter().map(|v| v.len() as u64 * n as u64).sum(),
    };
    'mono: for i in 0..n {
        for &j in &above[i] {
            if let Some(c) = apart.row_difference(j as usize, i) {
                monotone.pass = false;
                monotone.counterexample = Some(format!(
                    "{} refines {} but {} is apart only from the coarser dot",
                    dots[i], dots[j as usize], dots[c]
                ));
                break 'mono;
            }
        }
    }

    AxiomReport {
        space: space.name(),
        dots: n,
        checks: vec![decidability, symmetry, antireflexive, monotone, order],
    }
}

/// True iff every listed dot refines the space's maximal dot.
pub fn maximal_dot_refined_by_all<S: Space>(space: &S, dots: &[S::Dot]) -> bool {
    let top = space.maximal_dot();
    dots.iter().all(|d| space.refines(d, &top))
}
