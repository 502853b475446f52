//! Point-level semi-decisions: examples with independently computed
//! expectations, and the stream-contract properties.

use ntop_core::arith::{add_transducer, from_rational_pair};
use ntop_core::arith::neg_map;
use ntop_core::point::{
    begins_with, chooses_between, point_prefix_valid, points_apart_within, Point, Side,
};
use ntop_core::rational::{big, pow2, ratio};
use ntop_core::space::{Graded, Space};
use ntop_core::spaces::lean::{from_rational, from_rational_with_depths, LeanDyadicDot, SigmaR};
use ntop_core::spaces::nary::nary_from_rational;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn d(n: i128, m: u32) -> LeanDyadicDot {
    LeanDyadicDot::dot(n, m)
}

#[test]
fn touch_examples() {
    let s = SigmaR;
    // [0,1] vs [2,3]: apart, so they do not touch
    assert!(!s.touch(&d(0, 1), &d(4, 1)));
    // [0,1] vs [1,2]: shared endpoint
    assert!(s.touch(&d(0, 1), &d(2, 1)));
    assert!(s.touch(&d(0, 1), &d(0, 1)));
}

#[test]
fn strictly_refines_examples() {
    let s = SigmaR;
    assert!(s.strictly_refines(&d(1, 2), &d(0, 1))); // [1/4,3/4] in [0,1]
    assert!(!s.strictly_refines(&d(0, 1), &d(0, 1)));
    assert!(!s.strictly_refines(&LeanDyadicDot::Top, &d(0, 1)));
}

/// Independent oracle: the first index at which the canonical streams of two
/// rationals have disjoint closed intervals, by exact rational arithmetic on
/// the hull formula.
fn first_separating_index(x: &BigRational, y: &BigRational, fuel: u32) -> Option<usize> {
    for k in 0..fuel {
        let hull = |q: &BigRational| {
            let lo =
                BigRational::from_integer((q * pow2(k as i64)).floor().to_integer()) * pow2(-(k as i64));
            let hi = &lo + pow2(1 - k as i64);
            (lo, hi)
        };
        let (xlo, xhi) = hull(x);
        let (ylo, yhi) = hull(y);
        if xhi < ylo || yhi < xlo {
            return Some(k as usize);
        }
    }
    None
}

#[test]
fn points_apart_at_the_oracle_index() {
    // canonical 0 and 1 separate exactly when the width drops below the gap
    let expected = first_separating_index(&big(0), &big(1), 8);
    assert_eq!(expected, Some(2));
    let mut p = from_rational(&big(0));
    let mut q = from_rational(&big(1));
    let witness = points_apart_within(&mut p, &mut q, 8).unwrap().unwrap();
    assert_eq!(witness.index, 2);

    let mut rng = ChaCha8Rng::seed_from_u64(0xAB10);
    for _ in 0..30 {
        let den = rng.gen_range(1..50i64);
        let x = ratio(rng.gen_range(-200..200), den);
        let y = ratio(rng.gen_range(-200..200), den + 1);
        let mut p = from_rational(&x);
        let mut q = from_rational(&y);
        let got = points_apart_within(&mut p, &mut q, 40).unwrap();
        let expected = first_separating_index(&x, &y, 40);
        assert_eq!(got.map(|w| w.index), expected, "at ({x}, {y})");
        // a witness certifies the rationals differ
        if got.is_some() {
            assert_ne!(x, y);
        }
    }
}

#[test]
fn identical_points_never_apart() {
    let mut p = from_rational(&ratio(7, 5));
    let mut q = from_rational(&ratio(7, 5));
    assert!(points_apart_within(&mut p, &mut q, 64).unwrap().is_none());
}

#[test]
fn two_schedules_of_one_rational_touch() {
    let q = ratio(1, 3);
    let mut a = from_rational(&q);
    let mut b = from_rational_with_depths(&q, |k| 2 * k as u32 + 1);
    assert!(points_apart_within(&mut a, &mut b, 32).unwrap().is_none());
}

#[test]
fn apart_is_symmetric_in_the_arguments() {
    let pairs = [
        (big(0), big(1)),
        (ratio(1, 3), ratio(1, 2)),
        (ratio(-5, 4), ratio(-5, 4)),
        (big(2), ratio(9, 4)),
    ];
    for (x, y) in pairs {
        let fwd = points_apart_within(&mut from_rational(&x), &mut from_rational(&y), 24).unwrap();
        let bwd = points_apart_within(&mut from_rational(&y), &mut from_rational(&x), 24).unwrap();
        assert_eq!(fwd.map(|w| w.index), bwd.map(|w| w.index));
    }
}

#[test]
fn prefix_validity_examples() {
    let mut p = from_rational(&ratio(1, 2));
    assert!(point_prefix_valid(&mut p, 16).unwrap());
    let mut constant = Point::from_dots(SigmaR, vec![d(0, 1); 4]);
    assert!(!point_prefix_valid(&mut constant, 2).unwrap());
    let mut single = Point::from_dots(SigmaR, vec![d(0, 1)]);
    assert!(point_prefix_valid(&mut single, 1).unwrap());
}

#[test]
fn constructor_points_are_valid_to_depth_64() {
    let mut canonical = from_rational(&ratio(-22, 7));
    assert!(point_prefix_valid(&mut canonical, 64).unwrap());
    let mut skewed = from_rational_with_depths(&ratio(5, 9), |k| (k as u32) * 2);
    assert!(point_prefix_valid(&mut skewed, 40).unwrap());
    let mut bin = nary_from_rational(2, &ratio(1, 7));
    assert!(point_prefix_valid(&mut bin, 64).unwrap());
    let mut pair = from_rational_pair(&ratio(1, 3), &ratio(2, 3));
    assert!(point_prefix_valid(&mut pair, 64).unwrap());
    let mut image = neg_map().apply(from_rational(&ratio(1, 3)));
    assert!(point_prefix_valid(&mut image, 64).unwrap());
    let mut sum = add_transducer().drive(from_rational_pair(&ratio(1, 3), &ratio(1, 6)));
    assert!(point_prefix_valid(&mut sum, 64).unwrap());
}

#[test]
fn begins_with_examples() {
    // canonical 1/2 strictly enters [0,1] within 8 pulls
    let mut p = from_rational(&ratio(1, 2));
    assert!(begins_with(&mut p, &d(0, 1), 8).unwrap());
    // every point begins with the maximal dot
    let mut p = from_rational(&ratio(355, 113));
    assert!(begins_with(&mut p, &LeanDyadicDot::Top, 2).unwrap());
    // canonical 2 never enters [0,1]
    let mut p = from_rational(&big(2));
    assert!(!begins_with(&mut p, &d(0, 1), 64).unwrap());
}

#[test]
fn points_choose_between_apart_dots() {
    // for rational-separated dots, a canonical point picks a side at finite fuel
    let a = d(0, 2); // [0, 1/2]
    let b = d(4, 2); // [1, 3/2]
    let mut p = from_rational(&ratio(1, 4));
    let w = chooses_between(&mut p, &a, &b, 16).unwrap().unwrap();
    assert_eq!(w.side, Side::Second); // apart from [1, 3/2]
    let mut p = from_rational(&ratio(5, 4));
    let w = chooses_between(&mut p, &a, &b, 16).unwrap().unwrap();
    assert_eq!(w.side, Side::First);
    // touching dots are rejected as a precondition violation
    assert!(chooses_between(&mut from_rational(&big(0)), &d(0, 1), &d(2, 1), 4).is_err());
}

#[test]
fn stream_errors_propagate() {
    let mut short = Point::from_dots(SigmaR, vec![d(0, 0), d(1, 1)]);
    let err = points_apart_within(&mut short, &mut from_rational(&big(0)), 8).unwrap_err();
    assert!(matches!(err, ntop_core::Error::Exhausted { produced: 2 }));
}

#[test]
fn space_mismatch_is_reported() {
    let mut p = from_rational(&big(0));
    let mut q = from_rational(&big(0));
    // same space: fine
    assert!(points_apart_within(&mut p, &mut q, 4).is_ok());
    let prod = ntop_core::arith::sigma_r_pair();
    assert_eq!(prod.min_depth(), 0);
}
