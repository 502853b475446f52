//! Converting the arithmetic stream transducers into plain dot maps over
//! `sigma_R` and checking the converted maps behave like the originals.

use ntop_core::arith::{add_transducer, from_rational_pair, mul_transducer};
use ntop_core::fragment::product_sigma_r_fragment;
use ntop_core::morphism::{check_monotone, hat_widen, trail_to_refinement, Transducer};
use ntop_core::point::points_apart_within;
use ntop_core::rational::ratio;
use ntop_core::spaces::lean::{LeanDyadicDot, SigmaR};
use ntop_core::spaces::nary::{nary_from_rational, NAryDot, NAryKind, NAryLine};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_rational(rng: &mut ChaCha8Rng) -> num_rational::BigRational {
    let den = rng.gen_range(1..64i64);
    let num = rng.gen_range(-8 * den..=8 * den);
    ratio(num, den)
}

#[test]
fn add_converts_on_small_fragment() {
    let frag = product_sigma_r_fragment(4, 8);
    let add = add_transducer();
    let g = trail_to_refinement(&add, &frag).expect("conversion must not hit a violation");
    assert!(check_monotone(&g, &frag).unwrap());
}

#[test]
fn converted_add_agrees_with_transducer_on_rationals() {
    let frag = product_sigma_r_fragment(3, 4);
    let add = add_transducer();
    let g = trail_to_refinement(&add, &frag).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0903_0001);
    for _ in 0..10 {
        let x = random_rational(&mut rng);
        let y = random_rational(&mut rng);
        let mut via_map = g.apply(from_rational_pair(&x, &y));
        let mut via_stream = add.drive(from_rational_pair(&x, &y));
        assert!(
            points_apart_within(&mut via_map, &mut via_stream, 24)
                .unwrap()
                .is_none(),
            "converted map disagrees with the transducer at ({x}, {y})"
        );
        // both contain the exact sum
        let sum = &x + &y;
        for k in 0..24usize {
            if let Some((lo, hi)) = via_map.dot(k).unwrap().interval() {
                assert!(lo <= sum && sum <= hi);
            }
        }
    }
}

#[test]
fn converted_mul_agrees_with_transducer_on_rationals() {
    let frag = product_sigma_r_fragment(3, 4);
    let mul = mul_transducer();
    let g = trail_to_refinement(&mul, &frag).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0903_0002);
    for _ in 0..10 {
        let x = random_rational(&mut rng);
        let y = random_rational(&mut rng);
        let mut via_map = g.apply(from_rational_pair(&x, &y));
        let mut via_stream = mul.drive(from_rational_pair(&x, &y));
        assert!(points_apart_within(&mut via_map, &mut via_stream, 20)
            .unwrap()
            .is_none());
    }
}

#[test]
fn dot_map_transducer_on_a_tree_converts_to_widened_map() {
    // on a tree (unique trails) the value sets are singletons, so the
    // converted map is just the widening of the underlying dot map
    let embed_step = |_s: &LeanDyadicDot, a: &NAryDot| {
        Ok(match a.kind {
            NAryKind::Top => LeanDyadicDot::Top,
            NAryKind::Interval { n, m } => LeanDyadicDot::dot(n, m),
        })
    };
    let t = Transducer::new("embed", NAryLine::new(2), SigmaR, embed_step);
    let seed: Vec<NAryDot> = (0..5u32)
        .flat_map(|m| (-(3 * (1i128 << m))..3 * (1i128 << m)).map(move |n| NAryDot::interval(2, n, m)))
        .collect();
    let frag = ntop_core::fragment::GradedFragment::from_dots(NAryLine::new(2), seed).unwrap();
    let g = trail_to_refinement(&t, &frag).unwrap();
    for dot in frag.dots() {
        let direct = match dot.kind {
            NAryKind::Top => LeanDyadicDot::Top,
            NAryKind::Interval { n, m } => LeanDyadicDot::dot(n, m),
        };
        assert_eq!(g.dot(dot).unwrap(), hat_widen(&direct));
    }
    // and the conversion of a tree-domain map stays monotone
    assert!(check_monotone(&g, &frag).unwrap());
    // driving it along a binary point matches applying the widened map
    let p = nary_from_rational(2, &ratio(5, 8));
    let mut image = g.apply(p);
    for k in 0..10usize {
        let d = image.dot(k).unwrap();
        if let Some((lo, hi)) = d.interval() {
            assert!(lo <= ratio(5, 8) && ratio(5, 8) <= hi);
        }
    }
}
