//! Composition and identity laws, equivalence preservation, and apartness
//! reflection for the shipped maps.

use ntop_core::arith::{
    add_transducer, from_rational_pair, max_map, min_map, neg_map, pair_point,
};
use ntop_core::fragment::{
    nary_unit_fragment, product_sigma_r_fragment, sigma_r_fragment_with, GradedFragment,
};
use ntop_core::morphism::{
    cantor_map, check_monotone, compose, embed_binary, identity, include_unit, RefinementMap,
};
use ntop_core::point::{points_apart_within, Point};
use ntop_core::rational::{pow2, ratio};
use ntop_core::spaces::lean::{from_rational, from_rational_with_depths, SigmaR};
use ntop_core::spaces::nary::{nary_from_rational, nary_unit_from_rational, NAryDot, NAryLine};
use ntop_core::Space;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sigma_maps() -> Vec<RefinementMap<SigmaR, SigmaR>> {
    let id = identity(&SigmaR);
    let neg = neg_map();
    let neg_neg = compose(&neg, &neg).unwrap();
    vec![id, neg, neg_neg]
}

#[test]
fn composition_is_associative_dotwise() {
    let frag = sigma_r_fragment_with(5, |m| 1i128 << (m + 1));
    let maps = sigma_maps();
    for f in &maps {
        for g in &maps {
            for h in &maps {
                let left = compose(&compose(f, g).unwrap(), h).unwrap();
                let right = compose(f, &compose(g, h).unwrap()).unwrap();
                for dot in frag.dots() {
                    assert_eq!(left.dot(dot).unwrap(), right.dot(dot).unwrap());
                }
            }
        }
    }
    // a heterogeneous chain: unit ternary -> unit binary -> binary line -> sigma_R
    let stair = cantor_map();
    let incl = include_unit(2);
    let emb = embed_binary();
    let left = compose(&compose(&stair, &incl).unwrap(), &emb).unwrap();
    let right = compose(&stair, &compose(&incl, &emb).unwrap()).unwrap();
    let tern = nary_unit_fragment(3, 4, None);
    for dot in tern.dots() {
        assert_eq!(left.dot(dot).unwrap(), right.dot(dot).unwrap());
    }
}

#[test]
fn identity_laws() {
    let frag = sigma_r_fragment_with(5, |m| 1i128 << (m + 1));
    let id = identity(&SigmaR);
    let neg = neg_map();
    let left = compose(&id, &neg).unwrap();
    let right = compose(&neg, &id).unwrap();
    for dot in frag.dots() {
        assert_eq!(left.dot(dot).unwrap(), neg.dot(dot).unwrap());
        assert_eq!(right.dot(dot).unwrap(), neg.dot(dot).unwrap());
    }
}

#[test]
fn neg_involution_composes_to_identity() {
    let frag = sigma_r_fragment_with(6, |m| 1i128 << (m + 1));
    let neg = neg_map();
    let twice = compose(&neg, &neg).unwrap();
    for dot in frag.dots() {
        assert_eq!(twice.dot(dot).unwrap(), *dot);
    }
    // image of the binary dot [0,1/2] under embed-then-negate is [-1, 0]
    let emb = embed_binary();
    let chain = compose(&emb, &neg).unwrap();
    assert_eq!(
        chain.dot(&NAryDot::interval(2, 0, 1)).unwrap(),
        ntop_core::spaces::lean::LeanDyadicDot::dot(-2, 1)
    );
}

#[test]
fn shipped_maps_are_monotone_to_depth_six() {
    let line = sigma_r_fragment_with(6, |m| 1i128 << (m + 1));
    assert!(check_monotone(&identity(&SigmaR), &line).unwrap());
    assert!(check_monotone(&neg_map(), &line).unwrap());
    let prod = product_sigma_r_fragment(6, 3);
    assert!(check_monotone(&min_map(), &prod).unwrap());
    assert!(check_monotone(&max_map(), &prod).unwrap());
    let bin_line: GradedFragment<NAryLine> = {
        let seed: Vec<NAryDot> = (0..=6u32)
            .flat_map(|m| {
                let bound = 2i128 * (1i128 << m);
                (-bound..bound).map(move |n| NAryDot::interval(2, n, m))
            })
            .collect();
        GradedFragment::from_dots(NAryLine::new(2), seed).unwrap()
    };
    assert!(check_monotone(&embed_binary(), &bin_line).unwrap());
    let tern = nary_unit_fragment(3, 6, None);
    assert!(check_monotone(&cantor_map(), &tern).unwrap());
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let den = rng.gen_range(1..64i64);
    ratio(rng.gen_range(-8 * den..=8 * den), den)
}

/// Two differently scheduled representatives of one rational.
fn two_schedules(q: &BigRational) -> (Point<SigmaR>, Point<SigmaR>) {
    (
        from_rational(q),
        from_rational_with_depths(q, |k| 2 * k as u32 + 1),
    )
}

#[test]
fn equivalence_preservation_at_fuel() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xEC01);
    let neg = neg_map();
    let id = identity(&SigmaR);
    for _ in 0..50 {
        let q = random_rational(&mut rng);
        let (p1, p2) = two_schedules(&q);
        let mut a = neg.apply(p1);
        let mut b = neg.apply(p2);
        assert!(points_apart_within(&mut a, &mut b, 32).unwrap().is_none());
        let (p1, p2) = two_schedules(&q);
        let mut a = id.apply(p1);
        let mut b = id.apply(p2);
        assert!(points_apart_within(&mut a, &mut b, 32).unwrap().is_none());
        // min/max over equivalent pair streams
        let (p1, p2) = two_schedules(&q);
        let other = random_rational(&mut rng);
        let mut a = min_map().apply(pair_point(p1, from_rational(&other)));
        let mut b = min_map().apply(pair_point(p2, from_rational(&other)));
        assert!(points_apart_within(&mut a, &mut b, 32).unwrap().is_none());
    }
}

#[test]
fn apartness_reflection_at_fuel() {
    // whenever images separate within fuel 32, the inputs separate within 64
    let mut rng = ChaCha8Rng::seed_from_u64(0xEC02);
    let neg = neg_map();
    for _ in 0..50 {
        let x = random_rational(&mut rng);
        let y = random_rational(&mut rng);
        let mut fx = neg.apply(from_rational(&x));
        let mut fy = neg.apply(from_rational(&y));
        if points_apart_within(&mut fx, &mut fy, 32).unwrap().is_some() {
            let mut px = from_rational(&x);
            let mut py = from_rational(&y);
            assert!(
                points_apart_within(&mut px, &mut py, 64).unwrap().is_some(),
                "images of ({x}, {y}) separate but inputs do not"
            );
        }
    }
}

#[test]
fn embedded_binary_points_match_canonical_dyadics() {
    let emb = embed_binary();
    let mut rng = ChaCha8Rng::seed_from_u64(0xEC03);
    for _ in 0..50 {
        let exp = rng.gen_range(0..10u32);
        let num = rng.gen_range(-(8i64 << exp)..(8i64 << exp));
        let q = ratio(num, 1i64 << exp);
        let mut image = emb.apply(nary_from_rational(2, &q));
        let mut canonical = from_rational(&q);
        assert!(
            points_apart_within(&mut image, &mut canonical, 32)
                .unwrap()
                .is_none(),
            "embedding of {q} separated from its canonical stream"
        );
    }
}

#[test]
fn cantor_is_weakly_order_preserving_on_values() {
    let stair = cantor_map();
    let mut rng = ChaCha8Rng::seed_from_u64(0xEC04);
    for _ in 0..50 {
        let a = ratio(rng.gen_range(0..200), 200);
        let b = ratio(rng.gen_range(0..200), 200);
        let (x, y) = if a <= b { (a, b) } else { (b, a) };
        let mut fx = stair.apply(nary_unit_from_rational(3, &x).unwrap());
        let mut fy = stair.apply(nary_unit_from_rational(3, &y).unwrap());
        // pull both to width 2^-12 and compare intervals: f(x) <= f(y) means
        // the x-image interval cannot sit strictly above the y-image one
        let mut dx = None;
        let mut dy = None;
        for k in 0..40usize {
            let cand = fx.dot(k).unwrap();
            if cand.endpoints().unwrap().1 - cand.endpoints().unwrap().0 <= pow2(-12) {
                dx = Some(cand);
                break;
            }
        }
        for k in 0..40usize {
            let cand = fy.dot(k).unwrap();
            if cand.endpoints().unwrap().1 - cand.endpoints().unwrap().0 <= pow2(-12) {
                dy = Some(cand);
                break;
            }
        }
        let (dx, dy) = (dx.unwrap(), dy.unwrap());
        let (xlo, _) = dx.endpoints().unwrap();
        let (_, yhi) = dy.endpoints().unwrap();
        assert!(
            xlo <= yhi,
            "image of {x} sits strictly above image of {y}: {dx} vs {dy}"
        );
    }
}

#[test]
fn cantor_plateau_points_map_to_three_quarters() {
    let stair = cantor_map();
    for k in 0..3i64 {
        let x = ratio(7, 9) + ratio(k, 27);
        let p = nary_unit_from_rational(3, &x).unwrap();
        let mut image = stair.apply(p);
        for idx in 0..24usize {
            let dot = image.dot(idx).unwrap();
            let (lo, hi) = dot.endpoints().unwrap();
            assert!(
                lo <= ratio(3, 4) && ratio(3, 4) <= hi,
                "plateau image of {x} misses 3/4 at {dot}"
            );
        }
    }
}

#[test]
fn add_images_of_equivalent_pairs_stay_equivalent() {
    let add = add_transducer();
    let mut rng = ChaCha8Rng::seed_from_u64(0xEC05);
    for _ in 0..20 {
        let x = random_rational(&mut rng);
        let y = random_rational(&mut rng);
        let mut via_canonical = add.drive(from_rational_pair(&x, &y));
        let (px, _) = two_schedules(&x);
        let py = from_rational_with_depths(&y, |k| 3 * k as u32 + 2);
        let mut via_skewed = add.drive(pair_point(px, py));
        assert!(points_apart_within(&mut via_canonical, &mut via_skewed, 24)
            .unwrap()
            .is_none());
    }
}

#[test]
fn maps_share_space_values() {
    // composing across mismatched space values is rejected
    assert!(compose(&cantor_map(), &cantor_map()).is_err());
    assert_eq!(SigmaR.name(), "sigma_R");
}
