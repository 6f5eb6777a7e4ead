//! Property tests for geometric and dynamical invariants.

mod common;

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ward_core::affine::{Letter, WardAction, Word};
use ward_core::flows::{cylinder_decomposition, Direction};
use ward_core::periodic::{arc_meets, rational_height_certificate, Certificate};
use ward_core::{build_ward, FieldContext, FieldElement};

fn actions() -> &'static Vec<WardAction> {
    static CELL: OnceLock<Vec<WardAction>> = OnceLock::new();
    CELL.get_or_init(|| (4..=7).map(|n| WardAction::new(Arc::new(build_ward(n).unwrap())).unwrap()).collect())
}

fn word_strategy() -> impl Strategy<Value = Word> {
    prop::collection::vec((0usize..2, any::<bool>()), 0..6)
        .prop_map(|v| Word(v.into_iter().map(|(generator, inverse)| Letter { generator, inverse }).collect()))
}

fn evenly(k: &FieldContext, w: &FieldElement, m: i64, offset: i64) -> Vec<FieldElement> {
    (0..m).map(|i| w * &k.frac(i * 101 + offset, m * 101)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evenly_distributed_sets_meet_long_arcs(
        n_arcs in 1i64..9,
        extra in 0i64..4,
        offset in 0i64..101,
        start in 0i64..1000,
        slack in 0i64..50,
    ) {
        let k = FieldContext::new(5).unwrap();
        let w = &k.int(1) + &k.cos(1, 5).unwrap();
        let m = n_arcs + extra;
        let pts = evenly(&k, &w, m, offset);
        let start = &w * &k.frac(start, 1000);
        // strictly longer than w/N unless there are more than N points
        let len = &w * &k.frac(100 + slack + i64::from(extra == 0), 100 * n_arcs);
        prop_assert!(arc_meets(&pts, &w, &start, &len));
    }

    #[test]
    fn twist_orbits_meet_long_leaf_arcs(
        idx in 0usize..4,
        cyl in 0usize..8,
        den in 2i64..9,
        x0 in 0i64..97,
        start in 0i64..1000,
    ) {
        let a = &actions()[idx];
        let (s, d) = (a.surface(), a.horizontal());
        let k = s.context();
        let c = &d.cylinders()[cyl % d.cylinders().len()];
        let h = &c.height * &k.frac(1, den);
        let mut p = d.point_at(s, c.id, &(&c.width * &k.frac(x0, 97)), &h).unwrap();
        let mut xs = Vec::new();
        for _ in 0..den {
            let cc = d.coords_all(s, &p).unwrap();
            xs.push(cc.into_iter().find(|q| q.cylinder == c.id && q.h == h).unwrap().x);
            p = a.phi().apply(&p).unwrap();
        }
        let start = &c.width * &k.frac(start, 1000);
        let len = &c.width * &k.frac(1001, 1000 * den);
        prop_assert!(arc_meets(&xs, &c.width, &start, &len));
    }

    #[test]
    fn words_invert(idx in 0usize..4, w in word_strategy(), seed in any::<u64>()) {
        let a = &actions()[idx];
        let p = common::random_interior_point(a.surface(), &mut ChaCha8Rng::seed_from_u64(seed));
        let q = a.apply_word(&w, &p).unwrap();
        prop_assert_eq!(a.apply_word(&w.inverse(), &q).unwrap(), p);
    }

    #[test]
    fn words_round_trip_through_text(w in word_strategy()) {
        prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w.clone());
        prop_assert_eq!(w.to_ascii().parse::<Word>().unwrap(), w);
    }

    #[test]
    fn twist_preserves_rational_heights(idx in 0usize..4, seed in any::<u64>()) {
        // φ maps each horizontal cylinder to itself, preserving heights
        let a = &actions()[idx];
        let p = common::random_interior_point(a.surface(), &mut ChaCha8Rng::seed_from_u64(seed));
        let d = a.horizontal();
        let phi = Word(vec![Letter { generator: 0, inverse: false }]);
        let before = rational_height_certificate(a.surface(), &p, &[d]).unwrap() == Certificate::Pass;
        let q = a.apply_word(&phi, &p).unwrap();
        let after = rational_height_certificate(a.surface(), &q, &[d]).unwrap() == Certificate::Pass;
        prop_assert_eq!(before, after);
    }

    #[test]
    fn locate_is_canonical(idx in 0usize..4, seed in any::<u64>()) {
        let s = actions()[idx].surface();
        let p = common::random_interior_point(s, &mut ChaCha8Rng::seed_from_u64(seed));
        for (poly, pos) in s.representatives(&p) {
            prop_assert_eq!(s.locate(poly, &pos).unwrap(), p.clone());
        }
    }

    #[test]
    fn decomposition_area_is_surface_area(n in 3u32..9, k in 0i64..4) {
        let s = build_ward(n).unwrap();
        let ctx = s.context();
        let d = cylinder_decomposition(&s, &Direction::at_angle(ctx, k, n as i64).unwrap()).unwrap();
        prop_assert_eq!(d.total_area(), s.area());
    }
}

#[test]
fn evenly_distributed_boundary_case() {
    // N points and an arc of length exactly w/N with endpoints on the set:
    // the open arc misses every point
    let k = FieldContext::new(4).unwrap();
    let w = k.int(3);
    let pts = evenly(&k, &w, 3, 0);
    assert!(!arc_meets(&pts, &w, &k.zero(), &k.one()));
    assert!(arc_meets(&pts, &w, &k.zero(), &k.frac(101, 100)));
}
