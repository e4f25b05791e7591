mod common;

use common::{hausdorff, hull, steiner, support, P2};
use proptest::prelude::*;
use svsplit::body::{geometric_difference, hausdorff_distance, minkowski_sum};
use svsplit::selection::steiner_point;
use svsplit::{vector, ConvexBody};

fn polygon() -> impl Strategy<Value = Vec<P2>> {
    prop::collection::vec([-5.0..5.0f64, -5.0..5.0f64], 3..10)
        .prop_map(|pts| hull(&pts))
        .prop_filter("full-dimensional", |h| h.len() >= 3)
}

fn body(poly: &[P2]) -> ConvexBody {
    ConvexBody::polytope(poly.iter().map(|p| vector(p)).collect()).unwrap()
}

fn direction() -> impl Strategy<Value = P2> {
    (0.0..std::f64::consts::TAU).prop_map(|t| [t.cos(), t.sin()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn support_matches_the_vertex_maximum(a in polygon(), u in direction()) {
        let h = body(&a).support_value(&vector(&u)).unwrap();
        prop_assert!((h - support(&a, u)).abs() <= 1e-12 * (1.0 + h.abs()));
    }

    #[test]
    fn minkowski_support_is_additive(a in polygon(), b in polygon(), u in direction()) {
        let s = minkowski_sum(&body(&a), &body(&b)).unwrap();
        let h = s.support_value(&vector(&u)).unwrap();
        prop_assert!((h - support(&a, u) - support(&b, u)).abs() <= 1e-9);
    }

    #[test]
    fn hausdorff_agrees_with_vertex_oracle(a in polygon(), b in polygon()) {
        let est = hausdorff_distance(&body(&a), &body(&b)).unwrap();
        let exact = hausdorff(&a, &b);
        prop_assert!(est.value <= exact + 1e-9 && exact <= est.value + est.gap + 1e-6,
            "estimate {} (gap {}) vs {}", est.value, est.gap, exact);
    }

    #[test]
    fn exact_steiner_is_translation_equivariant(a in polygon(), v in [-3.0..3.0f64, -3.0..3.0f64]) {
        let s = steiner_point(&body(&a), 0, 0).unwrap().point;
        let moved: Vec<P2> = a.iter().map(|p| [p[0] + v[0], p[1] + v[1]]).collect();
        let t = steiner_point(&body(&moved), 0, 0).unwrap().point;
        let o = steiner(&a);
        prop_assert!((s[0] - o[0]).abs() < 1e-9 && (s[1] - o[1]).abs() < 1e-9);
        prop_assert!((t[0] - s[0] - v[0]).abs() < 1e-9 && (t[1] - s[1] - v[1]).abs() < 1e-9);
    }

    #[test]
    fn difference_plus_subtrahend_stays_inside(a in polygon(), b in polygon(), u in direction()) {
        let scaled: Vec<P2> = b.iter().map(|p| [0.2 * p[0], 0.2 * p[1]]).collect();
        if let Some(d) = geometric_difference(&body(&a), &body(&scaled)).unwrap() {
            let h = d.support_value(&vector(&u)).unwrap() + support(&scaled, u);
            prop_assert!(h <= support(&a, u) + 1e-8);
        }
    }
}
