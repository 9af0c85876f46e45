use proptest::prelude::*;

use fuchsia::{Boundary, MapClass, Moebius, UhPoint};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

/// Unimodular matrices with moderate entries: `d = (1 + bc) / a`.
fn moebius() -> impl Strategy<Value = Moebius> {
    (0.2..4.0f64, any::<bool>(), -4.0..4.0f64, -4.0..4.0f64).prop_map(|(a, neg, b, c)| {
        let a = if neg { -a } else { a };
        Moebius::normalize(a, b, c, (1.0 + b * c) / a).unwrap()
    })
}

fn point() -> impl Strategy<Value = UhPoint> {
    (-5.0..5.0f64, 0.05..5.0f64).prop_map(|(x, y)| UhPoint::new(x, y).unwrap())
}

proptest! {
    #[test]
    fn action_is_a_homomorphism(g in moebius(), h in moebius(), z in point()) {
        let lhs = (g * h).apply_interior(z);
        let rhs = g.apply_interior(h.apply_interior(z));
        prop_assert!(close(lhs.x(), rhs.x(), 1e-8) && close(lhs.y(), rhs.y(), 1e-8), "{lhs:?} vs {rhs:?}");
    }

    #[test]
    fn determinant_stays_one(g in moebius(), h in moebius()) {
        prop_assert!((g.det() - 1.0).abs() < 1e-12);
        let gh = g * h;
        prop_assert!(close(gh.det(), 1.0, 1e-10), "det {}", gh.det());
    }

    #[test]
    fn normalize_forgets_scale_and_sign(g in moebius(), k in 0.1..10.0f64, flip in any::<bool>()) {
        let k = if flip { -k } else { k };
        let [a, b, c, d] = g.entries();
        let h = Moebius::normalize(k * a, k * b, k * c, k * d).unwrap();
        prop_assert!(h.approx_eq(&g, 1e-12));
        prop_assert!((h.det() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn inverse_composes_to_identity(g in moebius()) {
        prop_assert!((g * g.inverse()).is_identity(1e-9));
        prop_assert_eq!(g.inverse().inverse(), g);
    }

    #[test]
    fn trace_and_class_are_conjugation_invariant(g in moebius(), h in moebius()) {
        let conj = h * g * h.inverse();
        prop_assert!(close(conj.trace().abs(), g.trace().abs(), 1e-8));
        // Traces sitting on the tolerance boundary may flip; skip those.
        if (g.trace().abs() - 2.0).abs() > 1e-6 {
            prop_assert_eq!(conj.classify(), g.classify());
        }
    }

    #[test]
    fn boundary_fixed_points_are_fixed(g in moebius()) {
        prop_assume!(g.classify() == MapClass::Hyperbolic);
        let fixed = g.boundary_fixed_points();
        prop_assert_eq!(fixed.len(), 2);
        for p in fixed {
            let image = g.apply_boundary(p);
            prop_assert!(image.approx_eq(p, 1e-7), "{p:?} -> {image:?}");
        }
    }

    #[test]
    fn boundary_action_matches_limit_of_interior(g in moebius(), x in -5.0..5.0f64) {
        let den = g.c() * x + g.d();
        prop_assume!(den.abs() > 1e-3);
        let Boundary::Finite(image) = g.apply_boundary(Boundary::Finite(x)) else {
            return Err(TestCaseError::fail("finite point sent to infinity"));
        };
        let z = g.apply_interior(UhPoint::new(x, 1e-9).unwrap());
        prop_assert!(close(z.x(), image, 1e-6), "{} vs {image}", z.x());
    }
}
