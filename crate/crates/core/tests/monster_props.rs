use proptest::prelude::*;

use fuchsia::check::sample_region;
use fuchsia::monster::{build_monster, validate_windows, Violation};
use fuchsia::{Boundary, MapClass, Moebius, MonsterSpec, MonsterWindow, TailFlags};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

fn window() -> impl Strategy<Value = MonsterWindow> {
    (-50.0..50.0f64, prop::array::uniform4(0.01..10.0f64)).prop_map(|(a, gaps)| {
        let b = a + gaps[0];
        let c = b + gaps[1];
        let d = c + gaps[2];
        MonsterWindow::new(a, b, c, d, d + gaps[3])
    })
}

fn single(w: MonsterWindow) -> MonsterSpec {
    MonsterSpec::new(vec![w], 0, TailFlags::default())
}

fn image(m: &Moebius, x: f64) -> f64 {
    match m.apply_boundary(Boundary::Finite(x)) {
        Boundary::Finite(v) => v,
        Boundary::Infinity => f64::INFINITY,
    }
}

fn fixed(m: &Moebius) -> Vec<f64> {
    m.boundary_fixed_points()
        .into_iter()
        .filter_map(|b| b.finite())
        .collect()
}

proptest! {
    #[test]
    fn pairings_send_endpoints(w in window()) {
        let g = build_monster(&single(w)).unwrap();
        let p = &g.pairs[0];
        for (m, from, to) in [(&p.f, w.a, w.d), (&p.f, w.b, w.c), (&p.g, w.b, w.e), (&p.g, w.c, w.d)] {
            prop_assert!(close(image(m, from), to, 1e-9), "{from} -> {} want {to}", image(m, from));
        }
        prop_assert_eq!(p.f.classify(), MapClass::Hyperbolic);
        prop_assert_eq!(p.g.classify(), MapClass::Hyperbolic);
    }

    /// Repelling fixed point under the source side, attracting one under the target.
    #[test]
    fn fixed_points_sit_under_the_paired_sides(w in window()) {
        let g = build_monster(&single(w)).unwrap();
        let p = &g.pairs[0];
        for (m, src, dst) in [(&p.f, (w.a, w.b), (w.c, w.d)), (&p.g, (w.b, w.c), (w.d, w.e))] {
            let mut pts = fixed(m);
            pts.sort_by(f64::total_cmp);
            prop_assert_eq!(pts.len(), 2);
            prop_assert!(pts[0] > src.0 && pts[0] < src.1, "{pts:?} vs {src:?}");
            prop_assert!(pts[1] > dst.0 && pts[1] < dst.1, "{pts:?} vs {dst:?}");
        }
    }

    #[test]
    fn generators_move_the_region_off_itself(w in window()) {
        let g = build_monster(&single(w)).unwrap();
        let p = &g.pairs[0];
        let span = w.e - w.a;
        let points = sample_region(&g.region, w.a - span, w.e + span, span, 64);
        for z in points {
            for m in [p.f, p.f.inverse(), p.g, p.g.inverse()] {
                prop_assert!(!g.region.contains(m.apply_interior(z)));
            }
        }
    }

    #[test]
    fn swapped_endpoints_are_named(w in window(), k in 0usize..4) {
        let mut v = [w.a, w.b, w.c, w.d, w.e];
        v.swap(k, k + 1);
        let report = validate_windows(&single(MonsterWindow::from(v)));
        let names = ["a", "b", "c", "d", "e"];
        let named = report.violations.iter().any(|x| matches!(
            x,
            Violation::NotIncreasing { left, right, .. } if *left == names[k] && *right == names[k + 1]
        ));
        prop_assert!(named, "{:?}", report.violations);
    }
}
