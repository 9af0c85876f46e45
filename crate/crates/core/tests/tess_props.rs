use proptest::prelude::*;

use fuchsia::check::sample_region;
use fuchsia::exec::Execution;
use fuchsia::flute::{build_flute, SequenceSpec};
use fuchsia::render::Viewport;
use fuchsia::tess::{enumerate_orbit_with, fixed_points_of_tiles, GroupPresentation, OrbitConfig};
use fuchsia::Boundary;

fn flute() -> impl Strategy<Value = (Vec<f64>, GroupPresentation)> {
    prop::collection::vec(0.1..5.0f64, 1..4).prop_map(|x| {
        let g = build_flute(&SequenceSpec::finite(x.clone()).unwrap(), x.len()).unwrap();
        (x, GroupPresentation::from_flute(&g))
    })
}

/// Freely reduced words of length at most `depth` over `k` generators.
fn reduced_words(k: usize, depth: usize) -> usize {
    (1..=depth).fold(1, |acc, j| acc + 2 * k * (2 * k - 1).pow(j as u32 - 1))
}

fn config(exec: Execution) -> OrbitConfig {
    OrbitConfig {
        exec,
        ..OrbitConfig::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tile_count_and_recomposition((x, pres) in flute(), depth in 0usize..4) {
        let orbit = enumerate_orbit_with(&pres, depth, &config(Execution::default())).unwrap();
        prop_assert!(orbit.collisions.is_empty());
        prop_assert_eq!(orbit.tiles.len(), reduced_words(x.len(), depth));
        for t in &orbit.tiles {
            prop_assert!(pres.word_map(&t.word).approx_eq(&t.map, 1e-9));
        }
    }

    /// No non-identity tile brings a domain point back into the domain.
    #[test]
    fn tiles_are_locally_disjoint((_x, pres) in flute()) {
        let orbit = enumerate_orbit_with(&pres, 2, &config(Execution::default())).unwrap();
        let vp = Viewport::fit(pres.boundary_arcs());
        for z in sample_region(pres.domain(), vp.x_min, vp.x_max, vp.y_max, 100) {
            for t in orbit.tiles.iter().filter(|t| !t.word.is_empty()) {
                prop_assert!(!pres.domain().contains(t.map.apply_interior(z)));
            }
        }
    }

    #[test]
    fn limit_points_are_fixed_and_bounded((x, pres) in flute(), depth in 1usize..4) {
        let cfg = config(Execution::default());
        let orbit = enumerate_orbit_with(&pres, depth, &cfg).unwrap();
        let total: f64 = x.iter().sum();
        let points = fixed_points_of_tiles(&orbit.tiles, &cfg);
        prop_assert!(!points.is_empty());
        for p in points {
            let Boundary::Finite(v) = p else {
                return Err(TestCaseError::fail("limit point at infinity"));
            };
            prop_assert!(v.abs() <= total * (1.0 + 1e-9), "{v} outside [-{total}, {total}]");
            let fixed_by_some = orbit.tiles.iter().filter(|t| !t.word.is_empty()).any(|t| {
                t.map.apply_boundary(p).approx_eq(p, 1e-6)
            });
            prop_assert!(fixed_by_some);
        }
    }

    #[test]
    fn sequential_matches_parallel((_x, pres) in flute(), depth in 0usize..4) {
        let a = enumerate_orbit_with(&pres, depth, &config(Execution::Sequential)).unwrap();
        let b = enumerate_orbit_with(&pres, depth, &config(Execution::Parallel)).unwrap();
        prop_assert_eq!(a, b);
    }
}
