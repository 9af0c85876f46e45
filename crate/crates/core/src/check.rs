//! Invariant suite run by the `check` command.
//!
//! Each check evaluates one structural property of a built group and records
//! the worst residual it saw. Sample points come from a Halton sequence, so a
//! run is reproducible without any random state.

use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::flute::{self, FluteGroup, SequenceSpec};
use crate::geodesic::{first_overlap, HalfCircle, Region};
use crate::moebius::{Boundary, MapClass, Moebius, UhPoint};
use crate::monster::{self, MonsterGroup, MonsterSpec};
use crate::tess::{self, GroupPresentation, OrbitConfig};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }

    fn residual(name: &str, worst: f64, limit: f64) -> Self {
        Self::new(
            name,
            worst <= limit,
            format!("worst residual {worst:.3e} (limit {limit:.0e})"),
        )
    }
}

#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub tol: f64,
    pub samples: usize,
    /// Word length for the region side-pairing check.
    pub depth: usize,
    pub exec: Execution,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            tol: tol::GEOMETRY,
            samples: 500,
            depth: 2,
            exec: Execution::default(),
        }
    }
}

pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}

fn radical_inverse(mut i: usize, base: usize) -> f64 {
    let b = base as f64;
    let mut f = 1.0 / b;
    let mut out = 0.0;
    while i > 0 {
        out += f * (i % base) as f64;
        i /= base;
        f /= b;
    }
    out
}

/// Up to `n` points of `region` inside `[x_min, x_max] × (0, y_max)`, drawn
/// from a Halton sequence.
pub fn sample_region(
    region: &Region,
    x_min: f64,
    x_max: f64,
    y_max: f64,
    n: usize,
) -> Vec<UhPoint> {
    let mut out = Vec::with_capacity(n);
    let mut i = 1;
    while out.len() < n && i < 200 * n + 1000 {
        let x = x_min + (x_max - x_min) * radical_inverse(i, 2);
        let y = y_max * radical_inverse(i, 3);
        i += 1;
        if let Ok(p) = UhPoint::new(x, y) {
            if region.contains(p) {
                out.push(p);
            }
        }
    }
    out
}

/// Counts sample/element pairs where a non-identity element keeps a point of
/// the open region inside it.
pub fn region_violations(
    pres: &GroupPresentation,
    points: &[UhPoint],
    depth: usize,
    exec: Execution,
) -> Result<usize, tess::TessError> {
    let config = OrbitConfig {
        exec,
        ..OrbitConfig::default()
    };
    let orbit = tess::enumerate_orbit_with(pres, depth, &config)?;
    let maps: Vec<Moebius> = orbit
        .tiles
        .iter()
        .filter(|t| !t.word.is_empty())
        .map(|t| t.map)
        .collect();
    let counts = exec.map(points, |p| {
        maps.iter()
            .filter(|m| pres.domain().contains(m.apply_interior(*p)))
            .count()
    });
    Ok(counts.into_iter().sum())
}

fn span(circles: &[HalfCircle]) -> (f64, f64, f64) {
    let lo = circles
        .iter()
        .map(|c| c.left())
        .fold(f64::INFINITY, f64::min);
    let hi = circles
        .iter()
        .map(|c| c.right())
        .fold(f64::NEG_INFINITY, f64::max);
    let pad = 0.25 * (hi - lo);
    (lo - pad, hi + pad, 0.75 * (hi - lo))
}

fn boundary_residual(m: &Moebius, from: f64, to: f64) -> f64 {
    match m.apply_boundary(Boundary::Finite(from)) {
        Boundary::Finite(v) => (v - to).abs() / 1f64.max(to.abs()),
        Boundary::Infinity => f64::INFINITY,
    }
}

fn det_residual(m: &Moebius) -> f64 {
    let [a, b, c, d] = m.entries();
    (m.det() - 1.0).abs() / 1f64.max((a * d).abs()).max((b * c).abs())
}

fn region_check(
    name: &str,
    pres: &GroupPresentation,
    circles: &[HalfCircle],
    opts: &CheckOptions,
) -> CheckResult {
    let (x_min, x_max, y_max) = span(circles);
    let points = sample_region(pres.domain(), x_min, x_max, y_max, opts.samples);
    match region_violations(pres, &points, opts.depth, opts.exec) {
        Ok(bad) => CheckResult::new(
            name,
            bad == 0 && !points.is_empty(),
            format!(
                "{} sample points, words up to length {}, {bad} violations",
                points.len(),
                opts.depth
            ),
        ),
        Err(e) => CheckResult::new(name, false, e.to_string()),
    }
}

pub fn check_flute(
    spec: &SequenceSpec,
    group: &FluteGroup,
    opts: &CheckOptions,
) -> Vec<CheckResult> {
    let s = group.partial_sums();
    let gens = group.generators();
    let tol = opts.tol;
    let mut out = Vec::new();

    let bad_class: Vec<usize> = gens
        .iter()
        .enumerate()
        .filter(|(n, g)| g.classify_with(tol) != flute::expected_class(*n))
        .map(|(n, _)| n)
        .collect();
    out.push(CheckResult::new(
        "generator classes",
        bad_class.is_empty(),
        format!("g0 parabolic, g_n hyperbolic for n >= 1; mismatches at {bad_class:?}"),
    ));

    let worst_det = gens.iter().map(det_residual).fold(0.0, f64::max);
    out.push(CheckResult::residual(
        "unit determinant",
        worst_det,
        tol::NORMALIZATION,
    ));

    let mut worst_pair: f64 = 0.0;
    for (n, g) in gens.iter().enumerate() {
        let prev = if n == 0 { 0.0 } else { s[n - 1] };
        worst_pair = worst_pair
            .max(boundary_residual(g, prev, -prev))
            .max(boundary_residual(g, s[n], -s[n]));
    }
    out.push(CheckResult::residual(
        "side pairing s ↦ -s",
        worst_pair,
        tol,
    ));

    let worst_trace = (1..gens.len())
        .map(|n| {
            let expected = 2.0 * (s[n] + s[n - 1]) / (s[n] - s[n - 1]);
            (gens[n].trace() - expected).abs() / 1f64.max(expected.abs())
        })
        .chain(gens.first().map(|g| (g.trace() - 2.0).abs()))
        .fold(0.0, f64::max);
    out.push(CheckResult::residual("trace formula", worst_trace, tol));

    let mut worst_len: f64 = 0.0;
    let mut worst_bas: f64 = 0.0;
    for n in 1..gens.len() {
        let l = flute::length_param(n, s).expect("valid index");
        match gens[n].translation_length_with(tol) {
            Ok(t) => worst_len = worst_len.max((l - t).abs() / 1f64.max(l)),
            Err(_) => worst_len = f64::INFINITY,
        }
        let x = s[n] - s[n - 1];
        let closed = x / (s[n - 1].sqrt() + s[n].sqrt()).powi(2);
        let term = flute::basmajian_term(n, s).expect("valid index");
        worst_bas = worst_bas.max((term - closed).abs());
    }
    out.push(CheckResult::residual(
        "length = translation length",
        worst_len,
        tol,
    ));
    out.push(CheckResult::residual(
        "series term closed form",
        worst_bas,
        1e-12,
    ));

    let mirror_ok =
        group
            .sides()
            .iter()
            .all(|(p, m)| match (p.as_half_circle(), m.as_half_circle()) {
                (Some(p), Some(m)) => {
                    (p.center + m.center).abs() <= tol && (p.radius - m.radius).abs() <= tol
                }
                _ => false,
            });
    out.push(CheckResult::new(
        "mirror symmetry",
        mirror_ok,
        "γ_n^- is the reflection of γ_n^+",
    ));

    let circles: Vec<HalfCircle> = group
        .sides()
        .iter()
        .flat_map(|(p, m)| [p, m])
        .filter_map(|g| g.as_half_circle().copied())
        .collect();
    let overlap = first_overlap(&circles);
    out.push(CheckResult::new(
        "sides mutually exterior",
        overlap.is_none(),
        match overlap {
            None => "no overlapping sides".to_string(),
            Some((i, j)) => format!("sides {i} and {j} overlap"),
        },
    ));

    if let Ok(Some(core)) = flute::convex_core_boundary(spec) {
        let inside = circles
            .iter()
            .all(|c| c.left() >= -core.radius - tol && c.right() <= core.radius + tol);
        out.push(CheckResult::new(
            "sides inside convex core boundary",
            inside,
            format!("core radius {}", core.radius),
        ));
    }

    let pres = GroupPresentation::from_flute(group);
    out.push(region_check(
        "fundamental region side pairing",
        &pres,
        &circles,
        opts,
    ));
    out.push(recomposition_check(&pres, opts));
    out
}

pub fn check_monster(spec: &MonsterSpec, opts: &CheckOptions) -> Vec<CheckResult> {
    let report = monster::validate_windows(spec);
    let mut out = vec![CheckResult::new(
        "window ordering",
        report.is_valid(),
        report
            .violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; "),
    )];
    let Ok(group) = monster::build_monster_with(spec, opts.exec) else {
        return out;
    };
    out.extend(check_monster_group(&group, opts));
    out
}

fn check_monster_group(group: &MonsterGroup, opts: &CheckOptions) -> Vec<CheckResult> {
    let tol = opts.tol;
    let mut out = Vec::new();
    let mut worst_pair: f64 = 0.0;
    let mut hyperbolic = true;
    let mut worst_fixed: f64 = 0.0;
    for p in &group.pairs {
        for (m, src, dst) in [(p.f, p.sigma, p.sigma_tilde), (p.g, p.rho, p.rho_tilde)] {
            worst_pair = worst_pair
                .max(boundary_residual(&m, src.left(), dst.right()))
                .max(boundary_residual(&m, src.right(), dst.left()));
            hyperbolic &= m.classify_with(tol) == MapClass::Hyperbolic;
            let fps = m.boundary_fixed_points();
            if fps.len() != 2 {
                worst_fixed = f64::INFINITY;
            }
            for z in fps.iter().filter_map(|b| b.finite()) {
                // z^2 - (O + Õ) z + (O Õ + r r̃) = 0
                let (o, r, o2, r2) = (src.center, src.radius, dst.center, dst.radius);
                let scale = 1f64.max(z * z).max((o * o2).abs()).max(r * r2);
                let res = z * z - (o + o2) * z + (o * o2 + r * r2);
                worst_fixed = worst_fixed.max(res.abs() / scale);
            }
        }
    }
    out.push(CheckResult::residual("pairing endpoints", worst_pair, tol));
    out.push(CheckResult::new(
        "generators hyperbolic",
        hyperbolic,
        "every f_n and g_n has |trace| > 2",
    ));
    out.push(CheckResult::residual(
        "fixed-point quadratic",
        worst_fixed,
        tol,
    ));

    let circles = group.circles();
    let overlap = first_overlap(&circles);
    out.push(CheckResult::new(
        "circles mutually exterior",
        overlap.is_none(),
        match overlap {
            None => "no overlapping circles".to_string(),
            Some((i, j)) => format!("circles {i} and {j} overlap"),
        },
    ));
    let pres = GroupPresentation::from_monster(group);
    out.push(region_check(
        "fundamental region side pairing",
        &pres,
        &circles,
        opts,
    ));
    out.push(recomposition_check(&pres, opts));
    out
}

fn recomposition_check(pres: &GroupPresentation, opts: &CheckOptions) -> CheckResult {
    let config = OrbitConfig {
        exec: opts.exec,
        tol: opts.tol,
        ..OrbitConfig::default()
    };
    match tess::enumerate_orbit_with(pres, opts.depth, &config) {
        Ok(orbit) => {
            let bad = orbit
                .tiles
                .iter()
                .filter(|t| !pres.word_map(&t.word).approx_eq(&t.map, opts.tol))
                .count();
            CheckResult::new(
                "tile recomposition",
                bad == 0,
                format!(
                    "{} tiles, {bad} mismatches, {} collisions",
                    orbit.tiles.len(),
                    orbit.collisions.len()
                ),
            )
        }
        Err(e) => CheckResult::new("tile recomposition", false, e.to_string()),
    }
}
