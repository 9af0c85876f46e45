//! Zero-twist tight flute groups `Γ_x` built from a positive sequence `x`.
//!
//! With partial sums `s_n = x_0 + … + x_n` and `s_{-1} = 0`, the generator
//! `g_n` pairs the half-circle `γ_n^+` over `[s_{n-1}, s_n]` with its mirror
//! image `γ_n^-` over `[-s_n, -s_{n-1}]`. `g_0` is parabolic, every other
//! generator is hyperbolic, and the common exterior of all the sides is a
//! fundamental domain. The group is of the first kind (and the surface of
//! parabolic type) exactly when `∑ x_n` diverges.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Execution;
use crate::geodesic::{Geodesic, HalfCircle, Region, Side};
use crate::moebius::{MapClass, Moebius};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FluteError {
    #[error("sequence term {index} is {value}; every term must be a positive finite number")]
    NonPositiveTerm { index: usize, value: f64 },
    #[error("tail parameter `{name}` is {value}; it must be positive and finite")]
    InvalidTail { name: &'static str, value: f64 },
    #[error("{requested} terms requested but only {available} are determined by the sequence")]
    InsufficientData { requested: usize, available: usize },
    #[error("at least one term is required")]
    Empty,
    #[error("index {index} out of range for {len} partial sums")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("length parameters start at n = 1")]
    ZeroIndex,
    #[error("partial sums must be positive and strictly increasing (failed at index {0})")]
    NotIncreasing(usize),
    #[error("the type of the group is not decided by the sequence description")]
    UnknownType,
    #[error("the series converges but its sum has no closed form for this tail")]
    UnknownLimit,
}

/// How the sequence continues after its explicit prefix.
///
/// Term `k` of the tail (counting from zero right after the prefix) is
/// `c`, `first * ratio^k` or `scale / (k + 1)` respectively.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Tail {
    None,
    Constant {
        c: f64,
    },
    Geometric {
        first: f64,
        ratio: f64,
    },
    Harmonic {
        scale: f64,
    },
    /// Terms are not generated; only the convergence behavior is declared.
    Custom {
        #[serde(default)]
        divergent: Option<bool>,
    },
}

impl Tail {
    fn term(&self, k: usize) -> Option<f64> {
        match *self {
            Tail::Constant { c } => Some(c),
            Tail::Geometric { first, ratio } => Some(first * ratio.powi(k as i32)),
            Tail::Harmonic { scale } => Some(scale / (k as f64 + 1.0)),
            Tail::None | Tail::Custom { .. } => None,
        }
    }

    /// Whether `∑` over the tail diverges, when the tail law decides it.
    pub fn diverges(&self) -> Option<bool> {
        match *self {
            Tail::None => None,
            Tail::Constant { .. } | Tail::Harmonic { .. } => Some(true),
            Tail::Geometric { ratio, .. } => Some(ratio >= 1.0),
            Tail::Custom { divergent } => divergent,
        }
    }

    /// Closed-form sum of a convergent tail.
    fn sum(&self) -> Option<f64> {
        match *self {
            Tail::Geometric { first, ratio } if ratio < 1.0 => Some(first / (1.0 - ratio)),
            _ => None,
        }
    }
}

/// A positive sequence: explicit prefix plus a tail law.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceSpec {
    pub prefix: Vec<f64>,
    pub tail: Tail,
}

impl SequenceSpec {
    pub fn new(prefix: Vec<f64>, tail: Tail) -> Result<Self, FluteError> {
        let spec = SequenceSpec { prefix, tail };
        spec.validate()?;
        Ok(spec)
    }

    /// Finite sequence without a tail law.
    pub fn finite(prefix: Vec<f64>) -> Result<Self, FluteError> {
        Self::new(prefix, Tail::None)
    }

    pub fn validate(&self) -> Result<(), FluteError> {
        for (index, &value) in self.prefix.iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(FluteError::NonPositiveTerm { index, value });
            }
        }
        let params: &[(&'static str, f64)] = match &self.tail {
            Tail::Constant { c } => &[("c", *c)],
            Tail::Geometric { first, ratio } => &[("first", *first), ("ratio", *ratio)],
            Tail::Harmonic { scale } => &[("scale", *scale)],
            Tail::None | Tail::Custom { .. } => &[],
        };
        for &(name, value) in params {
            if !(value.is_finite() && value > 0.0) {
                return Err(FluteError::InvalidTail { name, value });
            }
        }
        Ok(())
    }

    /// Number of terms the description determines (`None` when unbounded).
    pub fn available_terms(&self) -> Option<usize> {
        match self.tail {
            Tail::None | Tail::Custom { .. } => Some(self.prefix.len()),
            _ => None,
        }
    }

    /// The first `n` terms `x_0 .. x_{n-1}`.
    pub fn terms(&self, n: usize) -> Result<Vec<f64>, FluteError> {
        self.validate()?;
        if n == 0 {
            return Err(FluteError::Empty);
        }
        if let Some(available) = self.available_terms() {
            if n > available {
                return Err(FluteError::InsufficientData {
                    requested: n,
                    available,
                });
            }
        }
        let p = self.prefix.len();
        let terms: Vec<f64> = (0..n)
            .map(|i| {
                if i < p {
                    self.prefix[i]
                } else {
                    self.tail.term(i - p).expect("tail law generates terms")
                }
            })
            .collect();
        // Geometric tails underflow eventually.
        if let Some(index) = terms.iter().position(|x| !(*x > 0.0)) {
            return Err(FluteError::NonPositiveTerm {
                index,
                value: terms[index],
            });
        }
        Ok(terms)
    }
}

/// `s_0 .. s_{n-1}` for the sequence.
pub fn partial_sums(spec: &SequenceSpec, n_terms: usize) -> Result<Vec<f64>, FluteError> {
    let terms = spec.terms(n_terms)?;
    let sums: Vec<f64> = terms
        .iter()
        .scan(0.0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    check_increasing(&sums)?;
    Ok(sums)
}

fn check_increasing(s: &[f64]) -> Result<(), FluteError> {
    let mut prev = 0.0;
    for (i, &v) in s.iter().enumerate() {
        if !(v > prev && v.is_finite()) {
            return Err(FluteError::NotIncreasing(i));
        }
        prev = v;
    }
    Ok(())
}

/// `(s_{n-1}, s_n)` with the convention `s_{-1} = 0`.
fn sum_pair(n: usize, s: &[f64]) -> Result<(f64, f64), FluteError> {
    if n >= s.len() {
        return Err(FluteError::IndexOutOfRange {
            index: n,
            len: s.len(),
        });
    }
    let prev = if n == 0 { 0.0 } else { s[n - 1] };
    if !(s[n] > prev) {
        return Err(FluteError::NotIncreasing(n));
    }
    Ok((prev, s[n]))
}

/// The generator `g_n`, sending `γ_n^+` onto `γ_n^-` with
/// `s_{n-1} ↦ -s_{n-1}` and `s_n ↦ -s_n`.
pub fn flute_generator(n: usize, s: &[f64]) -> Result<Moebius, FluteError> {
    let (prev, cur) = sum_pair(n, s)?;
    let x = cur - prev;
    let u = prev / x;
    let diag = 1.0 + 2.0 * u;
    let upper = -2.0 * prev * (1.0 + u);
    let lower = -2.0 / x;
    // Symbolically unimodular: diag^2 - upper*lower = (1+2u)^2 - 4u(1+u) = 1.
    Moebius::normalize(diag, upper, lower, diag).map_err(|_| FluteError::NotIncreasing(n))
}

/// Fenchel–Nielsen length `l_n` of the glued curve, `n >= 1`:
/// `ln((s_{n-1} + s_n + 2√(s_{n-1}s_n)) / (s_{n-1} + s_n - 2√(s_{n-1}s_n)))`.
pub fn length_param(n: usize, s: &[f64]) -> Result<f64, FluteError> {
    if n == 0 {
        return Err(FluteError::ZeroIndex);
    }
    let (prev, cur) = sum_pair(n, s)?;
    // numerator = (√s_{n-1} + √s_n)^2; denominator = (√s_n - √s_{n-1})^2,
    // rewritten as (x_n / (√s_{n-1} + √s_n))^2 to avoid cancellation.
    let root_sum = prev.sqrt() + cur.sqrt();
    let numerator = root_sum * root_sum;
    let denominator = ((cur - prev) / root_sum).powi(2);
    Ok((numerator / denominator).ln())
}

/// `e^{-l_n / 2}`, the summand of the parabolicity series in length form.
pub fn basmajian_term(n: usize, s: &[f64]) -> Result<f64, FluteError> {
    Ok((-0.5 * length_param(n, s)?).exp())
}

/// Type of `Γ_x`, decided from the tail law alone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum TypeVerdict {
    /// `∑ x_n = ∞`: first kind, and the surface is of parabolic type.
    FirstKindParabolic,
    /// `∑ x_n = a < ∞`. The limit is absent when the tail does not give it.
    SecondKindNonParabolic {
        limit: Option<f64>,
    },
    Unknown,
}

pub fn classify_type(spec: &SequenceSpec) -> TypeVerdict {
    match spec.tail.diverges() {
        None => TypeVerdict::Unknown,
        Some(true) => TypeVerdict::FirstKindParabolic,
        Some(false) => TypeVerdict::SecondKindNonParabolic {
            limit: spec
                .tail
                .sum()
                .map(|tail_sum| spec.prefix.iter().sum::<f64>() + tail_sum),
        },
    }
}

/// The half-circle through `±a` bounding the convex core; `None` for
/// first-kind groups where `a = ∞`.
pub fn convex_core_boundary(spec: &SequenceSpec) -> Result<Option<HalfCircle>, FluteError> {
    match classify_type(spec) {
        TypeVerdict::Unknown => Err(FluteError::UnknownType),
        TypeVerdict::FirstKindParabolic => Ok(None),
        TypeVerdict::SecondKindNonParabolic { limit: None } => Err(FluteError::UnknownLimit),
        TypeVerdict::SecondKindNonParabolic { limit: Some(a) } => Ok(Some(HalfCircle {
            center: 0.0,
            radius: a,
        })),
    }
}

/// Numeric growth summary for sequences whose type is not decided.
/// Advisory only: partial sums never prove divergence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthDiagnostic {
    pub terms: usize,
    pub last_partial_sum: f64,
    /// Mean term over the last half of the available terms.
    pub recent_mean_term: f64,
}

pub fn growth_diagnostic(
    spec: &SequenceSpec,
    n_terms: usize,
) -> Result<GrowthDiagnostic, FluteError> {
    let terms = spec.terms(n_terms)?;
    let half = &terms[terms.len() / 2..];
    Ok(GrowthDiagnostic {
        terms: terms.len(),
        last_partial_sum: terms.iter().sum(),
        recent_mean_term: half.iter().sum::<f64>() / half.len() as f64,
    })
}

/// Finite truncation `⟨g_0, …, g_{N-1}⟩` of `Γ_x` with its sides.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FluteGroup {
    s: Vec<f64>,
    generators: Vec<Moebius>,
    sides: Vec<(Geodesic, Geodesic)>,
}

impl FluteGroup {
    pub fn partial_sums(&self) -> &[f64] {
        &self.s
    }

    pub fn generators(&self) -> &[Moebius] {
        &self.generators
    }

    /// `(γ_n^+, γ_n^-)` for each generator.
    pub fn sides(&self) -> &[(Geodesic, Geodesic)] {
        &self.sides
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `x_n = s_n - s_{n-1}`.
    pub fn term(&self, n: usize) -> f64 {
        self.s[n] - if n == 0 { 0.0 } else { self.s[n - 1] }
    }

    pub fn length_params(&self) -> Vec<f64> {
        (1..self.len())
            .map(|n| length_param(n, &self.s).expect("valid partial sums"))
            .collect()
    }

    /// Open region `⋂ Ext(γ_n^+) ∩ Ext(γ_n^-)` over the built generators.
    pub fn polygon(&self) -> Region {
        flute_polygon(self)
    }

    /// The fundamental region cut down to the convex core, `Int(γ)` added.
    pub fn polygon_in_core(&self, core: &HalfCircle) -> Region {
        flute_polygon(self).with(Geodesic::HalfCircle(*core), Side::Interior)
    }

    /// True when every generator has integer entries within `tol`.
    pub fn is_integral(&self, tol: f64) -> bool {
        self.generators
            .iter()
            .flat_map(|g| g.entries())
            .all(|v| (v - v.round()).abs() <= tol)
    }
}

pub fn build_flute(spec: &SequenceSpec, n_generators: usize) -> Result<FluteGroup, FluteError> {
    build_flute_with(spec, n_generators, Execution::default())
}

pub fn build_flute_with(
    spec: &SequenceSpec,
    n_generators: usize,
    exec: Execution,
) -> Result<FluteGroup, FluteError> {
    let s = partial_sums(spec, n_generators)?;
    let built: Vec<(Moebius, (Geodesic, Geodesic))> = exec.map_range(s.len(), |n| {
        let g = flute_generator(n, &s).expect("partial sums checked");
        let prev = if n == 0 { 0.0 } else { s[n - 1] };
        let plus = HalfCircle::from_endpoints(prev, s[n]).expect("strictly increasing");
        let minus = HalfCircle::from_endpoints(-s[n], -prev).expect("strictly increasing");
        (g, (Geodesic::HalfCircle(plus), Geodesic::HalfCircle(minus)))
    });
    let (generators, sides) = built.into_iter().unzip();
    Ok(FluteGroup {
        s,
        generators,
        sides,
    })
}

pub fn flute_polygon(group: &FluteGroup) -> Region {
    Region::open(
        group
            .sides
            .iter()
            .flat_map(|(p, m)| [(*p, Side::Exterior), (*m, Side::Exterior)])
            .collect(),
    )
}

pub fn is_integral(group: &FluteGroup) -> bool {
    group.is_integral(tol::GEOMETRY)
}

/// Expected class of `g_n`.
pub fn expected_class(n: usize) -> MapClass {
    if n == 0 {
        MapClass::Parabolic
    } else {
        MapClass::Hyperbolic
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius::{Boundary, UhPoint};
    use approx::assert_abs_diff_eq;

    fn finite(x: &[f64]) -> SequenceSpec {
        SequenceSpec::finite(x.to_vec()).unwrap()
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(
            partial_sums(&finite(&[1.0, 1.0, 1.0]), 3).unwrap(),
            vec![1.0, 2.0, 3.0]
        );
        let halves = SequenceSpec::new(
            vec![],
            Tail::Geometric {
                first: 1.0,
                ratio: 0.5,
            },
        )
        .unwrap();
        assert_eq!(
            partial_sums(&halves, 4).unwrap(),
            vec![1.0, 1.5, 1.75, 1.875]
        );
        assert_eq!(
            partial_sums(&finite(&[1.0, 2.0, 1.0, 2.0]), 4).unwrap(),
            vec![1.0, 3.0, 4.0, 6.0]
        );
    }

    #[test]
    fn partial_sum_errors() {
        assert_eq!(
            partial_sums(&finite(&[1.0, 2.0]), 3),
            Err(FluteError::InsufficientData {
                requested: 3,
                available: 2
            })
        );
        let custom = SequenceSpec::new(
            vec![1.0],
            Tail::Custom {
                divergent: Some(true),
            },
        )
        .unwrap();
        assert!(matches!(
            partial_sums(&custom, 2),
            Err(FluteError::InsufficientData { .. })
        ));
        assert!(matches!(
            SequenceSpec::finite(vec![1.0, 0.0]),
            Err(FluteError::NonPositiveTerm { index: 1, .. })
        ));
        assert!(matches!(
            SequenceSpec::new(vec![], Tail::Constant { c: -1.0 }),
            Err(FluteError::InvalidTail { name: "c", .. })
        ));
        assert_eq!(partial_sums(&finite(&[1.0]), 0), Err(FluteError::Empty));
    }

    #[test]
    fn tail_terms_follow_prefix() {
        let spec = SequenceSpec::new(vec![5.0], Tail::Harmonic { scale: 2.0 }).unwrap();
        assert_eq!(spec.terms(4).unwrap(), vec![5.0, 2.0, 1.0, 2.0 / 3.0]);
    }

    #[test]
    fn generator_examples() {
        let g0 = flute_generator(0, &[1.0]).unwrap();
        assert_eq!(g0.entries(), [1.0, 0.0, -2.0, 1.0]);
        assert_eq!(g0.classify(), MapClass::Parabolic);
        let g1 = flute_generator(1, &[1.0, 2.0]).unwrap();
        assert_eq!(g1.entries(), [3.0, -4.0, -2.0, 3.0]);
        assert_eq!(g1.trace(), 6.0);
        assert_eq!(
            g1.apply_boundary(Boundary::Finite(1.0)),
            Boundary::Finite(-1.0)
        );
        assert_eq!(
            g1.apply_boundary(Boundary::Finite(2.0)),
            Boundary::Finite(-2.0)
        );
        assert_eq!(
            flute_generator(2, &[1.0, 2.0]),
            Err(FluteError::IndexOutOfRange { index: 2, len: 2 })
        );
    }

    #[test]
    fn build_two_generators() {
        let group = build_flute(&finite(&[1.0, 1.0]), 2).unwrap();
        assert_eq!(group.generators()[0].entries(), [1.0, 0.0, -2.0, 1.0]);
        assert_eq!(group.generators()[1].entries(), [3.0, -4.0, -2.0, 3.0]);
        let sides = group.sides();
        assert_eq!(sides[0].0, Geodesic::half_circle(0.5, 0.5));
        assert_eq!(sides[0].1, Geodesic::half_circle(-0.5, 0.5));
        assert_eq!(sides[1].0, Geodesic::half_circle(1.5, 0.5));
        assert_eq!(sides[1].1, Geodesic::half_circle(-1.5, 0.5));
    }

    #[test]
    fn build_dets_and_classes() {
        let group = build_flute(&finite(&[1.0, 2.0, 1.0]), 3).unwrap();
        for (n, g) in group.generators().iter().enumerate() {
            assert_abs_diff_eq!(g.det(), 1.0, epsilon = 1e-12);
            assert_eq!(g.classify(), expected_class(n));
        }
    }

    #[test]
    fn length_examples() {
        let l1 = length_param(1, &[1.0, 2.0]).unwrap();
        let direct = ((3.0 + 2.0 * 2f64.sqrt()) / (3.0 - 2.0 * 2f64.sqrt())).ln();
        assert_abs_diff_eq!(l1, direct, epsilon = 1e-12);
        assert_abs_diff_eq!(l1, 2.0 * 3f64.acosh(), epsilon = 1e-9);
        assert_abs_diff_eq!(l1, 3.525494348078172, epsilon = 1e-12);
        assert_eq!(length_param(0, &[1.0, 2.0]), Err(FluteError::ZeroIndex));
        assert_eq!(
            length_param(1, &[1.0, 1.0]),
            Err(FluteError::NotIncreasing(1))
        );
    }

    #[test]
    fn basmajian_examples() {
        let t = basmajian_term(1, &[1.0, 2.0]).unwrap();
        assert_abs_diff_eq!(t, 1.0 / (1.0 + 2f64.sqrt()).powi(2), epsilon = 1e-12);
        assert_abs_diff_eq!(t, 0.1715728752538099, epsilon = 1e-12);
        let scaled = basmajian_term(1, &[7.0, 14.0]).unwrap();
        assert_abs_diff_eq!(t, scaled, epsilon = 1e-14);
    }

    #[test]
    fn type_examples() {
        let constant = SequenceSpec::new(vec![], Tail::Constant { c: 1.0 }).unwrap();
        assert_eq!(classify_type(&constant), TypeVerdict::FirstKindParabolic);
        let geo = SequenceSpec::new(
            vec![1.0],
            Tail::Geometric {
                first: 0.5,
                ratio: 0.5,
            },
        )
        .unwrap();
        assert_eq!(
            classify_type(&geo),
            TypeVerdict::SecondKindNonParabolic { limit: Some(2.0) }
        );
        let expanding = SequenceSpec::new(
            vec![1.0],
            Tail::Geometric {
                first: 0.5,
                ratio: 1.0,
            },
        )
        .unwrap();
        assert_eq!(classify_type(&expanding), TypeVerdict::FirstKindParabolic);
        assert_eq!(
            classify_type(&finite(&[1.0, 2.0, 3.0])),
            TypeVerdict::Unknown
        );
        let unknown = SequenceSpec::new(vec![1.0], Tail::Custom { divergent: None }).unwrap();
        assert_eq!(classify_type(&unknown), TypeVerdict::Unknown);
        let conv = SequenceSpec::new(
            vec![1.0],
            Tail::Custom {
                divergent: Some(false),
            },
        )
        .unwrap();
        assert_eq!(
            classify_type(&conv),
            TypeVerdict::SecondKindNonParabolic { limit: None }
        );
    }

    #[test]
    fn convex_core_examples() {
        let geo = SequenceSpec::new(
            vec![1.0],
            Tail::Geometric {
                first: 0.5,
                ratio: 0.5,
            },
        )
        .unwrap();
        assert_eq!(
            convex_core_boundary(&geo).unwrap(),
            Some(HalfCircle {
                center: 0.0,
                radius: 2.0
            })
        );
        let constant = SequenceSpec::new(vec![], Tail::Constant { c: 3.0 }).unwrap();
        assert_eq!(convex_core_boundary(&constant).unwrap(), None);
        assert_eq!(
            convex_core_boundary(&finite(&[1.0])),
            Err(FluteError::UnknownType)
        );
        let conv = SequenceSpec::new(
            vec![1.0],
            Tail::Custom {
                divergent: Some(false),
            },
        )
        .unwrap();
        assert_eq!(convex_core_boundary(&conv), Err(FluteError::UnknownLimit));
    }

    #[test]
    fn polygon_examples() {
        let group = build_flute(&finite(&[1.0, 1.0]), 2).unwrap();
        let region = group.polygon();
        assert_eq!(region.len(), 4);
        assert!(region.contains(UhPoint::new(0.0, 10.0).unwrap()));
        assert!(!region.contains(UhPoint::new(0.5, 0.3).unwrap()));
        assert!(!region.contains(UhPoint::new(0.5, 0.5).unwrap()));
        let core = region
            .clone()
            .with(Geodesic::half_circle(0.0, 2.0), Side::Interior);
        assert!(!core.contains(UhPoint::new(0.0, 10.0).unwrap()));
        assert!(group
            .polygon_in_core(&HalfCircle {
                center: 0.0,
                radius: 2.0
            })
            .contains(UhPoint::new(0.0, 1.5).unwrap()));
    }

    #[test]
    fn integrality_examples() {
        assert!(is_integral(
            &build_flute(&finite(&[1.0, 2.0, 1.0]), 3).unwrap()
        ));
        assert!(is_integral(&build_flute(&finite(&[1.0; 6]), 6).unwrap()));
        let g0 = build_flute(&finite(&[0.5]), 1).unwrap();
        assert_eq!(g0.generators()[0].entries(), [1.0, 0.0, -4.0, 1.0]);
        assert!(is_integral(&g0));
        assert!(!is_integral(&build_flute(&finite(&[0.5, 0.3]), 2).unwrap()));
    }

    #[test]
    fn diagnostic_reports_growth() {
        let d = growth_diagnostic(&finite(&[1.0, 1.0, 2.0, 2.0]), 4).unwrap();
        assert_eq!(d.terms, 4);
        assert_eq!(d.last_partial_sum, 6.0);
        assert_eq!(d.recent_mean_term, 2.0);
    }

    #[test]
    fn tail_json_schema() {
        let spec: SequenceSpec =
            serde_json::from_str(r#"{"prefix":[1],"tail":{"kind":"constant","c":1}}"#).unwrap();
        assert_eq!(spec.tail, Tail::Constant { c: 1.0 });
        let spec: SequenceSpec =
            serde_json::from_str(r#"{"prefix":[1,2],"tail":{"kind":"none"}}"#).unwrap();
        assert_eq!(spec.tail, Tail::None);
        let spec: SequenceSpec =
            serde_json::from_str(r#"{"prefix":[],"tail":{"kind":"custom","divergent":null}}"#)
                .unwrap();
        assert_eq!(spec.tail, Tail::Custom { divergent: None });
    }
}
