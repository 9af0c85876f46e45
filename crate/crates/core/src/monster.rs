//! Loch Ness monster groups `G_y` built from windows `(a, b, c, d, e)`.
//!
//! Each window carries four half-circles: `σ = (a, b)`, `ρ = (b, c)`,
//! `σ̃ = (c, d)` and `ρ̃ = (d, e)`. The generator `f` pairs `σ` with `σ̃`
//! and `g` pairs `ρ` with `ρ̃`. Windows are ordered along the real axis with
//! `e_n <= a_{n+1}`, and the common exterior of all circles is a fundamental
//! region.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Execution;
use crate::geodesic::{pairing_map_circles, Geodesic, HalfCircle, Region, Side};
use crate::moebius::Moebius;
use crate::tol;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MonsterError {
    #[error("invalid windows: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidWindow(Vec<Violation>),
    #[error("window index {index} is not represented (indices {first}..{end})")]
    IndexOutOfRange { index: i64, first: i64, end: i64 },
}

/// One window `y_n = (a, b, c, d, e)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 5]", into = "[f64; 5]")]
pub struct MonsterWindow {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
}

impl From<[f64; 5]> for MonsterWindow {
    fn from([a, b, c, d, e]: [f64; 5]) -> Self {
        MonsterWindow { a, b, c, d, e }
    }
}

impl From<MonsterWindow> for [f64; 5] {
    fn from(w: MonsterWindow) -> Self {
        [w.a, w.b, w.c, w.d, w.e]
    }
}

impl MonsterWindow {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64) -> Self {
        MonsterWindow { a, b, c, d, e }
    }

    /// `σ`, `ρ`, `σ̃`, `ρ̃`. Only meaningful for a valid window.
    pub fn circles(&self) -> [HalfCircle; 4] {
        let hc = |p: f64, q: f64| HalfCircle {
            center: 0.5 * (p + q),
            radius: 0.5 * (q - p),
        };
        [
            hc(self.a, self.b),
            hc(self.b, self.c),
            hc(self.c, self.d),
            hc(self.d, self.e),
        ]
    }

    fn violations(&self, index: i64, out: &mut Vec<Violation>) {
        let names = ["a", "b", "c", "d", "e"];
        let values: [f64; 5] = (*self).into();
        for (k, v) in values.iter().enumerate() {
            if !v.is_finite() {
                out.push(Violation::NonFinite {
                    index,
                    name: names[k],
                });
            }
        }
        for k in 0..4 {
            if !(values[k] < values[k + 1]) {
                out.push(Violation::NotIncreasing {
                    index,
                    left: names[k],
                    right: names[k + 1],
                    left_value: values[k],
                    right_value: values[k + 1],
                });
            }
        }
    }
}

/// Declared behavior of the untruncated family. `None` leaves it undecided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TailFlags {
    #[serde(default)]
    pub gapless: Option<bool>,
    #[serde(default)]
    pub left_unbounded: Option<bool>,
    #[serde(default)]
    pub right_unbounded: Option<bool>,
}

impl TailFlags {
    pub fn first_kind() -> Self {
        TailFlags {
            gapless: Some(true),
            left_unbounded: Some(true),
            right_unbounded: Some(true),
        }
    }
}

/// A contiguous run of windows `y_first, y_{first+1}, …` plus tail flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonsterSpec {
    pub windows: Vec<MonsterWindow>,
    #[serde(default)]
    pub first_index: i64,
    #[serde(default)]
    pub flags: TailFlags,
}

impl MonsterSpec {
    pub fn new(windows: Vec<MonsterWindow>, first_index: i64, flags: TailFlags) -> Self {
        MonsterSpec {
            windows,
            first_index,
            flags,
        }
    }

    /// Gapless windows `a = k·width`, `b, c, d = (k + offsets)·width`,
    /// `e = (k + 1)·width` for `k` in `range`. Offsets must increase in `(0, 1)`.
    pub fn arithmetic(range: std::ops::Range<i64>, offsets: [f64; 3], width: f64) -> Self {
        let first_index = range.start;
        let windows = range
            .map(|k| {
                let base = k as f64;
                MonsterWindow::new(
                    base * width,
                    (base + offsets[0]) * width,
                    (base + offsets[1]) * width,
                    (base + offsets[2]) * width,
                    (base + 1.0) * width,
                )
            })
            .collect();
        MonsterSpec::new(windows, first_index, TailFlags::first_kind())
    }

    fn end_index(&self) -> i64 {
        self.first_index + self.windows.len() as i64
    }

    pub fn window(&self, index: i64) -> Result<&MonsterWindow, MonsterError> {
        let k = index - self.first_index;
        if k < 0 || k as usize >= self.windows.len() {
            return Err(MonsterError::IndexOutOfRange {
                index,
                first: self.first_index,
                end: self.end_index(),
            });
        }
        Ok(&self.windows[k as usize])
    }

    /// Indices `n` with a gap `e_n < a_{n+1}`.
    pub fn gaps(&self) -> Vec<i64> {
        self.windows
            .windows(2)
            .enumerate()
            .filter(|(_, pair)| pair[1].a - pair[0].e > tol::WINDOW_GAP)
            .map(|(k, _)| self.first_index + k as i64)
            .collect()
    }
}

/// A failed inequality among the window coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NonFinite {
        index: i64,
        name: &'static str,
    },
    NotIncreasing {
        index: i64,
        left: &'static str,
        right: &'static str,
        left_value: f64,
        right_value: f64,
    },
    Overlap {
        index: i64,
        e: f64,
        next_a: f64,
    },
    Empty,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonFinite { index, name } => {
                write!(f, "window {index}: {name} is not finite")
            }
            Violation::NotIncreasing {
                index,
                left,
                right,
                left_value,
                right_value,
            } => write!(
                f,
                "window {index}: {left} < {right} fails ({left} = {left_value}, {right} = {right_value})"
            ),
            Violation::Overlap { index, e, next_a } => write!(
                f,
                "windows {index}/{}: e_{index} <= a_{} fails (e = {e}, a = {next_a})",
                index + 1,
                index + 1
            ),
            Violation::Empty => f.write_str("no windows given"),
        }
    }
}

/// Outcome of window validation.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct WindowReport {
    pub violations: Vec<Violation>,
}

impl WindowReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_windows(spec: &MonsterSpec) -> WindowReport {
    let mut violations = Vec::new();
    if spec.windows.is_empty() {
        violations.push(Violation::Empty);
    }
    for (k, w) in spec.windows.iter().enumerate() {
        w.violations(spec.first_index + k as i64, &mut violations);
    }
    for (k, pair) in spec.windows.windows(2).enumerate() {
        if !(pair[0].e <= pair[1].a) {
            violations.push(Violation::Overlap {
                index: spec.first_index + k as i64,
                e: pair[0].e,
                next_a: pair[1].a,
            });
        }
    }
    WindowReport { violations }
}

fn check(spec: &MonsterSpec) -> Result<(), MonsterError> {
    let report = validate_windows(spec);
    if report.is_valid() {
        Ok(())
    } else {
        Err(MonsterError::InvalidWindow(report.violations))
    }
}

/// `(f, g)` for one window: `f` takes `σ` onto `σ̃` with `a ↦ d, b ↦ c`;
/// `g` takes `ρ` onto `ρ̃` with `b ↦ e, c ↦ d`.
pub fn monster_generators(w: &MonsterWindow) -> Result<(Moebius, Moebius), MonsterError> {
    let mut violations = Vec::new();
    w.violations(0, &mut violations);
    if !violations.is_empty() {
        return Err(MonsterError::InvalidWindow(violations));
    }
    let [sigma, rho, sigma_t, rho_t] = w.circles();
    let f = pairing_map_circles(&sigma, &sigma_t).expect("window ordering checked");
    let g = pairing_map_circles(&rho, &rho_t).expect("window ordering checked");
    Ok((f, g))
}

/// Generators and pairing circles of one window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorPair {
    pub index: i64,
    pub f: Moebius,
    pub g: Moebius,
    pub sigma: HalfCircle,
    pub sigma_tilde: HalfCircle,
    pub rho: HalfCircle,
    pub rho_tilde: HalfCircle,
}

impl GeneratorPair {
    pub fn circles(&self) -> [HalfCircle; 4] {
        [self.sigma, self.sigma_tilde, self.rho, self.rho_tilde]
    }
}

/// Truncation of `G_y` to the represented windows.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonsterGroup {
    pub pairs: Vec<GeneratorPair>,
    pub region: Region,
}

impl MonsterGroup {
    /// Every pairing circle, window by window.
    pub fn circles(&self) -> Vec<HalfCircle> {
        self.pairs.iter().flat_map(|p| p.circles()).collect()
    }
}

pub fn build_monster(spec: &MonsterSpec) -> Result<MonsterGroup, MonsterError> {
    build_monster_with(spec, Execution::default())
}

pub fn build_monster_with(
    spec: &MonsterSpec,
    exec: Execution,
) -> Result<MonsterGroup, MonsterError> {
    check(spec)?;
    let pairs = exec.map_range(spec.windows.len(), |k| {
        let w = &spec.windows[k];
        let (f, g) = monster_generators(w).expect("windows validated");
        let [sigma, rho, sigma_tilde, rho_tilde] = w.circles();
        GeneratorPair {
            index: spec.first_index + k as i64,
            f,
            g,
            sigma,
            sigma_tilde,
            rho,
            rho_tilde,
        }
    });
    let region = Region::open(
        pairs
            .iter()
            .flat_map(|p| p.circles())
            .map(|c| (Geodesic::HalfCircle(c), Side::Exterior))
            .collect(),
    );
    Ok(MonsterGroup { pairs, region })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KindVerdict {
    FirstKind,
    SecondKind,
    Unknown,
}

/// First kind iff `e_n = a_{n+1}` for all `n`, `e_n → ∞` and `a_n → -∞`.
///
/// Represented windows are checked directly; the untruncated family is
/// described by the flags. A represented gap or a declared gap or bound
/// gives the second kind regardless of the other flags.
pub fn first_kind_check(spec: &MonsterSpec) -> Result<KindVerdict, MonsterError> {
    check(spec)?;
    let f = spec.flags;
    if !spec.gaps().is_empty()
        || f.gapless == Some(false)
        || f.left_unbounded == Some(false)
        || f.right_unbounded == Some(false)
    {
        return Ok(KindVerdict::SecondKind);
    }
    if f == TailFlags::first_kind() {
        Ok(KindVerdict::FirstKind)
    } else {
        Ok(KindVerdict::Unknown)
    }
}

/// `D(G_y) ∩ {a_n < Re z < e_n}`.
pub fn strip(spec: &MonsterSpec, index: i64) -> Result<Region, MonsterError> {
    let w = spec.window(index)?;
    let mut constraints: Vec<(Geodesic, Side)> = w
        .circles()
        .into_iter()
        .map(|c| (Geodesic::HalfCircle(c), Side::Exterior))
        .collect();
    constraints.push((Geodesic::VerticalRay { foot: w.a }, Side::Exterior));
    constraints.push((Geodesic::VerticalRay { foot: w.e }, Side::Interior));
    Ok(Region::open(constraints))
}
