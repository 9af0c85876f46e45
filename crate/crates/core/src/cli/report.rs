//! Structured command output.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::check::CheckResult;
use crate::flute::{GrowthDiagnostic, TypeVerdict};
use crate::geodesic::{Geodesic, HalfCircle};
use crate::moebius::{Boundary, MapClass, Moebius};
use crate::monster::KindVerdict;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorRow {
    pub label: String,
    /// `[a, b, c, d]`
    pub matrix: [f64; 4],
    pub class: MapClass,
    pub trace: f64,
    pub fixed_points: Vec<Boundary>,
    /// Side taken by the generator, then its image.
    pub pairs: [Geodesic; 2],
}

impl GeneratorRow {
    pub fn new(label: String, m: &Moebius, tol: f64, pairs: [Geodesic; 2]) -> Self {
        GeneratorRow {
            label,
            matrix: m.entries(),
            class: m.classify_with(tol),
            trace: m.trace(),
            fixed_points: m.boundary_fixed_points(),
            pairs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LengthRow {
    pub n: usize,
    pub length: f64,
    pub translation_length: f64,
    pub series_term: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesSummary {
    pub verdict: TypeVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convex_core: Option<HalfCircle>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub growth: Option<GrowthDiagnostic>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TileRow {
    pub word: String,
    pub matrix: [f64; 4],
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<GeneratorRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub integral: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lengths: Option<Vec<LengthRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<KindVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tiles: Option<Vec<TileRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit_points: Option<Vec<Boundary>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckResult>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
}

/// Rounds to 12 significant digits.
pub fn round_sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn round_numbers(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n
                .as_f64()
                .map(round_sig12)
                .and_then(serde_json::Number::from_f64)
            {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_numbers),
        Value::Object(map) => map.values_mut().for_each(round_numbers),
        _ => {}
    }
}

impl Report {
    pub fn new(command: &str, family: &str) -> Self {
        Report {
            command: command.to_string(),
            family: family.to_string(),
            ..Report::default()
        }
    }

    /// Pretty JSON with every float rounded to 12 significant digits.
    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        round_numbers(&mut v);
        let mut s = serde_json::to_string_pretty(&v).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Report> {
        serde_json::from_str(s)
    }
}
