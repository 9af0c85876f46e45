//! Numeric tolerances shared by every module.
//!
//! The constructions are exact in principle; these constants draw the line
//! between "equal" and "different" for `f64` data.

/// Comparison tolerance for traces, points and geodesic endpoints.
pub const GEOMETRY: f64 = 1e-9;

/// Allowed determinant drift before a matrix is rescaled, relative to the
/// magnitude of the products `a*d` and `b*c`.
pub const NORMALIZATION: f64 = 1e-12;

/// Slack allowed when two half-circles touch at a shared endpoint.
pub const TANGENCY: f64 = 1e-12;

/// Absolute tolerance for the equality `e_n = a_{n+1}` between windows.
pub const WINDOW_GAP: f64 = 1e-12;

/// Mixed absolute/relative closeness: `|a - b| <= tol * max(1, |a|, |b|)`.
///
/// Matrix entries of deep words or of generators with nearly touching sides
/// can be large, and an absolute threshold below one ulp is meaningless there.
#[inline]
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}
