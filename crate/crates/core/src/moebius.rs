//! Möbius transformations of the upper half-plane.
//!
//! A [`Moebius`] is a real 2×2 matrix `[[a, b], [c, d]]` with determinant one,
//! acting by `z ↦ (a z + b) / (c z + d)`. Matrices are stored up to the sign
//! `±I`: the first nonzero entry in the order `(a, b, c, d)` is positive.

use std::fmt;
use std::ops::Mul;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::tol;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MoebiusError {
    #[error("determinant {det} is not positive: the map reverses orientation or is degenerate")]
    NonPositiveDeterminant { det: f64 },
    #[error("matrix entries must be finite")]
    NonFiniteEntry,
    #[error("the identity fixes every point")]
    IdentityHasAllPoints,
    #[error("translation length needs a hyperbolic map, got {0}")]
    NotHyperbolic(MapClass),
    #[error("point ({x}, {y}) is not in the upper half-plane")]
    InvalidPoint { x: f64, y: f64 },
}

/// Conjugacy type of a nontrivial element, read off from the trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MapClass {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl fmt::Display for MapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MapClass::Identity => "identity",
            MapClass::Elliptic => "elliptic",
            MapClass::Parabolic => "parabolic",
            MapClass::Hyperbolic => "hyperbolic",
        };
        f.write_str(s)
    }
}

/// A point `x + iy` with `y > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UhPoint {
    x: f64,
    y: f64,
}

impl UhPoint {
    pub fn new(x: f64, y: f64) -> Result<Self, MoebiusError> {
        if x.is_finite() && y.is_finite() && y > 0.0 {
            Ok(UhPoint { x, y })
        } else {
            Err(MoebiusError::InvalidPoint { x, y })
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn approx_eq(&self, other: &UhPoint, tol: f64) -> bool {
        tol::close(self.x, other.x, tol) && tol::close(self.y, other.y, tol)
    }
}

/// A point of `ℝ ∪ {∞}`, the boundary of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Boundary {
    Finite(f64),
    Infinity,
}

impl Boundary {
    pub fn finite(self) -> Option<f64> {
        match self {
            Boundary::Finite(x) => Some(x),
            Boundary::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Boundary::Infinity)
    }

    pub fn approx_eq(self, other: Boundary, tol: f64) -> bool {
        match (self, other) {
            (Boundary::Finite(a), Boundary::Finite(b)) => tol::close(a, b, tol),
            (Boundary::Infinity, Boundary::Infinity) => true,
            _ => false,
        }
    }

    /// Total order on `ℝ ∪ {∞}` with `∞` last.
    pub fn total_cmp(&self, other: &Boundary) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match (self, other) {
            (Boundary::Finite(a), Boundary::Finite(b)) => a.total_cmp(b),
            (Boundary::Finite(_), Boundary::Infinity) => Ordering::Less,
            (Boundary::Infinity, Boundary::Finite(_)) => Ordering::Greater,
            (Boundary::Infinity, Boundary::Infinity) => Ordering::Equal,
        }
    }
}

impl From<f64> for Boundary {
    fn from(x: f64) -> Self {
        if x.is_infinite() {
            Boundary::Infinity
        } else {
            Boundary::Finite(x)
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary::Finite(x) => write!(f, "{x}"),
            Boundary::Infinity => f.write_str("∞"),
        }
    }
}

// Finite points serialize as JSON numbers, ∞ as the string "inf".
impl Serialize for Boundary {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Boundary::Finite(x) => serializer.serialize_f64(*x),
            Boundary::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Boundary {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct BoundaryVisitor;

        impl Visitor<'_> for BoundaryVisitor {
            type Value = Boundary;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number or \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Boundary, E> {
                Ok(Boundary::Finite(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Boundary, E> {
                Ok(Boundary::Finite(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Boundary, E> {
                Ok(Boundary::Finite(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Boundary, E> {
                match v {
                    "inf" | "infinity" | "∞" => Ok(Boundary::Infinity),
                    _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }
        }

        deserializer.deserialize_any(BoundaryVisitor)
    }
}

/// Either kind of point a Möbius map can act on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Point {
    Interior(UhPoint),
    Boundary(Boundary),
}

/// `ad - bc` with one rounding error, via Kahan's fused multiply-add trick.
fn det2(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let w = b * c;
    let err = (-b).mul_add(c, w);
    let f = a.mul_add(d, -w);
    f + err
}

/// An element of `PSL(2, ℝ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moebius {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl Moebius {
    pub const IDENTITY: Moebius = Moebius {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    /// Normalizes raw entries to determinant one and sign-canonical form.
    ///
    /// When the determinant already equals one up to rounding (relative to the
    /// size of `ad` and `bc`) the entries are kept as they are; rescaling by a
    /// computed determinant would only add error to symbolically unimodular
    /// input such as a product of two normalized maps.
    pub fn normalize(a: f64, b: f64, c: f64, d: f64) -> Result<Self, MoebiusError> {
        if ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(MoebiusError::NonFiniteEntry);
        }
        let det = det2(a, b, c, d);
        if !(det > 0.0) {
            return Err(MoebiusError::NonPositiveDeterminant { det });
        }
        let scale = 1f64.max((a * d).abs()).max((b * c).abs());
        let (a, b, c, d) = if (det - 1.0).abs() <= tol::NORMALIZATION * scale {
            (a, b, c, d)
        } else {
            let k = det.sqrt().recip();
            (a * k, b * k, c * k, d * k)
        };
        Ok(Self::sign_canonical(a, b, c, d))
    }

    fn sign_canonical(a: f64, b: f64, c: f64, d: f64) -> Self {
        let lead = [a, b, c, d].into_iter().find(|v| *v != 0.0).unwrap_or(1.0);
        if lead < 0.0 {
            Moebius {
                a: -a,
                b: -b,
                c: -c,
                d: -d,
            }
        } else {
            Moebius { a, b, c, d }
        }
    }

    /// Translation `z ↦ z + k`.
    pub fn translation(k: f64) -> Self {
        Moebius {
            a: 1.0,
            b: k,
            c: 0.0,
            d: 1.0,
        }
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn det(&self) -> f64 {
        det2(self.a, self.b, self.c, self.d)
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Moebius) -> Moebius {
        let a = self.a.mul_add(other.a, self.b * other.c);
        let b = self.a.mul_add(other.b, self.b * other.d);
        let c = self.c.mul_add(other.a, self.d * other.c);
        let d = self.c.mul_add(other.b, self.d * other.d);
        // A product of unimodular matrices is unimodular; normalization can only
        // fail here on overflow, which leaves the raw product in place.
        Moebius::normalize(a, b, c, d).unwrap_or(Self::sign_canonical(a, b, c, d))
    }

    pub fn inverse(&self) -> Moebius {
        Self::sign_canonical(self.d, -self.b, -self.c, self.a)
    }

    /// Entrywise comparison modulo `±I`.
    pub fn approx_eq(&self, other: &Moebius, tol: f64) -> bool {
        let p = self.entries();
        let q = other.entries();
        let same = p.iter().zip(&q).all(|(x, y)| tol::close(*x, *y, tol));
        let flipped = p.iter().zip(&q).all(|(x, y)| tol::close(*x, -*y, tol));
        same || flipped
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&Moebius::IDENTITY, tol)
    }

    pub fn apply(&self, p: Point) -> Point {
        match p {
            Point::Interior(z) => Point::Interior(self.apply_interior(z)),
            Point::Boundary(x) => Point::Boundary(self.apply_boundary(x)),
        }
    }

    pub fn apply_interior(&self, z: UhPoint) -> UhPoint {
        // w = (az + b)/(cz + d); with det 1, Im w = y / |cz + d|^2.
        let den_re = self.c.mul_add(z.x, self.d);
        let den_im = self.c * z.y;
        let num_re = self.a.mul_add(z.x, self.b);
        let num_im = self.a * z.y;
        let n2 = den_re.mul_add(den_re, den_im * den_im);
        let x = num_re.mul_add(den_re, num_im * den_im) / n2;
        let y = (num_im * den_re - num_re * den_im) / n2;
        UhPoint { x, y }
    }

    pub fn apply_boundary(&self, p: Boundary) -> Boundary {
        match p {
            Boundary::Infinity => {
                if self.c == 0.0 {
                    Boundary::Infinity
                } else {
                    Boundary::Finite(self.a / self.c)
                }
            }
            Boundary::Finite(x) => {
                let den = self.c.mul_add(x, self.d);
                let pole_slack = 4.0 * f64::EPSILON * ((self.c * x).abs() + self.d.abs());
                if den.abs() <= pole_slack {
                    Boundary::Infinity
                } else {
                    Boundary::Finite(self.a.mul_add(x, self.b) / den)
                }
            }
        }
    }

    pub fn classify(&self) -> MapClass {
        self.classify_with(tol::GEOMETRY)
    }

    /// Trace classification; `||tr| - 2| <= tol` counts as parabolic.
    pub fn classify_with(&self, tol: f64) -> MapClass {
        if self.is_identity(tol) {
            return MapClass::Identity;
        }
        let excess = self.trace().abs() - 2.0;
        if excess.abs() <= tol {
            MapClass::Parabolic
        } else if excess > 0.0 {
            MapClass::Hyperbolic
        } else {
            MapClass::Elliptic
        }
    }

    pub fn fixed_points(&self) -> Result<Vec<Point>, MoebiusError> {
        self.fixed_points_with(tol::GEOMETRY)
    }

    /// Fixed points: two boundary points (hyperbolic), one boundary point
    /// (parabolic) or one interior point (elliptic). Boundary points come
    /// sorted with `∞` last.
    pub fn fixed_points_with(&self, tol: f64) -> Result<Vec<Point>, MoebiusError> {
        let class = self.classify_with(tol);
        let Moebius { a, b, c, d } = *self;
        let mut points = match class {
            MapClass::Identity => return Err(MoebiusError::IdentityHasAllPoints),
            MapClass::Elliptic => {
                let tr = self.trace();
                let x = (a - d) / (2.0 * c);
                let y = (4.0 - tr * tr).sqrt() / (2.0 * c.abs());
                vec![Point::Interior(UhPoint { x, y })]
            }
            MapClass::Parabolic => {
                if c == 0.0 {
                    vec![Point::Boundary(Boundary::Infinity)]
                } else {
                    vec![Point::Boundary(Boundary::Finite((a - d) / (2.0 * c)))]
                }
            }
            MapClass::Hyperbolic => {
                if c == 0.0 {
                    vec![
                        Point::Boundary(Boundary::Finite(b / (d - a))),
                        Point::Boundary(Boundary::Infinity),
                    ]
                } else {
                    // Roots of c z^2 + (d - a) z - b = 0, discriminant tr^2 - 4.
                    let tr = self.trace();
                    let disc = (tr * tr - 4.0).max(0.0).sqrt();
                    let lin = d - a;
                    let q = -0.5 * (lin + lin.signum() * disc);
                    let q = if q == 0.0 { -0.5 * disc } else { q };
                    vec![
                        Point::Boundary(Boundary::Finite(q / c)),
                        Point::Boundary(Boundary::Finite(-b / q)),
                    ]
                }
            }
        };
        points.sort_by(|p, q| match (p, q) {
            (Point::Boundary(x), Point::Boundary(y)) => x.total_cmp(y),
            _ => std::cmp::Ordering::Equal,
        });
        Ok(points)
    }

    /// Boundary fixed points only; empty for elliptic maps and the identity.
    pub fn boundary_fixed_points(&self) -> Vec<Boundary> {
        self.fixed_points()
            .unwrap_or_default()
            .into_iter()
            .filter_map(|p| match p {
                Point::Boundary(b) => Some(b),
                Point::Interior(_) => None,
            })
            .collect()
    }

    /// Hyperbolic displacement along the axis, `2 arccosh(|tr| / 2)`.
    pub fn translation_length(&self) -> Result<f64, MoebiusError> {
        self.translation_length_with(tol::GEOMETRY)
    }

    pub fn translation_length_with(&self, tol: f64) -> Result<f64, MoebiusError> {
        match self.classify_with(tol) {
            MapClass::Hyperbolic => Ok(2.0 * (self.trace().abs() / 2.0).acosh()),
            other => Err(MoebiusError::NotHyperbolic(other)),
        }
    }
}

impl Mul for Moebius {
    type Output = Moebius;

    fn mul(self, rhs: Moebius) -> Moebius {
        self.compose(&rhs)
    }
}

impl fmt::Display for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}
