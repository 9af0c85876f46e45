//! Complete geodesics of the upper half-plane and regions cut out by them.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::moebius::{Boundary, MapClass, Moebius, UhPoint};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("geodesic endpoints coincide at {0}")]
    CoincidentEndpoints(Boundary),
    #[error("non-finite geodesic data")]
    NonFinite,
    #[error(
        "pairing needs disjoint half-circles ordered a < b < c < d, got ({a}, {b}) and ({c}, {d})"
    )]
    OverlappingCircles { a: f64, b: f64, c: f64, d: f64 },
    #[error("pairing is only defined between half-circles")]
    NotHalfCircle,
}

/// Half-circle orthogonal to the real axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfCircle {
    pub center: f64,
    pub radius: f64,
}

impl HalfCircle {
    /// Half-circle with endpoints `p` and `q`, in either order.
    pub fn from_endpoints(p: f64, q: f64) -> Result<Self, GeometryError> {
        if !(p.is_finite() && q.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        if p == q {
            return Err(GeometryError::CoincidentEndpoints(Boundary::Finite(p)));
        }
        Ok(HalfCircle {
            center: 0.5 * (p + q),
            radius: 0.5 * (p - q).abs(),
        })
    }

    pub fn left(&self) -> f64 {
        self.center - self.radius
    }

    pub fn right(&self) -> f64 {
        self.center + self.radius
    }

    /// `|w - O| > r`; points on the circle are not exterior.
    pub fn ext_contains(&self, w: UhPoint) -> bool {
        self.offset_sq(w) > self.radius * self.radius
    }

    pub fn int_contains(&self, w: UhPoint) -> bool {
        self.offset_sq(w) < self.radius * self.radius
    }

    fn offset_sq(&self, w: UhPoint) -> f64 {
        let dx = w.x() - self.center;
        dx.mul_add(dx, w.y() * w.y())
    }

    /// Compares endpoints, each on its own scale: a small circle far from
    /// the origin is only known to the precision of its endpoints.
    pub fn approx_eq(&self, other: &HalfCircle, tol: f64) -> bool {
        tol::close(self.left(), other.left(), tol) && tol::close(self.right(), other.right(), tol)
    }
}

/// A complete geodesic: a half-circle, or a vertical ray from `foot` to `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Geodesic {
    HalfCircle(HalfCircle),
    VerticalRay { foot: f64 },
}

impl Geodesic {
    pub fn half_circle(center: f64, radius: f64) -> Self {
        Geodesic::HalfCircle(HalfCircle { center, radius })
    }

    pub fn from_endpoints(p: Boundary, q: Boundary) -> Result<Self, GeometryError> {
        match (p, q) {
            (Boundary::Finite(p), Boundary::Finite(q)) => {
                HalfCircle::from_endpoints(p, q).map(Geodesic::HalfCircle)
            }
            (Boundary::Finite(foot), Boundary::Infinity)
            | (Boundary::Infinity, Boundary::Finite(foot)) => {
                if foot.is_finite() {
                    Ok(Geodesic::VerticalRay { foot })
                } else {
                    Err(GeometryError::NonFinite)
                }
            }
            (Boundary::Infinity, Boundary::Infinity) => {
                Err(GeometryError::CoincidentEndpoints(Boundary::Infinity))
            }
        }
    }

    /// Endpoints in increasing order (`∞` last).
    pub fn endpoints(&self) -> (Boundary, Boundary) {
        match self {
            Geodesic::HalfCircle(h) => (Boundary::Finite(h.left()), Boundary::Finite(h.right())),
            Geodesic::VerticalRay { foot } => (Boundary::Finite(*foot), Boundary::Infinity),
        }
    }

    pub fn as_half_circle(&self) -> Option<&HalfCircle> {
        match self {
            Geodesic::HalfCircle(h) => Some(h),
            Geodesic::VerticalRay { .. } => None,
        }
    }

    /// Exterior test. The exterior of a vertical ray at `x0` is `Re z > x0`.
    pub fn ext_contains(&self, w: UhPoint) -> bool {
        match self {
            Geodesic::HalfCircle(h) => h.ext_contains(w),
            Geodesic::VerticalRay { foot } => w.x() > *foot,
        }
    }

    pub fn int_contains(&self, w: UhPoint) -> bool {
        match self {
            Geodesic::HalfCircle(h) => h.int_contains(w),
            Geodesic::VerticalRay { foot } => w.x() < *foot,
        }
    }

    /// Image of the geodesic under `m`, built from the images of its endpoints.
    pub fn image(&self, m: &Moebius) -> Geodesic {
        let (p, q) = self.endpoints();
        let (p, q) = (m.apply_boundary(p), m.apply_boundary(q));
        Geodesic::from_endpoints(p, q).unwrap_or_else(|_| {
            // Distinct endpoints only collide after floating-point collapse
            // of a tiny circle; keep a zero-radius circle at that point.
            let x = p.finite().or(q.finite()).unwrap_or(0.0);
            Geodesic::half_circle(x, 0.0)
        })
    }

    pub fn approx_eq(&self, other: &Geodesic, tol: f64) -> bool {
        match (self, other) {
            (Geodesic::HalfCircle(a), Geodesic::HalfCircle(b)) => a.approx_eq(b, tol),
            (Geodesic::VerticalRay { foot: a }, Geodesic::VerticalRay { foot: b }) => {
                tol::close(*a, *b, tol)
            }
            _ => false,
        }
    }
}

/// Image of `g` under `m`.
pub fn image_of_geodesic(m: &Moebius, g: &Geodesic) -> Geodesic {
    g.image(m)
}

/// The hyperbolic map `z ↦ -r r̃ / (z - O) + Õ` taking `src = (a, b)` onto
/// `dst = (c, d)` with `a ↦ d` and `b ↦ c`.
///
/// Requires `a < b < c < d`, so the two half-circles are disjoint and each
/// lies outside the other.
pub fn pairing_map(src: &Geodesic, dst: &Geodesic) -> Result<Moebius, GeometryError> {
    let (Some(s), Some(t)) = (src.as_half_circle(), dst.as_half_circle()) else {
        return Err(GeometryError::NotHalfCircle);
    };
    pairing_map_circles(s, t)
}

pub fn pairing_map_circles(src: &HalfCircle, dst: &HalfCircle) -> Result<Moebius, GeometryError> {
    let (a, b, c, d) = (src.left(), src.right(), dst.left(), dst.right());
    if !(a < b && b < c && c < d) {
        return Err(GeometryError::OverlappingCircles { a, b, c, d });
    }
    let (o, r) = (src.center, src.radius);
    let (o2, r2) = (dst.center, dst.radius);
    let m =
        Moebius::normalize(o2, -r * r2 - o * o2, 1.0, -o).map_err(|_| GeometryError::NonFinite)?;
    debug_assert_eq!(m.classify(), MapClass::Hyperbolic);
    Ok(m)
}

/// Discriminant `(O - Õ)^2 - 4 r r̃` of the fixed-point quadratic of the
/// pairing map; positive for every admissible configuration.
pub fn pairing_discriminant(src: &HalfCircle, dst: &HalfCircle) -> f64 {
    let gap = src.center - dst.center;
    gap * gap - 4.0 * src.radius * dst.radius
}

/// True when every pair of half-circles is disjoint or tangent on the real
/// axis: `|O_i - O_j| >= r_i + r_j` up to [`tol::TANGENCY`].
pub fn mutually_exterior(circles: &[HalfCircle]) -> bool {
    first_overlap(circles).is_none()
}

/// First overlapping pair `(i, j)`, if any.
pub fn first_overlap(circles: &[HalfCircle]) -> Option<(usize, usize)> {
    // Sweep in order of left endpoint; only neighbors whose spans intersect
    // can overlap.
    let mut order: Vec<usize> = (0..circles.len()).collect();
    order.sort_by(|&i, &j| circles[i].left().total_cmp(&circles[j].left()));
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            if circles[j].left() >= circles[i].right() {
                break;
            }
            let sep = (circles[i].center - circles[j].center).abs();
            if sep < circles[i].radius + circles[j].radius - tol::TANGENCY {
                return Some((i.min(j), i.max(j)));
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Exterior,
    Interior,
}

/// Intersection of sides of geodesics.
///
/// An open region uses strict inequalities, so points on a bounding geodesic
/// are outside it. A closed region accepts them.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Region {
    pub constraints: Vec<(Geodesic, Side)>,
    pub closed: bool,
}

impl Region {
    pub fn open(constraints: Vec<(Geodesic, Side)>) -> Self {
        Region {
            constraints,
            closed: false,
        }
    }

    pub fn with(mut self, g: Geodesic, side: Side) -> Self {
        self.constraints.push((g, side));
        self
    }

    pub fn closure(&self) -> Region {
        Region {
            constraints: self.constraints.clone(),
            closed: true,
        }
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn contains(&self, w: UhPoint) -> bool {
        self.constraints.iter().all(|(g, side)| {
            let (inside_ext, inside_int) = (g.ext_contains(w), g.int_contains(w));
            match (side, self.closed) {
                (Side::Exterior, false) => inside_ext,
                (Side::Interior, false) => inside_int,
                (Side::Exterior, true) => !inside_int,
                (Side::Interior, true) => !inside_ext,
            }
        })
    }
}
