//! SVG 1.1 drawings of side configurations and orbit tiles.
//!
//! The real axis is horizontal at the bottom of the picture and `y` grows
//! upward. Half-circles are written as exact elliptical-arc path commands and
//! the tile layer is clipped to the viewport.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geodesic::Geodesic;
use crate::tess::{GroupPresentation, OrbitTile};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error("viewport [{x_min}, {x_max}] x (0, {y_max}] has no area")]
    EmptyViewport { x_min: f64, x_max: f64, y_max: f64 },
}

/// `[x_min, x_max] × (0, y_max]` in the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    pub x_min: f64,
    pub x_max: f64,
    pub y_max: f64,
}

impl Viewport {
    pub fn new(x_min: f64, x_max: f64, y_max: f64) -> Result<Self, RenderError> {
        let v = Viewport {
            x_min,
            x_max,
            y_max,
        };
        v.check()?;
        Ok(v)
    }

    fn check(&self) -> Result<(), RenderError> {
        let ok = [self.x_min, self.x_max, self.y_max]
            .iter()
            .all(|v| v.is_finite())
            && self.x_max > self.x_min
            && self.y_max > 0.0;
        if ok {
            Ok(())
        } else {
            Err(RenderError::EmptyViewport {
                x_min: self.x_min,
                x_max: self.x_max,
                y_max: self.y_max,
            })
        }
    }

    /// Smallest padded viewport showing every half-circle in `arcs`.
    pub fn fit(arcs: &[Geodesic]) -> Viewport {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for g in arcs {
            match g {
                Geodesic::HalfCircle(h) => {
                    lo = lo.min(h.left());
                    hi = hi.max(h.right());
                }
                Geodesic::VerticalRay { foot } => {
                    lo = lo.min(*foot);
                    hi = hi.max(*foot);
                }
            }
        }
        if !(lo < hi) {
            let c = if lo.is_finite() { lo } else { 0.0 };
            lo = c - 1.0;
            hi = c + 1.0;
        }
        let pad = 0.1 * (hi - lo);
        let (x_min, x_max) = (lo - pad, hi + pad);
        Viewport {
            x_min,
            x_max,
            y_max: 0.5 * (x_max - x_min),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Style {
    /// Picture width in pixels; the height follows the viewport's aspect.
    pub width_px: f64,
    pub stroke_width: f64,
    /// Stroke colors cycled by word length.
    pub palette: Vec<String>,
    /// Label the sides of the identity tile.
    pub labels: bool,
    /// Arcs smaller than this many pixels are skipped.
    pub min_radius_px: f64,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            width_px: 800.0,
            stroke_width: 1.0,
            palette: [
                "#1f4e9c", "#c0392b", "#27ae60", "#8e44ad", "#d35400", "#7f8c8d",
            ]
            .map(String::from)
            .to_vec(),
            labels: false,
            min_radius_px: 0.05,
        }
    }
}

struct Frame {
    vp: Viewport,
    scale: f64,
    height: f64,
}

impl Frame {
    fn x(&self, x: f64) -> f64 {
        (x - self.vp.x_min) * self.scale
    }

    fn y(&self, y: f64) -> f64 {
        (self.vp.y_max - y) * self.scale
    }

    /// Path data for a geodesic, or `None` when it misses the viewport.
    fn path(&self, g: &Geodesic, min_radius_px: f64) -> Option<(&'static str, String)> {
        match g {
            Geodesic::HalfCircle(h) => {
                let r = h.radius * self.scale;
                if r < min_radius_px || h.right() < self.vp.x_min || h.left() > self.vp.x_max {
                    return None;
                }
                let y0 = self.height;
                Some((
                    "arc",
                    format!(
                        "M {:.3} {:.3} A {:.3} {:.3} 0 0 1 {:.3} {:.3}",
                        self.x(h.left()),
                        y0,
                        r,
                        r,
                        self.x(h.right()),
                        y0
                    ),
                ))
            }
            Geodesic::VerticalRay { foot } => {
                if *foot < self.vp.x_min || *foot > self.vp.x_max {
                    return None;
                }
                Some((
                    "ray",
                    format!("M {:.3} {:.3} V 0", self.x(*foot), self.height),
                ))
            }
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Draws the tiles' arcs over the coordinate axes. Output bytes depend only
/// on the inputs.
pub fn render_svg(
    pres: &GroupPresentation,
    tiles: &[OrbitTile],
    viewport: &Viewport,
    style: &Style,
) -> Result<Vec<u8>, RenderError> {
    viewport.check()?;
    let scale = style.width_px / (viewport.x_max - viewport.x_min);
    let frame = Frame {
        vp: *viewport,
        scale,
        height: viewport.y_max * scale,
    };
    let (w, h) = (style.width_px, frame.height);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    );
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.3}" height="{h:.3}" viewBox="0 0 {w:.3} {h:.3}">"#
    );
    let _ = writeln!(
        out,
        r#"<defs><clipPath id="viewport"><rect x="0" y="0" width="{w:.3}" height="{h:.3}"/></clipPath></defs>"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{w:.3}" height="{h:.3}" fill="white"/>"#
    );

    let _ = writeln!(
        out,
        r##"<g id="axes" stroke="#999999" stroke-width="{:.3}">"##,
        style.stroke_width * 0.5
    );
    let _ = writeln!(out, r#"<line x1="0" y1="{h:.3}" x2="{w:.3}" y2="{h:.3}"/>"#);
    if viewport.x_min < 0.0 && viewport.x_max > 0.0 {
        let x0 = frame.x(0.0);
        let _ = writeln!(
            out,
            r#"<line x1="{x0:.3}" y1="0" x2="{x0:.3}" y2="{h:.3}" stroke-dasharray="4 4"/>"#
        );
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(
        out,
        r#"<g id="tiles" clip-path="url(#viewport)" fill="none" stroke-width="{:.3}">"#,
        style.stroke_width
    );
    for tile in tiles {
        let color = if style.palette.is_empty() {
            "black".to_string()
        } else {
            style.palette[tile.word.len() % style.palette.len()].clone()
        };
        let paths: Vec<(&str, String)> = tile
            .arcs
            .iter()
            .filter_map(|g| frame.path(g, style.min_radius_px))
            .collect();
        if paths.is_empty() {
            continue;
        }
        let _ = writeln!(
            out,
            r#"<g class="tile" data-word="{}" stroke="{}">"#,
            escape(&pres.word_label(&tile.word)),
            escape(&color)
        );
        for (class, d) in paths {
            let _ = writeln!(out, r#"<path class="{class}" d="{d}"/>"#);
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</g>");

    if style.labels {
        let _ = writeln!(
            out,
            r#"<g id="labels" font-family="serif" font-size="12" text-anchor="middle">"#
        );
        for (g, label) in pres.boundary_arcs().iter().zip(pres.arc_labels()) {
            let (x, y) = match g {
                Geodesic::HalfCircle(c) => (c.center, c.radius),
                Geodesic::VerticalRay { foot } => (*foot, 0.5 * viewport.y_max),
            };
            if x < viewport.x_min || x > viewport.x_max {
                continue;
            }
            let _ = writeln!(
                out,
                r#"<text x="{:.3}" y="{:.3}">{}</text>"#,
                frame.x(x),
                (frame.y(y) - 4.0).max(12.0),
                escape(label)
            );
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</svg>");
    Ok(out.into_bytes())
}
