//! Static SVG figures. Output depends only on the inputs, so re-running a
//! command with the same seed reproduces the file byte for byte.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::NormSpec;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Layer {
    Polyline {
        points: Vec<[f64; 2]>,
        closed: bool,
        stroke: String,
        width: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dash: Option<String>,
    },
    Markers {
        points: Vec<[f64; 2]>,
        labels: Vec<String>,
        fill: String,
    },
}

/// A diagram in data coordinates; the y axis points up.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FigureSpec {
    /// `[xmin, ymin, xmax, ymax]`.
    pub viewbox: [f64; 4],
    pub layers: Vec<Layer>,
}

impl FigureSpec {
    /// Empty figure whose box holds every point of `points` with a margin.
    pub fn around<'a>(points: impl IntoIterator<Item = &'a [f64; 2]>) -> Self {
        let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
        for p in points {
            b[0] = b[0].min(p[0]);
            b[1] = b[1].min(p[1]);
            b[2] = b[2].max(p[0]);
            b[3] = b[3].max(p[1]);
        }
        if !b.iter().all(|v| v.is_finite()) {
            b = [-1.0, -1.0, 1.0, 1.0];
        }
        let pad = 0.08 * (b[2] - b[0]).max(b[3] - b[1]).max(1e-9);
        Self {
            viewbox: [b[0] - pad, b[1] - pad, b[2] + pad, b[3] + pad],
            layers: Vec::new(),
        }
    }

    pub fn render(&self) -> Result<String> {
        let [x0, y0, x1, y1] = self.viewbox;
        if !(x1 > x0 && y1 > y0) || !self.viewbox.iter().all(|v| v.is_finite()) {
            return Err(Error::input("figure viewbox must be finite and non-empty"));
        }
        let size = 480.0;
        let scale = size / (x1 - x0).max(y1 - y0);
        let (w, h) = ((x1 - x0) * scale, (y1 - y0) * scale);
        let map = |p: &[f64; 2]| -> Result<(f64, f64)> {
            if !(p[0].is_finite() && p[1].is_finite()) {
                return Err(Error::input("figure coordinates must be finite"));
            }
            Ok(((p[0] - x0) * scale, (y1 - p[1]) * scale))
        };
        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.2}" height="{h:.2}" viewBox="0 0 {w:.2} {h:.2}">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        for layer in &self.layers {
            match layer {
                Layer::Polyline {
                    points,
                    closed,
                    stroke,
                    width,
                    dash,
                } => {
                    let mut coords = String::new();
                    for p in points {
                        let (x, y) = map(p)?;
                        let _ = write!(coords, "{x:.3},{y:.3} ");
                    }
                    let tag = if *closed { "polygon" } else { "polyline" };
                    let dash = dash
                        .as_ref()
                        .map(|d| format!(r#" stroke-dasharray="{}""#, escape(d)))
                        .unwrap_or_default();
                    let _ = writeln!(
                        s,
                        r#"<{tag} points="{}" fill="none" stroke="{}" stroke-width="{width:.2}"{dash}/>"#,
                        coords.trim_end(),
                        escape(stroke)
                    );
                }
                Layer::Markers { points, labels, fill } => {
                    for (i, p) in points.iter().enumerate() {
                        let (x, y) = map(p)?;
                        let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3.5" fill="{}"/>"#, escape(fill));
                        if let Some(l) = labels.get(i) {
                            let _ = writeln!(
                                s,
                                r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="13">{}</text>"#,
                                x + 6.0,
                                y - 6.0,
                                escape(l)
                            );
                        }
                    }
                }
            }
        }
        s.push_str("</svg>\n");
        Ok(s)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// `center + radius·S` where `S` is the unit circle of a planar norm.
pub fn norm_circle(norm: &NormSpec, center: [f64; 2], radius: f64, samples: usize) -> Vec<[f64; 2]> {
    (0..samples)
        .map(|k| {
            let a = std::f64::consts::TAU * k as f64 / samples as f64;
            let d = [a.cos(), a.sin()];
            let s = radius / norm.eval(&d);
            [center[0] + s * d[0], center[1] + s * d[1]]
        })
        .collect()
}

pub fn polyline(points: Vec<[f64; 2]>, closed: bool, stroke: &str, width: f64) -> Layer {
    Layer::Polyline {
        points,
        closed,
        stroke: stroke.into(),
        width,
        dash: None,
    }
}
