//! Pictures of rank-two arrangements in simple-coroot coordinates.
//!
//! Geometry here is floating point; it only decides what is drawn.

use crate::arrangement::Arrangement;
use crate::liecore::{Point, RootSystem};
use crate::rational::to_f64;
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SvgError {
    #[error("only rank-two arrangements can be drawn, got rank {0}")]
    NotRankTwo(usize),
    #[error("{labels} labels for {regions} regions")]
    LabelCount { labels: usize, regions: usize },
}

/// A circled point, e.g. a characteristic.
#[derive(Debug, Clone)]
pub struct Marker {
    pub point: Point,
    pub label: String,
}

const SIZE: f64 = 480.0;
const MARGIN: f64 = 32.0;
const EPS: f64 = 1e-9;

type P2 = [f64; 2];

/// `n · p ≥ b`.
#[derive(Clone, Copy)]
struct HalfPlane {
    n: P2,
    b: f64,
}

impl HalfPlane {
    fn value(&self, p: P2) -> f64 {
        self.n[0] * p[0] + self.n[1] * p[1] - self.b
    }
}

fn line_intersection(a: &HalfPlane, b: &HalfPlane) -> Option<P2> {
    let det = a.n[0] * b.n[1] - a.n[1] * b.n[0];
    if det.abs() < EPS {
        return None;
    }
    Some([
        (a.b * b.n[1] - a.n[1] * b.b) / det,
        (a.n[0] * b.b - a.b * b.n[0]) / det,
    ])
}

/// Sutherland–Hodgman clip of a convex polygon against a half-plane.
fn clip(poly: &[P2], h: &HalfPlane) -> Vec<P2> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        let (vp, vq) = (h.value(p), h.value(q));
        if vp >= -EPS {
            out.push(p);
        }
        if (vp > EPS && vq < -EPS) || (vp < -EPS && vq > EPS) {
            let t = vp / (vp - vq);
            out.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
        }
    }
    out
}

/// The segment of the line `n · p = b` inside a convex polygon.
fn clip_line(line: &HalfPlane, poly: &[P2]) -> Option<(P2, P2)> {
    let d = [-line.n[1], line.n[0]];
    let nn = line.n[0] * line.n[0] + line.n[1] * line.n[1];
    let p0 = [line.n[0] * line.b / nn, line.n[1] * line.b / nn];
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        // Inward normal of the edge p→q for a counter-clockwise polygon.
        let n = [p[1] - q[1], q[0] - p[0]];
        let num = n[0] * (p0[0] - p[0]) + n[1] * (p0[1] - p[1]);
        let den = n[0] * d[0] + n[1] * d[1];
        if den.abs() < EPS {
            if num < -EPS {
                return None;
            }
        } else if den > 0.0 {
            lo = lo.max(-num / den);
        } else {
            hi = hi.min(-num / den);
        }
    }
    (hi - lo > EPS).then(|| {
        (
            [p0[0] + lo * d[0], p0[1] + lo * d[1]],
            [p0[0] + hi * d[0], p0[1] + hi * d[1]],
        )
    })
}

fn centroid(poly: &[P2]) -> P2 {
    let mut area = 0.0;
    let mut c = [0.0, 0.0];
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        let cross = p[0] * q[1] - q[0] * p[1];
        area += cross;
        c[0] += (p[0] + q[0]) * cross;
        c[1] += (p[1] + q[1]) * cross;
    }
    if area.abs() < EPS {
        let k = poly.len().max(1) as f64;
        return [
            poly.iter().map(|p| p[0]).sum::<f64>() / k,
            poly.iter().map(|p| p[1]).sum::<f64>() / k,
        ];
    }
    [c[0] / (3.0 * area), c[1] / (3.0 * area)]
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn points_attr(poly: &[P2], to_screen: impl Fn(P2) -> P2) -> String {
    poly.iter()
        .map(|&p| {
            let s = to_screen(p);
            format!("{:.3},{:.3}", s[0], s[1])
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Draws the chamber walls, one `<line>` per hyperplane, each region with
/// its label, and the markers. `labels` is indexed by region id; an empty
/// slice labels regions by id.
pub fn render(
    rs: &RootSystem,
    arr: &Arrangement,
    labels: &[String],
    markers: &[Marker],
) -> Result<String, SvgError> {
    if rs.rank() != 2 {
        return Err(SvgError::NotRankTwo(rs.rank()));
    }
    if !labels.is_empty() && labels.len() != arr.regions.len() {
        return Err(SvgError::LabelCount {
            labels: labels.len(),
            regions: arr.regions.len(),
        });
    }
    let walls: Vec<HalfPlane> = rs
        .cartan()
        .iter()
        .map(|row| HalfPlane {
            n: [row[0] as f64, row[1] as f64],
            b: 0.0,
        })
        .collect();
    let hyperplanes: Vec<HalfPlane> = arr
        .hyperplanes
        .iter()
        .map(|h| HalfPlane {
            n: [h.weight.0[0] as f64, h.weight.0[1] as f64],
            b: to_f64(&h.level),
        })
        .collect();

    // Extent: every crossing inside the closed chamber, and every marker.
    let in_chamber = |p: P2| walls.iter().all(|w| w.value(p) >= -1e-7);
    let mut extent: f64 = to_f64(&arr.level).abs().max(1.0);
    let lines: Vec<&HalfPlane> = walls.iter().chain(&hyperplanes).collect();
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            if let Some(p) = line_intersection(a, b).filter(|&p| in_chamber(p)) {
                extent = extent.max(p[0]).max(p[1]);
            }
        }
    }
    for m in markers {
        let c = m.point.coroot_coords();
        extent = extent.max(to_f64(&c[0])).max(to_f64(&c[1]));
    }
    let extent = extent * 1.25;
    let scale = (SIZE - 2.0 * MARGIN) / extent;
    let to_screen = |p: P2| [MARGIN + p[0] * scale, SIZE - MARGIN - p[1] * scale];

    let window = vec![[0.0, 0.0], [extent, 0.0], [extent, extent], [0.0, extent]];
    let view = walls.iter().fold(window.clone(), |poly, w| clip(&poly, w));

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);

    // Regions.
    let mut label_points = Vec::with_capacity(arr.regions.len());
    for r in &arr.regions {
        let poly = r.closure_ineqs.iter().fold(view.clone(), |poly, row| {
            clip(
                &poly,
                &HalfPlane {
                    n: [row.normal[0] as f64, row.normal[1] as f64],
                    b: to_f64(&row.bound),
                },
            )
        });
        if poly.len() >= 3 {
            let _ = writeln!(
                svg,
                r##"<polygon class="region" data-region="{}" points="{}" fill="#dde8f5" fill-opacity="0.35" stroke="none"/>"##,
                r.id,
                points_attr(&poly, to_screen)
            );
        }
        label_points.push(centroid(&poly));
    }

    // Chamber walls.
    for (i, w) in walls.iter().enumerate() {
        if let Some((p, q)) = clip_line(w, &window) {
            let (p, q) = (to_screen(p), to_screen(q));
            let _ = writeln!(
                svg,
                r#"<path class="wall" data-wall="{i}" d="M {:.3} {:.3} L {:.3} {:.3}" stroke="black" stroke-width="2"/>"#,
                p[0], p[1], q[0], q[1]
            );
        }
    }

    // Hyperplanes, always one element each.
    for (h, line) in arr.hyperplanes.iter().zip(&hyperplanes) {
        let (p, q) = clip_line(line, &view).unwrap_or(([0.0, 0.0], [0.0, 0.0]));
        let (p, q) = (to_screen(p), to_screen(q));
        let _ = writeln!(
            svg,
            r##"<line class="hyperplane" data-weight="{}" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#3366aa" stroke-width="1.5"/>"##,
            escape(&h.weight.to_string()),
            p[0],
            p[1],
            q[0],
            q[1]
        );
    }

    for (r, c) in arr.regions.iter().zip(&label_points) {
        let s = to_screen(*c);
        let text = labels.get(r.id).cloned().unwrap_or_else(|| r.id.to_string());
        let _ = writeln!(
            svg,
            r#"<text class="region-label" x="{:.3}" y="{:.3}" font-family="serif" font-size="16" text-anchor="middle">{}</text>"#,
            s[0],
            s[1],
            escape(&text)
        );
    }

    for m in markers {
        let c = m.point.coroot_coords();
        let s = to_screen([to_f64(&c[0]), to_f64(&c[1])]);
        let _ = writeln!(
            svg,
            r##"<circle class="marker" cx="{:.3}" cy="{:.3}" r="5" fill="none" stroke="#aa3333" stroke-width="2"/>"##,
            s[0],
            s[1]
        );
        let _ = writeln!(
            svg,
            r##"<text class="marker-label" x="{:.3}" y="{:.3}" font-family="serif" font-size="13" fill="#aa3333">{}</text>"##,
            s[0] + 7.0,
            s[1] - 7.0,
            escape(&m.label)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::default_level;
    use crate::liecore::{Series, WeightSystem};
    use crate::orbits::{ExampleModule, OrbitModel};

    #[test]
    fn example_picture() {
        let m = ExampleModule::new();
        let ws = m.weight_system();
        let arr = Arrangement::build(ws, &default_level()).unwrap();
        let svg = render(
            ws.root_system(),
            &arr,
            &[],
            &[Marker {
                point: Point::from_ints(&[2, 4]),
                label: "O_5".into(),
            }],
        )
        .unwrap();
        assert_eq!(svg.matches("<line ").count(), 4);
        assert_eq!(svg.matches("class=\"region-label\"").count(), 6);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn rejects_other_ranks() {
        let rs = RootSystem::simple(Series::A, 3).unwrap();
        let ws = WeightSystem::new(&rs, &rs.adjoint_highest_weights()).unwrap();
        let arr = Arrangement::build(&ws, &default_level()).unwrap();
        assert_eq!(render(&rs, &arr, &[], &[]), Err(SvgError::NotRankTwo(3)));
    }

    #[test]
    fn clipping() {
        let square = vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let half = clip(&square, &HalfPlane { n: [1.0, 0.0], b: 0.5 });
        assert_eq!(half.len(), 4);
        let c = centroid(&half);
        assert!((c[0] - 0.75).abs() < 1e-12 && (c[1] - 0.5).abs() < 1e-12);
        let (p, q) = clip_line(&HalfPlane { n: [0.0, 1.0], b: 0.5 }, &square).unwrap();
        assert!((p[1] - 0.5).abs() < 1e-12 && ((p[0] - q[0]).abs() - 1.0).abs() < 1e-12);
        assert!(clip_line(&HalfPlane { n: [0.0, 1.0], b: 2.0 }, &square).is_none());
    }
}
