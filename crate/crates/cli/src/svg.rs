//! Deterministic SVG drawings of a surface in its polygon layout.

use std::fmt::Write;

use ward_core::flows::CylinderDecomposition;
use ward_core::periodic::{Label, Survivor};
use ward_core::Surface;

use crate::config::RenderOptions;

const MARGIN: f64 = 20.0;
const PALETTE: [&str; 8] = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948", "#b07aa1", "#9c755f"];

struct Canvas {
    min_x: f64,
    max_y: f64,
    width: f64,
    height: f64,
    scale: f64,
    body: String,
}

impl Canvas {
    fn new(s: &Surface, scale: f64) -> Self {
        let pts: Vec<(f64, f64)> = s.polygons().iter().flat_map(|p| p.vertices().iter().map(|v| v.to_f64())).collect();
        let min_x = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let max_x = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        let min_y = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let max_y = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        Canvas {
            min_x,
            max_y,
            width: (max_x - min_x) * scale + 2.0 * MARGIN,
            height: (max_y - min_y) * scale + 2.0 * MARGIN,
            scale,
            body: String::new(),
        }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (MARGIN + (x - self.min_x) * self.scale, MARGIN + (self.max_y - y) * self.scale)
    }

    fn polygon(&mut self, pts: &[(f64, f64)], style: &str) {
        let coords: Vec<String> = pts
            .iter()
            .map(|&p| {
                let (x, y) = self.map(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        writeln!(self.body, r#"<polygon points="{}" {style}/>"#, coords.join(" ")).unwrap();
    }

    fn text(&mut self, p: (f64, f64), size: f64, s: &str) {
        let (x, y) = self.map(p);
        writeln!(self.body, r#"<text x="{x:.2}" y="{y:.2}" font-size="{size:.1}" text-anchor="middle">{s}</text>"#).unwrap();
    }

    fn circle(&mut self, p: (f64, f64), r: f64, fill: &str) {
        let (x, y) = self.map(p);
        writeln!(self.body, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r:.1}" fill="{fill}" stroke="black"/>"#).unwrap();
    }

    fn finish(self, title: &str) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.2} {h:.2}\">\n<title>{title}</title>\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body,
            w = self.width,
            h = self.height
        )
    }
}

fn outlines(c: &mut Canvas, s: &Surface, opts: &RenderOptions) {
    for p in s.polygons() {
        let pts: Vec<_> = p.vertices().iter().map(|v| v.to_f64()).collect();
        c.polygon(&pts, r##"fill="none" stroke="#222" stroke-width="1.5""##);
    }
    if opts.labels {
        let size = (0.12 * opts.scale).clamp(8.0, 18.0);
        for (k, (a, b)) in s.gluing().pairs().into_iter().enumerate() {
            for e in [a, b] {
                let poly = s.polygon(e.0);
                let (p, q) = (poly.vertex(e.1).to_f64(), poly.vertex(e.1 + 1).to_f64());
                let (cx, cy) = poly.centroid().to_f64();
                let (mx, my) = ((p.0 + q.0) / 2.0, (p.1 + q.1) / 2.0);
                // pull the label slightly inside the polygon
                let at = (mx + 0.12 * (cx - mx), my + 0.12 * (cy - my));
                c.text(at, size * 0.8, &k.to_string());
            }
        }
    }
}

/// Sutherland-Hodgman clip of a polygon to `lo <= y <= hi`.
fn clip_band(pts: &[(f64, f64)], lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let mut cur = pts.to_vec();
    for (bound, keep_above) in [(lo, true), (hi, false)] {
        let inside = |p: &(f64, f64)| if keep_above { p.1 >= bound } else { p.1 <= bound };
        let mut next = Vec::new();
        for i in 0..cur.len() {
            let (a, b) = (cur[i], cur[(i + 1) % cur.len()]);
            if inside(&a) {
                next.push(a);
            }
            if inside(&a) != inside(&b) {
                let t = (bound - a.1) / (b.1 - a.1);
                next.push((a.0 + t * (b.0 - a.0), bound));
            }
        }
        cur = next;
        if cur.is_empty() {
            break;
        }
    }
    cur
}

/// Polygons with each cylinder's strips shaded.
pub fn decomposition_svg(s: &Surface, d: &CylinderDecomposition, title: &str, opts: &RenderOptions) -> String {
    let mut c = Canvas::new(s, opts.scale);
    let m = d.frame();
    let (a, b, cc, dd) = (m.a.to_f64(), m.b.to_f64(), m.c.to_f64(), m.d.to_f64());
    let det = a * dd - b * cc;
    let to_frame = |(x, y): (f64, f64)| (a * x + b * y, cc * x + dd * y);
    let from_frame = |(x, y): (f64, f64)| ((dd * x - b * y) / det, (-cc * x + a * y) / det);
    for cyl in d.cylinders() {
        let style = format!(r#"fill="{}" fill-opacity="0.55" stroke="none""#, PALETTE[cyl.id % PALETTE.len()]);
        for st in &cyl.strips {
            let framed: Vec<_> = s.polygon(st.polygon).vertices().iter().map(|v| to_frame(v.to_f64())).collect();
            let piece = clip_band(&framed, st.y0.to_f64(), st.y1.to_f64());
            if piece.len() >= 3 {
                let back: Vec<_> = piece.into_iter().map(from_frame).collect();
                c.polygon(&back, &style);
            }
        }
    }
    outlines(&mut c, s, opts);
    c.finish(title)
}

/// Polygons with periodic points marked by label.
pub fn survivors_svg(s: &Surface, survivors: &[Survivor], title: &str, opts: &RenderOptions) -> String {
    let mut c = Canvas::new(s, opts.scale);
    outlines(&mut c, s, opts);
    let r = (0.05 * opts.scale).clamp(3.0, 8.0);
    for sv in survivors {
        let fill = match sv.label {
            Label::Singularity => "#e15759",
            Label::PolygonCenter => "#4e79a7",
            Label::Other => "#59a14f",
        };
        // a vertex class is drawn at every corner that represents it
        let spots: Vec<(f64, f64)> = match sv.point.vertex {
            Some(class) => s.vertex_classes()[class]
                .corners
                .iter()
                .map(|&(p, i)| s.polygon(p).vertex(i).to_f64())
                .collect(),
            None => s.representatives(&sv.point).into_iter().map(|(_, v)| v.to_f64()).collect(),
        };
        for p in spots {
            c.circle(p, r, fill);
        }
        if opts.labels && sv.point.vertex.is_none() {
            let (x, y) = sv.point.pos.to_f64();
            c.text((x, y - 2.5 * r / opts.scale), r * 2.0, sv.label.as_str());
        }
    }
    c.finish(title)
}
