//! Minimal SVG 1.1 writer for construction drawings and scan charts.

use lebesgue::geom::{ArcPolygon, Orientation, Piece, Point2};
use std::fmt::Write;

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Drawing in world coordinates (unit = shape diameter), y pointing up.
pub struct Figure {
    lo: Point2,
    hi: Point2,
    px: f64,
    defs: String,
    body: String,
}

impl Figure {
    pub fn new(lo: Point2, hi: Point2, px_per_unit: f64) -> Self {
        Self { lo, hi, px: px_per_unit, defs: String::new(), body: String::new() }
    }

    /// Square view of half-width `r` around the origin.
    pub fn centered(r: f64, px_per_unit: f64) -> Self {
        Self::new(Point2::new(-r, -r), Point2::new(r, r), px_per_unit)
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        ((p.x - self.lo.x) * self.px, (self.hi.y - p.y) * self.px)
    }

    fn width(&self) -> f64 {
        (self.hi.x - self.lo.x) * self.px
    }

    fn height(&self) -> f64 {
        (self.hi.y - self.lo.y) * self.px
    }

    pub fn polygon_path(&self, pts: &[Point2]) -> String {
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let (x, y) = self.map(*p);
            let _ = write!(d, "{}{x:.3} {y:.3} ", if i == 0 { "M" } else { "L" });
        }
        d.push('Z');
        d
    }

    /// Path with true circular arcs. After the y flip a ccw world arc runs
    /// clockwise on screen, which is SVG's sweep flag 1.
    pub fn arc_path(&self, poly: &ArcPolygon) -> String {
        let mut d = String::new();
        if let Some(first) = poly.pieces.first() {
            let (x, y) = self.map(first.start());
            let _ = write!(d, "M{x:.3} {y:.3} ");
        }
        for piece in &poly.pieces {
            let (x, y) = self.map(piece.end());
            match piece {
                Piece::Line { .. } => {
                    let _ = write!(d, "L{x:.3} {y:.3} ");
                }
                Piece::Arc(a) => {
                    let r = a.radius * self.px;
                    let large = u8::from(a.sweep().abs() > std::f64::consts::PI);
                    let sweep = u8::from(a.orientation == Orientation::Ccw);
                    let _ = write!(d, "A{r:.3} {r:.3} 0 {large} {sweep} {x:.3} {y:.3} ");
                }
            }
        }
        d.push('Z');
        d
    }

    pub fn path(&mut self, d: &str, style: &str) {
        let _ = writeln!(self.body, r#"<path d="{d}" style="{style}"/>"#);
    }

    pub fn polygon(&mut self, pts: &[Point2], style: &str) {
        let d = self.polygon_path(pts);
        self.path(&d, style);
    }

    pub fn arc_polygon(&mut self, poly: &ArcPolygon, style: &str) {
        if !poly.is_empty() {
            let d = self.arc_path(poly);
            self.path(&d, style);
        }
    }

    /// `fill` painted inside `area` except where `hole` is.
    pub fn masked(&mut self, id: &str, area: &str, hole: &str, fill: &str) {
        let (w, h) = (self.width(), self.height());
        let _ = writeln!(
            self.defs,
            r#"<mask id="{id}" maskUnits="userSpaceOnUse" x="0" y="0" width="{w:.3}" height="{h:.3}"><rect x="0" y="0" width="{w:.3}" height="{h:.3}" fill="white"/><path d="{hole}" fill="black"/></mask>"#
        );
        let _ = writeln!(self.body, r#"<path d="{area}" fill="{fill}" mask="url(#{id})"/>"#);
    }

    pub fn dot(&mut self, p: Point2, label: &str) {
        let (x, y) = self.map(p);
        let _ = writeln!(self.body, r##"<circle cx="{x:.3}" cy="{y:.3}" r="2" fill="#222"/>"##);
        if !label.is_empty() {
            let _ = writeln!(self.body, r#"<text x="{:.3}" y="{:.3}" font-size="11" font-family="sans-serif">{}</text>"#, x + 3.0, y - 3.0, esc(label));
        }
    }

    pub fn caption(&mut self, text: &str) {
        let _ = writeln!(self.body, r#"<text x="8" y="16" font-size="13" font-family="sans-serif">{}</text>"#, esc(text));
    }

    fn scale_bar(&self) -> String {
        let len = 0.25 * self.px;
        let (x0, y0) = (10.0, self.height() - 14.0);
        format!(
            r##"<g font-size="11" font-family="sans-serif"><line x1="{x0}" y1="{y0}" x2="{:.3}" y2="{y0}" stroke="#000" stroke-width="2"/><text x="{x0}" y="{:.3}">0.25 (unit = diameter)</text></g>"##,
            x0 + len,
            y0 - 4.0
        )
    }

    pub fn finish(self) -> String {
        let (w, h) = (self.width(), self.height());
        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#);
        if !self.defs.is_empty() {
            let _ = write!(s, "<defs>\n{}</defs>\n", self.defs);
        }
        let _ = writeln!(s, r#"<rect x="0" y="0" width="{w:.3}" height="{h:.3}" fill="white"/>"#);
        s.push_str(&self.body);
        s.push_str(&self.scale_bar());
        s.push_str("\n</svg>\n");
        s
    }
}

pub struct Series<'a> {
    pub name: &'a str,
    pub points: Vec<(f64, f64)>,
    pub color: &'a str,
}

/// Line chart with optional horizontal reference lines.
pub fn line_chart(title: &str, x_label: &str, y_label: &str, series: &[Series], refs: &[(&str, f64)]) -> String {
    let (w, h) = (720.0, 440.0);
    let (ml, mr, mt, mb) = (90.0, 20.0, 40.0, 60.0);
    let xs = series.iter().flat_map(|s| s.points.iter().map(|p| p.0));
    let ys = series.iter().flat_map(|s| s.points.iter().map(|p| p.1)).chain(refs.iter().map(|r| r.1)).filter(|y| y.is_finite());
    let (x0, x1) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
    let (mut y0, mut y1) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| (a.min(y), b.max(y)));
    let (x0, x1) = if x0.is_finite() && x1 > x0 { (x0, x1) } else { (x0.min(0.0), x0.max(0.0) + 1.0) };
    if !(y0.is_finite() && y1 > y0) {
        y0 = if y0.is_finite() { y0 - 0.5 } else { 0.0 };
        y1 = y0 + 1.0;
    }
    let pad = 0.05 * (y1 - y0);
    let (y0, y1) = (y0 - pad, y1 + pad);
    let sx = |x: f64| ml + (x - x0) / (x1 - x0) * (w - ml - mr);
    let sy = |y: f64| mt + (y1 - y) / (y1 - y0) * (h - mt - mb);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif">"#);
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{ml}" y="24" font-size="14">{}</text>"#, esc(title));
    let _ = writeln!(s, r##"<rect x="{ml}" y="{mt}" width="{}" height="{}" fill="none" stroke="#000"/>"##, w - ml - mr, h - mt - mb);
    for k in 0..=4 {
        let fx = x0 + (x1 - x0) * k as f64 / 4.0;
        let fy = y0 + (y1 - y0) * k as f64 / 4.0;
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" font-size="10" text-anchor="middle">{fx:.4}</text>"#, sx(fx), h - mb + 14.0);
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" font-size="10" text-anchor="end">{fy:.6}</text>"#, ml - 4.0, sy(fy) + 3.0);
    }
    let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="middle">{}</text>"#, (ml + w - mr) / 2.0, h - 20.0, esc(x_label));
    let _ = writeln!(s, r#"<text x="14" y="{:.1}" font-size="12" transform="rotate(-90 14 {:.1})" text-anchor="middle">{}</text>"#, (mt + h - mb) / 2.0, (mt + h - mb) / 2.0, esc(y_label));
    for (name, y) in refs {
        let _ = writeln!(s, r##"<line x1="{ml}" y1="{:.2}" x2="{}" y2="{:.2}" stroke="#c00" stroke-dasharray="6 4"/>"##, sy(*y), w - mr, sy(*y));
        let _ = writeln!(s, r##"<text x="{}" y="{:.2}" font-size="10" text-anchor="end" fill="#c00">{}</text>"##, w - mr - 4.0, sy(*y) - 4.0, esc(name));
    }
    for (i, se) in series.iter().enumerate() {
        let pts: Vec<String> = se.points.iter().filter(|p| p.1.is_finite()).map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.5"/>"#, pts.join(" "), se.color);
        let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="11" fill="{}">{}</text>"#, ml + 8.0, mt + 14.0 + 14.0 * i as f64, se.color, esc(se.name));
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="10">lengths in units of the diameter, areas in diameter²</text>"#, ml, h - 6.0);
    s.push_str("</svg>\n");
    s
}
