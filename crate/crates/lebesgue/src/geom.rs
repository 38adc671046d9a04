//! Planar geometry kernel: points, circular arcs, arc-polygons, convex hulls.
//!
//! Arc-polygons keep arcs exact (center, radius, angles). Areas are evaluated
//! as a chord polygon plus signed circular-segment terms, in coordinates local
//! to the first vertex so that tiny regions keep their relative accuracy.

use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use thiserror::Error;

/// Tolerances shared by every module.
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    /// Geometric predicates (closure, on-piece tests, residuals).
    pub predicate: f64,
    /// Containment slack for placed shapes.
    pub containment: f64,
}

pub const TOL: Tolerance = Tolerance { predicate: 1e-12, containment: 1e-9 };

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("degenerate hull: fewer than three non-collinear points")]
    DegenerateHull,
    #[error("arc-polygon is not closed: gap {gap:e} after piece {index}")]
    NotClosed { index: usize, gap: f64 },
    #[error("arc-polygon needs at least one piece")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Unit vector at angle `a`.
    pub fn polar(a: f64) -> Self {
        let (s, c) = a.sin_cos();
        Self { x: c, y: s }
    }

    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the cross product (the wedge `self ∧ o`).
    pub fn cross(self, o: Self) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn dist(self, o: Self) -> f64 {
        (self - o).norm()
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    /// Counterclockwise perpendicular.
    pub fn perp(self) -> Self {
        Self { x: -self.y, y: self.x }
    }

    pub fn unit(self) -> Self {
        self * (1.0 / self.norm())
    }

    pub fn rotate(self, a: f64) -> Self {
        let (s, c) = a.sin_cos();
        Self { x: c * self.x - s * self.y, y: s * self.x + c * self.y }
    }

    /// Mirror image across the line through the origin at angle `axis`.
    pub fn reflect(self, axis: f64) -> Self {
        let d = Self::polar(axis);
        d * (2.0 * self.dot(d)) - self
    }

    pub fn lerp(self, o: Self, t: f64) -> Self {
        self + (o - self) * t
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Point2 {
    fn add_assign(&mut self, o: Point2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// Normalizes an angle into `[0, 2π)`.
pub fn wrap_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// `θ − sin θ`, accurate for small θ.
pub fn theta_minus_sin(t: f64) -> f64 {
    if t.abs() < 2e-2 {
        let t2 = t * t;
        t * t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0 * (1.0 - t2 / 72.0)))
    } else {
        t - t.sin()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    Ccw,
    Cw,
}

/// Circular arc from `start_angle` to `end_angle` traversed in `orientation`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcSegment {
    pub center: Point2,
    pub radius: f64,
    pub start_angle: f64,
    pub end_angle: f64,
    pub orientation: Orientation,
}

impl ArcSegment {
    pub fn new(center: Point2, radius: f64, start_angle: f64, end_angle: f64, orientation: Orientation) -> Self {
        Self { center, radius, start_angle, end_angle, orientation }
    }

    /// Arc from point `a` to point `b` (both assumed on the circle) going the
    /// requested way round.
    pub fn through(center: Point2, radius: f64, a: Point2, b: Point2, orientation: Orientation) -> Self {
        Self::new(center, radius, (a - center).angle(), (b - center).angle(), orientation)
    }

    /// The shorter of the two arcs from `a` to `b`.
    pub fn minor(center: Point2, radius: f64, a: Point2, b: Point2) -> Self {
        let ccw = (b - center).cross(a - center) <= 0.0;
        let o = if ccw { Orientation::Ccw } else { Orientation::Cw };
        Self::through(center, radius, a, b, o)
    }

    /// Signed sweep: positive for ccw, negative for cw, magnitude in (0, 2π].
    pub fn sweep(&self) -> f64 {
        let d = wrap_angle(self.end_angle - self.start_angle);
        match self.orientation {
            Orientation::Ccw => {
                if d == 0.0 {
                    TAU
                } else {
                    d
                }
            }
            Orientation::Cw => {
                if d == 0.0 {
                    -TAU
                } else {
                    d - TAU
                }
            }
        }
    }

    pub fn point_at_angle(&self, a: f64) -> Point2 {
        self.center + Point2::polar(a) * self.radius
    }

    pub fn start(&self) -> Point2 {
        self.point_at_angle(self.start_angle)
    }

    pub fn end(&self) -> Point2 {
        self.point_at_angle(self.end_angle)
    }

    /// Point at parameter `t ∈ [0,1]` along the arc.
    pub fn point_at(&self, t: f64) -> Point2 {
        self.point_at_angle(self.start_angle + t * self.sweep())
    }

    /// Whether the direction `a` (from the center) lies on the arc.
    pub fn contains_angle(&self, a: f64, slack: f64) -> bool {
        let sw = self.sweep();
        let off = if sw >= 0.0 {
            wrap_angle(a - self.start_angle)
        } else {
            wrap_angle(self.start_angle - a)
        };
        off <= sw.abs() + slack || off >= TAU - slack
    }

    pub fn reversed(&self) -> Self {
        let o = match self.orientation {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
        };
        Self::new(self.center, self.radius, self.end_angle, self.start_angle, o)
    }

    /// `max (p · n)` over the arc's points.
    pub fn support(&self, n: Point2) -> f64 {
        if self.contains_angle(n.angle(), 0.0) {
            self.center.dot(n) + self.radius
        } else {
            self.start().dot(n).max(self.end().dot(n))
        }
    }
}

/// One boundary piece of an [`ArcPolygon`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Piece {
    Line { a: Point2, b: Point2 },
    Arc(ArcSegment),
}

impl Piece {
    pub fn line(a: Point2, b: Point2) -> Self {
        Piece::Line { a, b }
    }

    pub fn start(&self) -> Point2 {
        match self {
            Piece::Line { a, .. } => *a,
            Piece::Arc(arc) => arc.start(),
        }
    }

    pub fn end(&self) -> Point2 {
        match self {
            Piece::Line { b, .. } => *b,
            Piece::Arc(arc) => arc.end(),
        }
    }

    pub fn reversed(&self) -> Self {
        match self {
            Piece::Line { a, b } => Piece::Line { a: *b, b: *a },
            Piece::Arc(arc) => Piece::Arc(arc.reversed()),
        }
    }

    /// Points along the piece, including the start but not the end.
    pub fn sample(&self, n: usize, out: &mut Vec<Point2>) {
        let n = n.max(1);
        for k in 0..n {
            let t = k as f64 / n as f64;
            out.push(match self {
                Piece::Line { a, b } => a.lerp(*b, t),
                Piece::Arc(arc) => arc.point_at(t),
            });
        }
    }

    pub fn support(&self, n: Point2) -> f64 {
        match self {
            Piece::Line { a, b } => a.dot(n).max(b.dot(n)),
            Piece::Arc(arc) => arc.support(n),
        }
    }

    /// Euclidean distance from `p` to the piece.
    pub fn distance(&self, p: Point2) -> f64 {
        match self {
            Piece::Line { a, b } => {
                let d = *b - *a;
                let l2 = d.norm2();
                let t = if l2 == 0.0 { 0.0 } else { ((p - *a).dot(d) / l2).clamp(0.0, 1.0) };
                p.dist(a.lerp(*b, t))
            }
            Piece::Arc(arc) => {
                let r = p - arc.center;
                if arc.contains_angle(r.angle(), 0.0) {
                    (r.norm() - arc.radius).abs()
                } else {
                    p.dist(arc.start()).min(p.dist(arc.end()))
                }
            }
        }
    }

    /// Whether `p` lies on this piece within `tol`.
    pub fn contains_point(&self, p: Point2, tol: f64) -> bool {
        match self {
            Piece::Line { a, b } => {
                let d = *b - *a;
                let l2 = d.norm2();
                if l2 == 0.0 {
                    return p.dist(*a) <= tol;
                }
                let t = (p - *a).dot(d) / l2;
                let q = a.lerp(*b, t.clamp(0.0, 1.0));
                p.dist(q) <= tol
            }
            Piece::Arc(arc) => {
                let r = p - arc.center;
                (r.norm() - arc.radius).abs() <= tol
                    && arc.contains_angle(r.angle(), tol / arc.radius.max(tol))
            }
        }
    }
}

/// Closed counterclockwise boundary made of arcs and straight segments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcPolygon {
    pub pieces: Vec<Piece>,
}

impl ArcPolygon {
    /// Builds an arc-polygon, checking closure with tolerance `tol`.
    pub fn with_tolerance(pieces: Vec<Piece>, tol: f64) -> Result<Self, GeomError> {
        if pieces.is_empty() {
            return Err(GeomError::Empty);
        }
        for i in 0..pieces.len() {
            let gap = pieces[i].end().dist(pieces[(i + 1) % pieces.len()].start());
            if !(gap <= tol) {
                return Err(GeomError::NotClosed { index: i, gap });
            }
        }
        Ok(Self { pieces })
    }

    pub fn new(pieces: Vec<Piece>) -> Result<Self, GeomError> {
        Self::with_tolerance(pieces, TOL.predicate)
    }

    /// Empty region (area zero, contains nothing).
    pub fn empty() -> Self {
        Self { pieces: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Circle of radius `r` as four quarter arcs.
    pub fn circle(center: Point2, r: f64) -> Self {
        let pieces = (0..4)
            .map(|k| {
                let a = k as f64 * PI / 2.0;
                Piece::Arc(ArcSegment::new(center, r, a, a + PI / 2.0, Orientation::Ccw))
            })
            .collect();
        Self { pieces }
    }

    pub fn polygon(vertices: &[Point2]) -> Self {
        let n = vertices.len();
        let pieces = (0..n).map(|i| Piece::line(vertices[i], vertices[(i + 1) % n])).collect();
        Self { pieces }
    }

    /// Signed area (positive for counterclockwise traversal).
    pub fn signed_area(&self) -> f64 {
        if self.pieces.is_empty() {
            return 0.0;
        }
        let o = self.pieces[0].start();
        let mut twice = 0.0;
        let mut seg = 0.0;
        for piece in &self.pieces {
            let a = piece.start() - o;
            let b = piece.end() - o;
            twice += a.cross(b);
            if let Piece::Arc(arc) = piece {
                seg += 0.5 * arc.radius * arc.radius * theta_minus_sin(arc.sweep());
            }
        }
        0.5 * twice + seg
    }

    pub fn area(&self) -> f64 {
        self.signed_area()
    }

    /// Winding number of the boundary around `p`: chord polygon plus the
    /// circular segment cut off by each arc.
    pub fn winding(&self, p: Point2) -> i32 {
        if self.pieces.is_empty() {
            return 0;
        }
        let verts: Vec<Point2> = self.pieces.iter().map(|q| q.start()).collect();
        let mut w = polygon_winding(&verts, p);
        for piece in &self.pieces {
            if let Piece::Arc(arc) = piece {
                let a = arc.start();
                let b = arc.end();
                let inside_circle = (p - arc.center).norm2() < arc.radius * arc.radius;
                if !inside_circle {
                    continue;
                }
                // Segment lies on the arc side of the chord.
                let side = (b - a).cross(p - a);
                let sw = arc.sweep();
                let on_arc_side = if sw > 0.0 { side < 0.0 } else { side > 0.0 };
                let in_segment = on_arc_side;
                if in_segment {
                    w += if sw > 0.0 { 1 } else { -1 };
                }
            }
        }
        w
    }

    pub fn contains(&self, p: Point2) -> bool {
        self.winding(p) != 0
    }

    /// Distance from `p` to the boundary.
    pub fn boundary_distance(&self, p: Point2) -> f64 {
        self.pieces.iter().map(|q| q.distance(p)).fold(f64::INFINITY, f64::min)
    }

    /// Signed depth of `p`: positive inside, negative outside.
    pub fn depth(&self, p: Point2) -> f64 {
        let d = self.boundary_distance(p);
        if self.contains(p) {
            d
        } else {
            -d
        }
    }

    /// Same region traversed the other way.
    pub fn reversed(&self) -> Self {
        Self { pieces: self.pieces.iter().rev().map(|p| p.reversed()).collect() }
    }

    /// Counterclockwise version of this boundary.
    pub fn into_ccw(self) -> Self {
        if self.signed_area() < 0.0 {
            self.reversed()
        } else {
            self
        }
    }

    /// Dense boundary sample with `per_piece` points per piece.
    pub fn sample_boundary(&self, per_piece: usize) -> Vec<Point2> {
        let mut out = Vec::with_capacity(self.pieces.len() * per_piece);
        for p in &self.pieces {
            p.sample(per_piece, &mut out);
        }
        out
    }

    /// Axis-aligned bounding box `(min, max)` from a dense boundary sample.
    pub fn bbox(&self) -> (Point2, Point2) {
        let pts = self.sample_boundary(64);
        let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in pts {
            lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (lo, hi)
    }

    /// Image under `p ↦ c + k (p − c)`.
    pub fn scaled_about(&self, c: Point2, k: f64) -> Self {
        let map = |p: Point2| c + (p - c) * k;
        let pieces = self
            .pieces
            .iter()
            .map(|piece| match piece {
                Piece::Line { a, b } => Piece::line(map(*a), map(*b)),
                Piece::Arc(arc) => Piece::Arc(ArcSegment { center: map(arc.center), radius: arc.radius * k, ..*arc }),
            })
            .collect();
        Self { pieces }
    }
}

/// Winding number of a closed polygon around `p`.
pub fn polygon_winding(v: &[Point2], p: Point2) -> i32 {
    let n = v.len();
    let mut w = 0;
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        if a.y <= p.y {
            if b.y > p.y && (b - a).cross(p - a) > 0.0 {
                w += 1;
            }
        } else if b.y <= p.y && (b - a).cross(p - a) < 0.0 {
            w -= 1;
        }
    }
    w
}

/// Shoelace area of a closed polygon (signed, ccw positive).
pub fn shoelace(v: &[Point2]) -> f64 {
    if v.len() < 3 {
        return 0.0;
    }
    let o = v[0];
    let mut s = 0.0;
    for i in 1..v.len() - 1 {
        s += (v[i] - o).cross(v[i + 1] - o);
    }
    0.5 * s
}

/// Strictly convex polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexPolygon {
    pub vertices: Vec<Point2>,
}

impl ConvexPolygon {
    pub fn area(&self) -> f64 {
        shoelace(&self.vertices)
    }

    /// Signed distance of `p` outside the polygon boundary lines; negative inside.
    pub fn outside_distance(&self, p: Point2) -> f64 {
        let n = self.vertices.len();
        let mut worst = f64::NEG_INFINITY;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let e = b - a;
            let d = -e.cross(p - a) / e.norm();
            worst = worst.max(d);
        }
        worst
    }

    pub fn contains(&self, p: Point2, slack: f64) -> bool {
        self.outside_distance(p) <= slack
    }
}

/// Convex hull by Andrew's monotone chain. Collinear points are dropped.
pub fn convex_hull(points: &[Point2]) -> Result<ConvexPolygon, GeomError> {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return Err(GeomError::DegenerateHull);
    }
    let mut hull: Vec<Point2> = Vec::with_capacity(pts.len() + 1);
    for &p in pts.iter() {
        while hull.len() >= 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    if hull.len() < 3 {
        return Err(GeomError::DegenerateHull);
    }
    Ok(ConvexPolygon { vertices: hull })
}

fn turn(o: Point2, a: Point2, b: Point2) -> f64 {
    (a - o).cross(b - o)
}

pub fn polygon_area(p: &ConvexPolygon) -> f64 {
    p.area()
}

pub fn arcpolygon_area(p: &ArcPolygon) -> f64 {
    p.area()
}

/// Largest pairwise distance.
pub fn diameter(points: &[Point2]) -> f64 {
    let cand: Vec<Point2> = match convex_hull(points) {
        Ok(h) => h.vertices,
        Err(_) => points.to_vec(),
    };
    let mut best: f64 = 0.0;
    for i in 0..cand.len() {
        for j in i + 1..cand.len() {
            best = best.max(cand[i].dist(cand[j]));
        }
    }
    best
}

/// Intersection points of two pieces.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Intersection {
    pub points: Vec<Point2>,
    pub tangent: bool,
}

/// Line through `p` with direction `d` against a circle: parameters `t` with
/// `|p + t d − c| = r`, plus a tangency flag.
fn line_circle(p: Point2, d: Point2, c: Point2, r: f64) -> (Vec<f64>, bool) {
    let dd = d.norm2();
    let w = p - c;
    let b = w.dot(d) / dd;
    let cc = (w.norm2() - r * r) / dd;
    let disc = b * b - cc;
    let scale = (r * r / dd).max(1e-300);
    if disc < -TOL.predicate * scale {
        (Vec::new(), false)
    } else if disc.abs() <= TOL.predicate * TOL.predicate * scale {
        (vec![-b], true)
    } else {
        let s = disc.max(0.0).sqrt();
        (vec![-b - s, -b + s], false)
    }
}

/// Intersections of two full circles.
pub fn circle_circle(c1: Point2, r1: f64, c2: Point2, r2: f64) -> (Vec<Point2>, bool) {
    let d = c2 - c1;
    let l = d.norm();
    if l == 0.0 {
        return (Vec::new(), false);
    }
    let x = (l * l + r1 * r1 - r2 * r2) / (2.0 * l);
    let h2 = r1 * r1 - x * x;
    let e = d * (1.0 / l);
    let m = c1 + e * x;
    if h2 < -TOL.predicate {
        (Vec::new(), false)
    } else if h2.abs() <= TOL.predicate * TOL.predicate {
        (vec![m], true)
    } else {
        let h = h2.max(0.0).sqrt();
        (vec![m + e.perp() * h, m - e.perp() * h], false)
    }
}

/// Intersections of two unit-or-other circles, the one nearest `near`.
pub fn circle_circle_near(c1: Point2, r1: f64, c2: Point2, r2: f64, near: Point2) -> Option<Point2> {
    let (pts, _) = circle_circle(c1, r1, c2, r2);
    pts.into_iter().min_by(|a, b| a.dist(near).total_cmp(&b.dist(near)))
}

/// Intersection of the infinite line `p + t d` with a circle, nearest `near`.
pub fn line_circle_near(p: Point2, d: Point2, c: Point2, r: f64, near: Point2) -> Option<Point2> {
    let (ts, _) = line_circle(p, d, c, r);
    ts.into_iter().map(|t| p + d * t).min_by(|a, b| a.dist(near).total_cmp(&b.dist(near)))
}

/// Intersection of the lines `p·n1 = h1` and `p·n2 = h2`.
pub fn line_line(n1: Point2, h1: f64, n2: Point2, h2: f64) -> Option<Point2> {
    let det = n1.cross(n2);
    if det.abs() < 1e-300 {
        return None;
    }
    Some(Point2::new((h1 * n2.y - h2 * n1.y) / det, (n1.x * h2 - n2.x * h1) / det))
}

/// Intersections of two boundary pieces, with tangency reported.
pub fn intersect(a: &Piece, b: &Piece) -> Intersection {
    let tol = 1e-10;
    let (cands, tangent) = match (a, b) {
        (Piece::Line { a: p, b: q }, Piece::Line { a: r, b: s }) => {
            let d1 = *q - *p;
            let d2 = *s - *r;
            let den = d1.cross(d2);
            if den.abs() < 1e-300 {
                (Vec::new(), false)
            } else {
                let t = (*r - *p).cross(d2) / den;
                (vec![*p + d1 * t], false)
            }
        }
        (Piece::Line { a: p, b: q }, Piece::Arc(arc)) | (Piece::Arc(arc), Piece::Line { a: p, b: q }) => {
            let d = *q - *p;
            let (ts, tan) = line_circle(*p, d, arc.center, arc.radius);
            (ts.into_iter().map(|t| *p + d * t).collect(), tan)
        }
        (Piece::Arc(x), Piece::Arc(y)) => circle_circle(x.center, x.radius, y.center, y.radius),
    };
    let points = cands
        .into_iter()
        .filter(|p| a.contains_point(*p, tol) && b.contains_point(*p, tol))
        .collect::<Vec<_>>();
    Intersection { tangent: tangent && !points.is_empty(), points }
}

/// Convex hull of a set of pieces as an exact arc-polygon.
///
/// The support function of the union is swept over directions; runs of the
/// same active element (an arc's interior or a single point) become hull
/// pieces, and changes of element become bridging segments.
pub fn arc_hull(pieces: &[Piece], samples: usize) -> Result<ArcPolygon, GeomError> {
    #[derive(Clone, Copy, PartialEq, Debug)]
    enum Elem {
        ArcInterior(usize),
        Point(usize, bool),
    }
    let elem_at = |theta: f64| -> (Elem, f64) {
        let n = Point2::polar(theta);
        let mut best = (Elem::Point(0, false), f64::NEG_INFINITY);
        for (i, p) in pieces.iter().enumerate() {
            if let Piece::Arc(arc) = p {
                if arc.contains_angle(theta, 0.0) {
                    let v = arc.center.dot(n) + arc.radius;
                    if v > best.1 {
                        best = (Elem::ArcInterior(i), v);
                    }
                }
            }
            let s = p.start().dot(n);
            if s > best.1 {
                best = (Elem::Point(i, false), s);
            }
            let e = p.end().dot(n);
            if e > best.1 {
                best = (Elem::Point(i, true), e);
            }
        }
        best
    };
    let point_of = |e: Elem, theta: f64| -> Point2 {
        match e {
            Elem::ArcInterior(i) => match &pieces[i] {
                Piece::Arc(arc) => arc.point_at_angle(theta),
                _ => unreachable!(),
            },
            Elem::Point(i, false) => pieces[i].start(),
            Elem::Point(i, true) => pieces[i].end(),
        }
    };
    // Merge coincident endpoints so that shared vertices do not flicker.
    let canon = |e: Elem| -> Elem {
        if let Elem::Point(i, end) = e {
            let p = if end { pieces[i].end() } else { pieces[i].start() };
            for (j, q) in pieces.iter().enumerate() {
                if q.start().dist(p) <= 1e-14 {
                    return Elem::Point(j, false);
                }
                if q.end().dist(p) <= 1e-14 {
                    return Elem::Point(j, true);
                }
            }
        }
        e
    };
    let n = samples.max(64);
    let mut runs: Vec<(Elem, f64, f64)> = Vec::new();
    let mut prev_t = 0.0;
    let mut prev_e = canon(elem_at(0.0).0);
    let mut start_t = 0.0;
    for k in 1..=n {
        let t = TAU * k as f64 / n as f64;
        let e = canon(elem_at(t).0);
        if e != prev_e {
            // Refine transitions, possibly through intermediate elements.
            let mut lo = prev_t;
            let mut lo_e = prev_e;
            loop {
                let mut a = lo;
                let mut b = t;
                while b - a > 1e-15 {
                    let m = 0.5 * (a + b);
                    if canon(elem_at(m).0) == lo_e {
                        a = m;
                    } else {
                        b = m;
                    }
                }
                runs.push((lo_e, start_t, b));
                start_t = b;
                let next = canon(elem_at(b).0);
                let next = if next == lo_e { e } else { next };
                if next == e {
                    lo_e = e;
                    break;
                }
                lo = b;
                lo_e = next;
            }
            prev_e = lo_e;
        }
        prev_t = t;
    }
    runs.push((prev_e, start_t, TAU));
    // Join the wrap-around run.
    if runs.len() > 1 && runs[0].0 == runs[runs.len() - 1].0 {
        let last = runs.pop().unwrap();
        runs[0].1 = last.1 - TAU;
    }
    let mut out: Vec<Piece> = Vec::new();
    let m = runs.len();
    for i in 0..m {
        let (e, t0, t1) = runs[i];
        if let Elem::ArcInterior(j) = e {
            if let Piece::Arc(arc) = &pieces[j] {
                out.push(Piece::Arc(ArcSegment::new(arc.center, arc.radius, t0, t1, Orientation::Ccw)));
            }
        }
        let (ne, nt0, _) = runs[(i + 1) % m];
        let a = point_of(e, t1);
        let b = point_of(ne, nt0);
        if a.dist(b) > 1e-15 {
            out.push(Piece::line(a, b));
        }
    }
    if out.is_empty() {
        return Err(GeomError::DegenerateHull);
    }
    ArcPolygon::with_tolerance(out, 1e-9)
}
