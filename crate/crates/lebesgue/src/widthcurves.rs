//! Curves of constant width one: Reuleaux polygons and the circle.

use crate::geom::{diameter, wrap_angle, ArcPolygon, ArcSegment, ConvexPolygon, Orientation, Piece, Point2, TOL};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_3, PI, TAU};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ShapeError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("closure failed: the two loose ends are {0} apart")]
    Closure(f64),
    #[error("random_spec gave up after {0} attempts")]
    Exhausted(usize),
}

/// Odd `n` plus the first `n − 3` consecutive star angles (radians).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReuleauxSpec {
    pub n: usize,
    pub free_angles: Vec<f64>,
}

impl ReuleauxSpec {
    pub fn new(n: usize, free_angles: Vec<f64>) -> Self {
        Self { n, free_angles }
    }

    pub fn from_degrees(n: usize, free: &[f64]) -> Self {
        Self::new(n, free.iter().map(|d| d.to_radians()).collect())
    }

    pub fn regular(n: usize) -> Self {
        Self::new(n, vec![PI / n as f64; n.saturating_sub(3)])
    }

    pub fn free_angles_degrees(&self) -> Vec<f64> {
        self.free_angles.iter().map(|a| a.to_degrees()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShapeKind {
    Circle,
    Reuleaux,
}

/// One arc of a Reuleaux polygon: centered on `vertices[center]`, covering
/// outward normal directions `[start, start + sweep]`.
#[derive(Debug, Clone, Copy)]
struct NormalRange {
    start: f64,
    sweep: f64,
    vertex: usize,
    /// True when the range belongs to the arc; false for the opposite vertex.
    arc: bool,
}

#[derive(Debug, Clone)]
pub struct ConstantWidthShape {
    pub kind: ShapeKind,
    pub spec: Option<ReuleauxSpec>,
    /// Vertices in star order (consecutive vertices are one apart).
    pub vertices: Vec<Point2>,
    pub boundary: ArcPolygon,
    /// Reference point `C` of the support function.
    pub center: Point2,
    pub bilaterally_symmetric: bool,
    pub label: String,
    ranges: Vec<NormalRange>,
}

/// Angle at `q[i]` between its two star neighbours.
fn star_angle(q: &[Point2], i: usize) -> f64 {
    let n = q.len();
    let a = q[(i + n - 1) % n] - q[i];
    let b = q[(i + 1) % n] - q[i];
    a.cross(b).abs().atan2(a.dot(b))
}

/// Star angles of a closed star polygon.
pub fn star_angles(q: &[Point2]) -> Vec<f64> {
    (0..q.len()).map(|i| star_angle(q, i)).collect()
}

impl ConstantWidthShape {
    /// Circle of diameter one centered at the origin.
    pub fn circle() -> Self {
        Self {
            kind: ShapeKind::Circle,
            spec: None,
            vertices: Vec::new(),
            boundary: ArcPolygon::circle(Point2::ORIGIN, 0.5),
            center: Point2::ORIGIN,
            bilaterally_symmetric: true,
            label: "circle".into(),
            ranges: Vec::new(),
        }
    }

    /// Builds the shape from vertices given in star order.
    pub fn from_star_vertices(vertices: Vec<Point2>, spec: Option<ReuleauxSpec>, label: &str) -> Result<Self, ShapeError> {
        let n = vertices.len();
        if n < 3 || n.is_multiple_of(2) {
            return Err(ShapeError::InvalidSpec(format!("star needs an odd vertex count, got {n}")));
        }
        for i in 0..n {
            let d = vertices[i].dist(vertices[(i + 1) % n]);
            if (d - 1.0).abs() > 1e-9 {
                return Err(ShapeError::InvalidSpec(format!("star edge {i} has length {d}")));
            }
        }
        let center = vertices.iter().fold(Point2::ORIGIN, |s, p| s + *p) * (1.0 / n as f64);
        let mut arcs = Vec::with_capacity(n);
        let mut ranges = Vec::with_capacity(2 * n);
        for j in 0..n {
            let v = vertices[j];
            let a = vertices[(j + 1) % n];
            let b = vertices[(j + n - 1) % n];
            let arc = ArcSegment::minor(v, 1.0, a, b);
            let arc = if arc.orientation == Orientation::Ccw { arc } else { arc.reversed() };
            let sweep = arc.sweep();
            ranges.push(NormalRange { start: wrap_angle(arc.start_angle), sweep, vertex: j, arc: true });
            ranges.push(NormalRange { start: wrap_angle(arc.start_angle + PI), sweep, vertex: j, arc: false });
            arcs.push(arc);
        }
        ranges.sort_by(|x, y| x.start.total_cmp(&y.start));
        // Chain arcs end to start to get a ccw boundary.
        let mut order = vec![0usize];
        let mut used = vec![false; n];
        used[0] = true;
        while order.len() < n {
            let end = arcs[*order.last().unwrap()].end();
            let next = (0..n)
                .filter(|k| !used[*k])
                .min_by(|x, y| arcs[*x].start().dist(end).total_cmp(&arcs[*y].start().dist(end)))
                .unwrap();
            used[next] = true;
            order.push(next);
        }
        let pieces: Vec<Piece> = order.iter().map(|k| Piece::Arc(arcs[*k])).collect();
        let boundary = ArcPolygon::with_tolerance(pieces, 1e-9).map_err(|e| ShapeError::InvalidSpec(e.to_string()))?;
        let angles = star_angles(&vertices);
        let bilaterally_symmetric = cyclic_mirror_symmetric(&angles, 1e-9);
        Ok(Self {
            kind: ShapeKind::Reuleaux,
            spec,
            vertices,
            boundary,
            center,
            bilaterally_symmetric,
            label: label.into(),
            ranges,
        })
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    /// Star angles at each vertex.
    pub fn angles(&self) -> Vec<f64> {
        star_angles(&self.vertices)
    }

    /// Support `s(θ) = max (P − C)·n(θ)`.
    pub fn support(&self, theta: f64) -> f64 {
        let n = Point2::polar(theta);
        match self.kind {
            ShapeKind::Circle => 0.5 + (Point2::ORIGIN - self.center).dot(n),
            ShapeKind::Reuleaux => {
                let r = self.range_at(wrap_angle(theta));
                let v = self.vertices[r.vertex] - self.center;
                if r.arc {
                    v.dot(n) + 1.0
                } else {
                    v.dot(n)
                }
            }
        }
    }

    fn range_at(&self, t: f64) -> NormalRange {
        let idx = self.ranges.partition_point(|r| r.start <= t);
        let cand = if idx == 0 { self.ranges[self.ranges.len() - 1] } else { self.ranges[idx - 1] };
        let off = wrap_angle(t - cand.start);
        if off <= cand.sweep + 1e-12 {
            return cand;
        }
        // Floating gap between ranges: take the nearer neighbour.
        let next = self.ranges[idx % self.ranges.len()];
        let d_next = wrap_angle(next.start - t);
        if d_next < off - cand.sweep {
            next
        } else {
            cand
        }
    }

    /// Offset `o(θ) = (s(θ) − s(θ+π))/2`.
    pub fn offset(&self, theta: f64) -> f64 {
        0.5 * (self.support(theta) - self.support(theta + PI))
    }

    pub fn width(&self, theta: f64) -> f64 {
        self.support(theta) + self.support(theta + PI)
    }

    /// Inscribed polygon with `segments_per_arc` chords per arc.
    pub fn discretize(&self, segments_per_arc: usize) -> ConvexPolygon {
        let pts = self.boundary.sample_boundary(segments_per_arc.max(1));
        ConvexPolygon { vertices: pts }
    }

    /// Mirror image across the x-axis.
    pub fn mirrored(&self) -> Self {
        match self.kind {
            ShapeKind::Circle => self.clone(),
            ShapeKind::Reuleaux => {
                let v: Vec<Point2> = self.vertices.iter().rev().map(|p| Point2::new(p.x, -p.y)).collect();
                let mut s = Self::from_star_vertices(v, self.spec.clone(), &format!("{}~", self.label))
                    .expect("mirror of a valid shape is valid");
                s.spec = self.spec.as_ref().map(|sp| ReuleauxSpec::new(sp.n, sp.free_angles.iter().rev().cloned().collect()));
                s
            }
        }
    }

    /// Support point in direction `theta` (a point of the boundary).
    pub fn support_point(&self, theta: f64) -> Point2 {
        let n = Point2::polar(theta);
        match self.kind {
            ShapeKind::Circle => n * 0.5,
            ShapeKind::Reuleaux => {
                let r = self.range_at(wrap_angle(theta));
                if r.arc {
                    self.vertices[r.vertex] + n
                } else {
                    self.vertices[r.vertex]
                }
            }
        }
    }
}

fn cyclic_mirror_symmetric(a: &[f64], tol: f64) -> bool {
    let n = a.len();
    (0..n).any(|shift| (0..n).all(|i| (a[i] - a[(shift + n - i) % n]).abs() <= tol))
}

/// Builds the Reuleaux polygon from its spec by chaining unit diagonals and
/// closing the last vertex with a circle-circle intersection.
pub fn build_reuleaux(spec: &ReuleauxSpec) -> Result<ConstantWidthShape, ShapeError> {
    let n = spec.n;
    if n < 3 || n.is_multiple_of(2) {
        return Err(ShapeError::InvalidSpec(format!("n must be odd and at least 3, got {n}")));
    }
    if spec.free_angles.len() != n - 3 {
        return Err(ShapeError::InvalidSpec(format!("expected {} free angles, got {}", n - 3, spec.free_angles.len())));
    }
    let mut p = vec![Point2::ORIGIN, Point2::new(1.0, 0.0)];
    let mut psi: f64 = 0.0;
    for a in &spec.free_angles {
        psi += PI - a;
        let last = *p.last().unwrap();
        p.push(last + Point2::polar(psi));
    }
    let a = *p.last().unwrap();
    let b = p[0];
    let d = a.dist(b);
    if d > 2.0 || d == 0.0 {
        return Err(ShapeError::Closure(d));
    }
    let e = (b - a) * (1.0 / d);
    let h = (1.0 - 0.25 * d * d).max(0.0).sqrt();
    let mid = a + e * (0.5 * d);
    let mut chosen = None;
    for c in [mid + e.perp() * h, mid - e.perp() * h] {
        let mut q = p.clone();
        q.push(c);
        let s: f64 = star_angles(&q).iter().sum();
        if (s - PI).abs() < 1e-9 {
            chosen = Some(q);
            break;
        }
    }
    let q = chosen.ok_or(ShapeError::Closure(d))?;
    ConstantWidthShape::from_star_vertices(q, Some(spec.clone()), &format!("R{n}"))
}

/// Constraint violations of a spec; empty when valid.
pub fn validate_spec(spec: &ReuleauxSpec) -> Vec<String> {
    let mut v = Vec::new();
    let n = spec.n;
    if n < 3 || n.is_multiple_of(2) {
        v.push(format!("n = {n} is not an odd number >= 3"));
        return v;
    }
    if spec.free_angles.len() != n - 3 {
        v.push(format!("expected {} free angles, got {}", n - 3, spec.free_angles.len()));
        return v;
    }
    for (i, a) in spec.free_angles.iter().enumerate() {
        if !(*a > 0.0 && *a < FRAC_PI_3) {
            v.push(format!("free angle {i} = {:.6} deg outside (0, 60)", a.to_degrees()));
        }
    }
    if !v.is_empty() {
        return v;
    }
    match build_reuleaux(spec) {
        Err(e) => v.push(e.to_string()),
        Ok(shape) => {
            let ang = shape.angles();
            for (i, a) in ang.iter().enumerate() {
                if !(*a > 0.0 && *a < FRAC_PI_3) {
                    v.push(format!("angle {i} = {:.6} deg outside (0, 60)", a.to_degrees()));
                }
            }
            let s: f64 = ang.iter().sum();
            if (s - PI).abs() > 1e-9 {
                v.push(format!("angles sum to {:.9} deg", s.to_degrees()));
            }
            let q = &shape.vertices;
            for i in 0..n {
                for j in i + 1..n {
                    let d = q[i].dist(q[j]);
                    if d > 1.0 + TOL.predicate {
                        v.push(format!("diagonal {i}-{j} has length {d:.12}"));
                    }
                }
            }
        }
    }
    v
}

/// Uniform angles on the simplex, rejected until the built polygon is valid.
pub fn random_spec<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ReuleauxSpec, ShapeError> {
    if n < 5 || n.is_multiple_of(2) {
        return Err(ShapeError::InvalidSpec(format!("random_spec needs odd n >= 5, got {n}")));
    }
    const ATTEMPTS: usize = 100_000;
    for _ in 0..ATTEMPTS {
        let e: Vec<f64> = (0..n).map(|_| -rng.gen_range(f64::MIN_POSITIVE..1.0f64).ln()).collect();
        let total: f64 = e.iter().sum();
        let ang: Vec<f64> = e.iter().map(|x| PI * x / total).collect();
        if ang.iter().any(|a| *a >= FRAC_PI_3) {
            continue;
        }
        let spec = ReuleauxSpec::new(n, ang[..n - 3].to_vec());
        if validate_spec(&spec).is_empty() {
            return Ok(spec);
        }
    }
    Err(ShapeError::Exhausted(ATTEMPTS))
}

/// Regular Reuleaux polygon with `n` vertices.
pub fn regular(n: usize) -> ConstantWidthShape {
    let mut s = build_reuleaux(&ReuleauxSpec::regular(n)).expect("regular polygons close");
    s.label = format!("regular-{n}");
    s
}

/// Entry of a JSON shape pool; `n = 0` encodes the circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PoolEntry {
    pub n: usize,
    #[serde(default)]
    pub free_angles_degrees: Vec<f64>,
    #[serde(default)]
    pub label: String,
}

impl PoolEntry {
    pub fn from_shape(s: &ConstantWidthShape) -> Self {
        match (&s.kind, &s.spec) {
            (ShapeKind::Reuleaux, Some(spec)) => {
                PoolEntry { n: spec.n, free_angles_degrees: spec.free_angles_degrees(), label: s.label.clone() }
            }
            _ => PoolEntry { n: 0, free_angles_degrees: Vec::new(), label: s.label.clone() },
        }
    }

    pub fn build(&self) -> Result<ConstantWidthShape, ShapeError> {
        if self.n == 0 {
            let mut c = ConstantWidthShape::circle();
            if !self.label.is_empty() {
                c.label = self.label.clone();
            }
            return Ok(c);
        }
        let spec = ReuleauxSpec::from_degrees(self.n, &self.free_angles_degrees);
        let problems = validate_spec(&spec);
        if !problems.is_empty() {
            return Err(ShapeError::InvalidSpec(problems.join("; ")));
        }
        let mut s = build_reuleaux(&spec)?;
        if !self.label.is_empty() {
            s.label = self.label.clone();
        }
        Ok(s)
    }
}

pub fn load_pool(json: &str) -> Result<Vec<ConstantWidthShape>, String> {
    let entries: Vec<PoolEntry> = serde_json::from_str(json).map_err(|e| e.to_string())?;
    entries.iter().map(|e| e.build().map_err(|x| format!("{}: {x}", e.label))).collect()
}

pub fn pool_to_json(shapes: &[ConstantWidthShape]) -> String {
    let entries: Vec<PoolEntry> = shapes.iter().map(PoolEntry::from_shape).collect();
    serde_json::to_string_pretty(&entries).expect("pool serializes")
}

/// Circle plus regular Reuleaux 3-, 5-, 7- and 9-gons.
pub fn regular_pool() -> Vec<ConstantWidthShape> {
    vec![ConstantWidthShape::circle(), regular(3), regular(5), regular(7), regular(9)]
}

/// Circle, Reuleaux triangle, regular pentagon, then random 5/7/9-gons up to
/// `size` shapes.
pub fn random_pool<R: Rng + ?Sized>(size: usize, rng: &mut R) -> Vec<ConstantWidthShape> {
    let mut pool = vec![ConstantWidthShape::circle(), regular(3), regular(5)];
    let ns = [5usize, 7, 9];
    let mut k = 0;
    while pool.len() < size {
        let n = ns[k % ns.len()];
        k += 1;
        if let Ok(spec) = random_spec(n, rng) {
            let mut s = build_reuleaux(&spec).expect("validated");
            s.label = format!("rand-{n}-{}", pool.len());
            pool.push(s);
        }
    }
    pool.truncate(size);
    pool
}

/// Largest distance between discretized boundary points.
pub fn discretized_diameter(shape: &ConstantWidthShape, segments_per_arc: usize) -> f64 {
    diameter(&shape.discretize(segments_per_arc).vertices)
}

/// Normal range bookkeeping check: arcs plus opposite vertices tile the circle.
pub fn normal_coverage(shape: &ConstantWidthShape) -> f64 {
    shape.ranges.iter().map(|r| r.sweep).sum::<f64>() / TAU
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_pentagon_angles() {
        let s = regular(5);
        for a in s.angles() {
            assert!((a - PI / 5.0).abs() < 1e-12);
        }
        assert!(s.bilaterally_symmetric);
        assert!((normal_coverage(&s) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_is_equilateral() {
        let s = build_reuleaux(&ReuleauxSpec::new(3, vec![])).unwrap();
        let v = &s.vertices;
        for i in 0..3 {
            assert!((v[i].dist(v[(i + 1) % 3]) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn width_is_one() {
        let s = build_reuleaux(&ReuleauxSpec::from_degrees(5, &[35.0, 35.0])).unwrap();
        for k in 0..1000 {
            let t = k as f64 * 0.00731;
            assert!((s.width(t) - 1.0).abs() < 1e-12);
        }
    }
}
