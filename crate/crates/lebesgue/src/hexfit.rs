//! Fitting curves of constant width into circumscribed parallel hexagons.
//!
//! A shape rotated so that the hexagon normals sit at `θ + φ_i` in its own
//! frame fits exactly when the three offsets `o_i = o(θ + φ_i)` admit a
//! translation `x` with `x · n_i = o_i`. That system is solvable iff
//! `t(θ) = o₁ (n₂∧n₃) + o₂ (n₃∧n₁) + o₃ (n₁∧n₂)` vanishes.

use crate::geom::{line_line, Point2, TOL};
use crate::widthcurves::{ConstantWidthShape, ShapeKind};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_3, FRAC_PI_6, PI};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FitError {
    #[error("degenerate hexagon: normals {0} and {1} are parallel")]
    Singular(usize, usize),
    #[error("t({theta}) = {value:e} is not a root")]
    NotARoot { theta: f64, value: f64 },
}

/// Upper bound on `|t'(θ)|`: each `|o_i'| ≤ 1` and each wedge is at most 1.
pub const T_LIPSCHITZ: f64 = 3.0;

/// Hexagon with opposite sides one apart, circumscribing the unit-diameter
/// circle at the origin. Side normals sit at `rotation`, `rotation + A`,
/// `rotation + A + B` and their opposites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParallelHexagon {
    pub angle_a: f64,
    pub angle_b: f64,
    pub rotation: f64,
}

impl ParallelHexagon {
    pub fn new(angle_a: f64, angle_b: f64) -> Self {
        Self { angle_a, angle_b, rotation: FRAC_PI_6 }
    }

    pub fn from_degrees(a: f64, b: f64) -> Self {
        Self::new(a.to_radians(), b.to_radians())
    }

    /// Regular hexagon with side normals at 30°, 90°, 150°, …
    pub fn regular() -> Self {
        Self::new(FRAC_PI_3, FRAC_PI_3)
    }

    pub fn is_valid(&self) -> bool {
        let c = PI - self.angle_a - self.angle_b;
        self.angle_a > 0.0 && self.angle_b > 0.0 && c > 0.0
    }

    pub fn normal_angles(&self) -> [f64; 3] {
        [self.rotation, self.rotation + self.angle_a, self.rotation + self.angle_a + self.angle_b]
    }

    /// The six outward side normals in counterclockwise order.
    pub fn side_normals(&self) -> [Point2; 6] {
        let [a, b, c] = self.normal_angles();
        [a, b, c, a + PI, b + PI, c + PI].map(Point2::polar)
    }

    /// Vertices in counterclockwise order.
    pub fn vertices(&self) -> Vec<Point2> {
        let n = self.side_normals();
        (0..6).map(|i| line_line(n[i], 0.5, n[(i + 1) % 6], 0.5).expect("adjacent sides intersect")).collect()
    }

    pub fn area(&self) -> f64 {
        crate::geom::shoelace(&self.vertices())
    }
}

/// Two corners of the regular hexagon cut by lines tangent to the inscribed
/// circle. With slant σ the cut endpoints move by σ as seen from the center,
/// so each cut normal turns by 2σ away from its corner direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PalCut {
    pub slant: f64,
}

/// Direction of corner E from the center.
pub const CORNER_E: f64 = FRAC_PI_3;
/// Direction of corner C from the center.
pub const CORNER_C: f64 = -FRAC_PI_3;

impl PalCut {
    /// Largest slant for which the construction is guarded.
    pub const MAX_SLANT: f64 = 9.0 * PI / 180.0;

    pub fn new(slant: f64) -> Self {
        Self { slant }
    }

    pub fn from_degrees(d: f64) -> Self {
        Self::new(d.to_radians())
    }

    /// Outward normal of the cut at the corner in direction `corner`.
    pub fn normal_at(&self, corner: f64) -> Point2 {
        Point2::polar(corner - 2.0 * self.slant)
    }

    /// Outward normals of the E and C cuts; each cut line is `p · n = 1/2`.
    pub fn normals(&self) -> [Point2; 2] {
        [self.normal_at(CORNER_E), self.normal_at(CORNER_C)]
    }
}

/// Rigid motion (optionally preceded by a mirror in the x-axis) placing a
/// shape in the hexagon frame: `p ↦ R(rotation)·m(p) + translation`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Placement {
    pub rotation: f64,
    pub translation: Point2,
    pub reflected: bool,
    /// Root `θ` this placement came from.
    pub theta: f64,
}

impl Placement {
    pub fn apply(&self, p: Point2) -> Point2 {
        let q = if self.reflected { Point2::new(p.x, -p.y) } else { p };
        q.rotate(self.rotation) + self.translation
    }
}

/// A shape with its mirror image prepared for fitting.
#[derive(Debug, Clone)]
pub struct FitShape {
    pub shape: ConstantWidthShape,
    pub mirror: ConstantWidthShape,
}

impl FitShape {
    pub fn new(shape: ConstantWidthShape) -> Self {
        let mirror = shape.mirrored();
        Self { shape, mirror }
    }

    pub fn variant(&self, reflected: bool) -> &ConstantWidthShape {
        if reflected {
            &self.mirror
        } else {
            &self.shape
        }
    }

    /// Placed boundary sample (inscribed polygon) in the hexagon frame.
    /// The mirror shape's vertices are already mirrored, so only the rigid
    /// motion is applied here.
    pub fn placed_points(&self, pl: &Placement, segments_per_arc: usize) -> Vec<Point2> {
        let s = self.variant(pl.reflected);
        s.discretize(segments_per_arc).vertices.into_iter().map(|p| p.rotate(pl.rotation) + pl.translation).collect()
    }

    /// Support of the placed shape in hexagon-frame direction `n`.
    pub fn placed_support(&self, pl: &Placement, n: Point2) -> f64 {
        let s = self.variant(pl.reflected);
        let m = n.rotate(-pl.rotation);
        s.support(m.angle()) + (s.center.rotate(pl.rotation) + pl.translation).dot(n)
    }
}

/// `t(θ)` for a shape in a hexagon.
pub fn t_value(shape: &ConstantWidthShape, hex: &ParallelHexagon, theta: f64) -> f64 {
    let phi = hex.normal_angles();
    let n: [Point2; 3] = phi.map(|p| Point2::polar(theta + p));
    let o: [f64; 3] = phi.map(|p| shape.offset(theta + p));
    o[0] * n[1].cross(n[2]) + o[1] * n[2].cross(n[0]) + o[2] * n[0].cross(n[1])
}

/// Roots of `t` over a full turn.
#[derive(Debug, Clone, PartialEq)]
pub enum RootSet {
    /// The circle: `t ≡ 0`, every orientation fits.
    Always,
    Roots(Vec<f64>),
}

impl RootSet {
    pub fn len(&self) -> usize {
        match self {
            RootSet::Always => usize::MAX,
            RootSet::Roots(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, RootSet::Roots(r) if r.is_empty())
    }
}

/// Roots of `t` in `[0, 2π)`.
///
/// `[0, π)` is covered by a grid; each cell is either certified root-free by
/// the Lipschitz bound (`|t(a)| + |t(b)| > L (b − a)`) or split. Sign changes
/// are refined by bisection to `1e-13`; cells that shrink below `1e-7`
/// without a sign change but with `|t| ≤ tol` report a touching root. Roots on
/// `[π, 2π)` follow from `t(θ + π) = −t(θ)`.
pub fn find_roots(shape: &ConstantWidthShape, hex: &ParallelHexagon, tol: f64) -> RootSet {
    if shape.kind == ShapeKind::Circle {
        return RootSet::Always;
    }
    let f = |th: f64| t_value(shape, hex, th);
    const GRID: usize = 1024;
    let h = PI / GRID as f64;
    let mut roots = Vec::new();
    let mut prev = f(0.0);
    if prev == 0.0 {
        roots.push(0.0);
    }
    for k in 0..GRID {
        let a = k as f64 * h;
        let b = if k + 1 == GRID { PI } else { (k + 1) as f64 * h };
        let fb = if k + 1 == GRID { -f(0.0) } else { f(b) };
        cell(&f, a, b, prev, fb, tol, &mut roots);
        if fb == 0.0 && k + 1 < GRID {
            roots.push(b);
        }
        prev = fb;
    }
    roots.sort_by(f64::total_cmp);
    let mut merged: Vec<f64> = Vec::new();
    for r in roots {
        if merged.last().is_none_or(|m| r - m > 1e-9) {
            merged.push(r);
        }
    }
    if merged.len() >= 2 && merged[0] + PI - merged[merged.len() - 1] <= 1e-9 {
        merged.pop();
    }
    let mut all: Vec<f64> = merged.to_vec();
    all.extend(merged.iter().map(|r| r + PI));
    all.retain(|r| *r < 2.0 * PI);
    all.sort_by(f64::total_cmp);
    RootSet::Roots(all)
}

fn cell<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fb: f64, tol: f64, out: &mut Vec<f64>) {
    if fa.abs() + fb.abs() > T_LIPSCHITZ * (b - a) {
        return;
    }
    if fa * fb < 0.0 && b - a < 1e-7 {
        out.push(bisect(f, a, b, fa));
        return;
    }
    if b - a < 1e-7 {
        if fa != 0.0 && fb != 0.0 {
            let m = 0.5 * (a + b);
            if f(m).abs() <= tol {
                out.push(m);
            }
        }
        return;
    }
    let m = 0.5 * (a + b);
    let fm = f(m);
    if fm == 0.0 {
        out.push(m);
    }
    cell(f, a, m, fa, fm, tol, out);
    cell(f, m, b, fm, fb, tol, out);
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    while b - a > 1e-13 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Placement realising a root `θ`.
pub fn placement_from_root(shape: &ConstantWidthShape, hex: &ParallelHexagon, theta: f64, reflected: bool) -> Result<Placement, FitError> {
    let phi = hex.normal_angles();
    let n1 = Point2::polar(theta + phi[0]);
    let n2 = Point2::polar(theta + phi[1]);
    let o1 = shape.offset(theta + phi[0]);
    let o2 = shape.offset(theta + phi[1]);
    if n1.cross(n2).abs() < 1e-12 {
        return Err(FitError::Singular(0, 1));
    }
    let x = line_line(n1, o1, n2, o2).ok_or(FitError::Singular(0, 1))?;
    let rotation = -theta;
    let translation = -((shape.center + x).rotate(rotation));
    Ok(Placement { rotation, translation, reflected, theta })
}

/// All placements of a shape (and its mirror if allowed and asymmetric).
/// The circle yields one canonical centered placement.
pub fn enumerate_placements(fs: &FitShape, hex: &ParallelHexagon, allow_reflection: bool) -> Vec<Placement> {
    let shape = &fs.shape;
    if shape.kind == ShapeKind::Circle {
        return vec![Placement { rotation: 0.0, translation: -shape.center, reflected: false, theta: 0.0 }];
    }
    let mut out = Vec::new();
    let variants: &[bool] = if allow_reflection && !shape.bilaterally_symmetric { &[false, true] } else { &[false] };
    for &refl in variants {
        let s = fs.variant(refl);
        if let RootSet::Roots(rs) = find_roots(s, hex, 1e-12) {
            for th in rs {
                if let Ok(p) = placement_from_root(s, hex, th, refl) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// The placed shape stays out of the interior of both cut triangles.
pub fn admissible(fs: &FitShape, pl: &Placement, cut: Option<&PalCut>) -> bool {
    match cut {
        None => true,
        Some(c) => c.normals().iter().all(|n| fs.placed_support(pl, *n) <= 0.5 + TOL.containment),
    }
}

/// Largest signed distance of a discretized placed boundary outside the
/// hexagon (and the cut lines when given).
pub fn verify_containment(fs: &FitShape, pl: &Placement, hex: &ParallelHexagon, cut: Option<&PalCut>, segments_per_arc: usize) -> f64 {
    let pts = fs.placed_points(pl, segments_per_arc);
    let mut normals: Vec<Point2> = hex.side_normals().to_vec();
    if let Some(c) = cut {
        normals.extend(c.normals());
    }
    pts.iter()
        .map(|p| normals.iter().map(|n| p.dot(*n) - 0.5).fold(f64::NEG_INFINITY, f64::max))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Admissible placements of each shape.
pub fn admissible_placements(fs: &FitShape, hex: &ParallelHexagon, cut: Option<&PalCut>, allow_reflection: bool) -> Vec<Placement> {
    enumerate_placements(fs, hex, allow_reflection).into_iter().filter(|p| admissible(fs, p, cut)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::widthcurves::{build_reuleaux, regular, ReuleauxSpec};

    #[test]
    fn regular_hexagon_area() {
        assert!((ParallelHexagon::regular().area() - 3f64.sqrt() / 2.0).abs() < 1e-14);
    }

    #[test]
    fn circle_fits_everywhere() {
        let c = ConstantWidthShape::circle();
        let h = ParallelHexagon::regular();
        assert_eq!(t_value(&c, &h, 0.3), 0.0);
        assert_eq!(find_roots(&c, &h, 1e-12), RootSet::Always);
    }

    #[test]
    fn pentagon_root_counts() {
        let h = ParallelHexagon::regular();
        let mut counts = Vec::new();
        for v in [35.0, 36.0, 37.0] {
            let s = build_reuleaux(&ReuleauxSpec::from_degrees(5, &[v, v])).unwrap();
            counts.push(find_roots(&s, &h, 1e-12).len());
        }
        assert_eq!(counts, vec![18, 30, 6]);
    }

    #[test]
    fn placements_are_contained() {
        let fs = FitShape::new(regular(7));
        let h = ParallelHexagon::from_degrees(55.0, 63.0);
        let pls = enumerate_placements(&fs, &h, true);
        assert!(pls.len() >= 2);
        for p in &pls {
            assert!(verify_containment(&fs, p, &h, None, 64) <= 1e-9);
        }
    }
}
