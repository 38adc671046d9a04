//! Removable regions and the resulting cover areas.

use super::frame::{Corner, Frame};
use super::BoundError;
use crate::exec::Exec;
use crate::geom::{arc_hull, ArcPolygon, ArcSegment, ConvexPolygon, Piece, Point2};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Area of the regular hexagon with apothem 1/2.
pub const HEXAGON_AREA: f64 = 0.866_025_403_784_438_6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionName {
    #[serde(rename = "cornerE")]
    CornerE,
    #[serde(rename = "cornerC")]
    CornerC,
    #[serde(rename = "nearC2")]
    NearC2,
    #[serde(rename = "nearA1")]
    NearA1,
    #[serde(rename = "nearE2")]
    NearE2,
    #[serde(rename = "XYZW")]
    Xyzw,
    #[serde(rename = "heptagonE2")]
    HeptagonE2,
    #[serde(rename = "heptagonC3")]
    HeptagonC3,
}

impl RegionName {
    /// Whether every admissible placement avoids the region, as opposed to
    /// some placement of each shape (possibly after reflection).
    pub fn avoided_by_every_placement(self) -> bool {
        !matches!(self, RegionName::Xyzw | RegionName::HeptagonE2 | RegionName::HeptagonC3)
    }
}

impl fmt::Display for RegionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
        f.write_str(&s)
    }
}

/// A region shown to contain no point of some placement of every shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemovableRegion {
    pub name: RegionName,
    pub boundary: ArcPolygon,
    pub area: f64,
    pub justification: String,
}

impl RemovableRegion {
    fn from_boundary(name: RegionName, boundary: ArcPolygon, justification: &str) -> Self {
        let boundary = boundary.into_ccw();
        let area = boundary.area().max(0.0);
        Self { name, boundary, area, justification: justification.into() }
    }

    fn empty(name: RegionName, justification: &str) -> Self {
        Self { name, boundary: ArcPolygon::empty(), area: 0.0, justification: justification.into() }
    }

    /// Strictly inside (by more than `margin`).
    pub fn contains_strictly(&self, p: Point2, margin: f64) -> bool {
        !self.boundary.is_empty() && self.boundary.depth(p) > margin
    }
}

/// Regular hexagon minus the two cut triangles at E and C.
pub fn pal_cut_area(sigma: f64) -> f64 {
    let f = Frame::new(sigma);
    HEXAGON_AREA - f.corner_triangle_area(Corner::E) - f.corner_triangle_area(Corner::C)
}

pub fn corner_region(f: &Frame, c: Corner) -> RemovableRegion {
    let name = if c == Corner::E { RegionName::CornerE } else { RegionName::CornerC };
    RemovableRegion::from_boundary(name, ArcPolygon::polygon(&f.corner_triangle(c)), "cut corner")
}

fn arc(center: Point2, a: Point2, b: Point2) -> Piece {
    Piece::Arc(ArcSegment::minor(center, 1.0, a, b))
}

/// Corner at C2 beyond the unit circle around F3.
pub fn region_near_c2(f: &Frame) -> RemovableRegion {
    const WHY: &str = "farther than one from F3 while inside the corner at C2";
    let c2 = f.p2(Corner::C);
    let (g, k) = (f.g(), f.k());
    if g.dist(c2) < 1e-14 || k.dist(c2) < 1e-14 {
        return RemovableRegion::empty(RegionName::NearC2, WHY);
    }
    let b = ArcPolygon { pieces: vec![Piece::line(g, c2), Piece::line(c2, k), arc(f.p3(Corner::F), k, g)] };
    RemovableRegion::from_boundary(RegionName::NearC2, b, WHY)
}

/// Wedge at A1 outside the unit circles around E3 and G.
pub fn region_near_a1(f: &Frame) -> Result<RemovableRegion, BoundError> {
    let a1 = f.p1(Corner::A);
    let e3 = f.p3(Corner::E);
    let g = f.g();
    let te = e3 + Point2::polar(210f64.to_radians());
    let tg = g + Point2::polar(150f64.to_radians());
    let i = crate::geom::circle_circle_near(e3, 1.0, g, 1.0, a1).ok_or(BoundError::Construction("circles at E3 and G miss"))?;
    let b = ArcPolygon { pieces: vec![Piece::line(tg, a1), Piece::line(a1, te), arc(e3, te, i), arc(g, i, tg)] };
    Ok(RemovableRegion::from_boundary(RegionName::NearA1, b, "farther than one from E3 or from G"))
}

/// Wedge at E2 outside the unit circle around C3 or around B3.
pub fn region_near_e2(f: &Frame) -> Result<RemovableRegion, BoundError> {
    const WHY: &str = "farther than one from segment B2C3 or from triangle B";
    let e2 = f.p2(Corner::E);
    let c3 = f.p3(Corner::C);
    let b3 = f.p3(Corner::B);
    let t1 = c3 + Point2::new(0.0, 1.0);
    let t2 = b3 + f.cut_normal(Corner::E);
    if t1.dist(e2) < 1e-14 && t2.dist(e2) < 1e-14 {
        return Ok(RemovableRegion::empty(RegionName::NearE2, WHY));
    }
    let i = crate::geom::circle_circle_near(b3, 1.0, c3, 1.0, e2).ok_or(BoundError::Construction("circles at B3 and C3 miss"))?;
    let b = ArcPolygon { pieces: vec![Piece::line(t1, e2), Piece::line(e2, t2), arc(b3, t2, i), arc(c3, i, t1)] };
    Ok(RemovableRegion::from_boundary(RegionName::NearE2, b, WHY))
}

/// Labeled corners of the four-arc region near A1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Xyzw {
    pub w: Point2,
    pub x: Point2,
    pub y: Point2,
    pub z: Point2,
}

pub fn xyzw_points(f: &Frame) -> Result<Xyzw, BoundError> {
    let a1 = f.p1(Corner::A);
    let near = |c1: Point2, c2: Point2| crate::geom::circle_circle_near(c1, 1.0, c2, 1.0, a1).ok_or(BoundError::Construction("arcs of XYZW do not meet"));
    let (g, m, q, n) = (f.g(), f.m(), f.q(), f.n());
    Ok(Xyzw { w: near(m, g)?, x: near(g, n)?, y: near(n, q)?, z: near(q, m)? })
}

/// Cover boundary near A1 before and after removing XYZW, closed through
/// the origin.
fn xyzw_boundaries(f: &Frame, p: &Xyzw) -> (ArcPolygon, ArcPolygon) {
    let (g, m, q, n) = (f.g(), f.m(), f.q(), f.n());
    let tg = g + Point2::polar(150f64.to_radians());
    let tn = n + Point2::polar(210f64.to_radians());
    let o = Point2::ORIGIN;
    let orig = ArcPolygon { pieces: vec![arc(g, tg, p.x), arc(n, p.x, tn), Piece::line(tn, o), Piece::line(o, tg)] };
    let new = ArcPolygon {
        pieces: vec![arc(g, tg, p.w), arc(m, p.w, p.z), arc(q, p.z, p.y), arc(n, p.y, tn), Piece::line(tn, o), Piece::line(o, tg)],
    };
    (orig, new)
}

/// Region outside the unit circles at M and Q and inside those at G and N.
/// With `convex_only` only the part whose removal keeps the cover convex.
pub fn region_xyzw(f: &Frame, convex_only: bool) -> Result<RemovableRegion, BoundError> {
    let deg = f.sigma.to_degrees();
    if !(deg > 0.0 && deg < 9.0) {
        return Err(BoundError::SlantOutOfRange(deg));
    }
    let p = xyzw_points(f)?;
    let (g, m, q, n) = (f.g(), f.m(), f.q(), f.n());
    if !convex_only {
        let b = ArcPolygon { pieces: vec![arc(g, p.w, p.x), arc(n, p.x, p.y), arc(q, p.y, p.z), arc(m, p.z, p.w)] };
        return Ok(RemovableRegion::from_boundary(RegionName::Xyzw, b, "reflection in the line through M"));
    }
    let (orig, new) = xyzw_boundaries(f, &p);
    let hull = arc_hull(&new.pieces, 4096).map_err(|_| BoundError::Construction("hull of reduced cover"))?;
    let removed = orig.area() - hull.area();
    // Between the hull's arcs around G and around N it runs inside the old
    // boundary (arcs around M or Q, bridges, and short joins).
    let on = |c: Point2, piece: &Piece| matches!(piece, Piece::Arc(a) if a.center.dist(c) < 1e-9);
    let k = hull.pieces.len();
    let start = hull.pieces.iter().position(|pc| on(g, pc)).ok_or(BoundError::Construction("hull lost the arc around G"))?;
    let rot: Vec<Piece> = (0..k).map(|i| hull.pieces[(start + i) % k]).collect();
    let first = rot.iter().position(|pc| !on(g, pc)).unwrap_or(k);
    let last = rot.iter().position(|pc| on(n, pc)).ok_or(BoundError::Construction("hull lost the arc around N"))?;
    if first >= last {
        return Ok(RemovableRegion { area: removed, ..RemovableRegion::empty(RegionName::Xyzw, "reflection in the line through M") });
    }
    let run = &rot[first..last];
    let w2 = run[0].start();
    let y2 = run[run.len() - 1].end();
    let mut pieces = vec![arc(g, w2, p.x), arc(n, p.x, y2)];
    pieces.extend(run.iter().rev().map(|pc| pc.reversed()));
    let boundary = ArcPolygon { pieces }.into_ccw();
    if (boundary.area() - removed).abs() > 1e-10 {
        return Err(BoundError::Construction("convex truncation boundary disagrees with hull area"));
    }
    Ok(RemovableRegion { name: RegionName::Xyzw, boundary, area: removed, justification: "reflection in the line through M, convex part".into() })
}

/// Hexagon, cut, and removed regions at one slant.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CoverConstruction {
    pub sigma: f64,
    pub use_reflections: bool,
    pub convex_only: bool,
    pub regions: Vec<RemovableRegion>,
    pub area: f64,
}

impl CoverConstruction {
    pub fn region(&self, name: RegionName) -> Option<&RemovableRegion> {
        self.regions.iter().find(|r| r.name == name)
    }

    /// Regions other than the two cut triangles.
    pub fn removed(&self) -> impl Iterator<Item = &RemovableRegion> {
        self.regions.iter().filter(|r| !matches!(r.name, RegionName::CornerE | RegionName::CornerC))
    }

    /// Checks that no two regions overlap by more than `margin`.
    pub fn check_disjoint(&self, margin: f64) -> Result<(), BoundError> {
        for (i, a) in self.regions.iter().enumerate() {
            for b in &self.regions[i + 1..] {
                if let Some(p) = overlap_witness(a, b, margin) {
                    return Err(BoundError::Overlap { a: a.name, b: b.name, at: p });
                }
            }
        }
        Ok(())
    }
}

/// A boundary point of one region lying strictly inside the other.
pub fn overlap_witness(a: &RemovableRegion, b: &RemovableRegion, margin: f64) -> Option<Point2> {
    if a.boundary.is_empty() || b.boundary.is_empty() {
        return None;
    }
    let (alo, ahi) = a.boundary.bbox();
    let (blo, bhi) = b.boundary.bbox();
    if alo.x > bhi.x || blo.x > ahi.x || alo.y > bhi.y || blo.y > ahi.y {
        return None;
    }
    let check = |x: &RemovableRegion, y: &RemovableRegion| x.boundary.sample_boundary(256).into_iter().find(|p| y.contains_strictly(*p, margin));
    check(a, b).or_else(|| check(b, a))
}

fn assemble(sigma: f64, use_reflections: bool, convex_only: bool, regions: Vec<RemovableRegion>) -> Result<CoverConstruction, BoundError> {
    let area = HEXAGON_AREA - regions.iter().map(|r| r.area).sum::<f64>();
    let c = CoverConstruction { sigma, use_reflections, convex_only, regions, area };
    c.check_disjoint(1e-9)?;
    Ok(c)
}

fn basic_regions(f: &Frame) -> Result<Vec<RemovableRegion>, BoundError> {
    Ok(vec![corner_region(f, Corner::E), corner_region(f, Corner::C), region_near_c2(f), region_near_a1(f)?, region_near_e2(f)?])
}

/// Cut hexagon minus the three regions near C2, A1 and E2.
pub fn basic_construction(sigma: f64) -> Result<CoverConstruction, BoundError> {
    let f = Frame::new(sigma);
    assemble(sigma, false, false, basic_regions(&f)?)
}

pub fn cover_area_basic(sigma: f64) -> Result<f64, BoundError> {
    let f = Frame::new(sigma);
    Ok(pal_cut_area(sigma) - region_near_c2(&f).area - region_near_a1(&f)?.area - region_near_e2(&f)?.area)
}

/// Basic construction with XYZW removed as well.
pub fn reflected_construction(sigma: f64, convex_only: bool) -> Result<CoverConstruction, BoundError> {
    let f = Frame::new(sigma);
    let mut regions = basic_regions(&f)?;
    regions.push(region_xyzw(&f, convex_only)?);
    assemble(sigma, true, convex_only, regions)
}

pub fn cover_area_reflected(sigma: f64, convex_only: bool) -> Result<f64, BoundError> {
    Ok(reflected_construction(sigma, convex_only)?.area)
}

/// Whether XYZW stays inside the mirrored corner triangle A′.
pub fn xyzw_inside_a_prime(sigma: f64) -> Result<bool, BoundError> {
    let f = Frame::new(sigma);
    let r = region_xyzw(&f, false)?;
    let t = ConvexPolygon { vertices: f.a_prime().to_vec() };
    let t = if crate::geom::shoelace(&t.vertices) < 0.0 { ConvexPolygon { vertices: t.vertices.into_iter().rev().collect() } } else { t };
    Ok(r.boundary.sample_boundary(128).iter().all(|p| t.contains(*p, 1e-12)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundRow {
    pub sigma_degrees: f64,
    pub cover_area_basic: f64,
    pub cover_area_reflected: f64,
}

/// Both cover areas over a grid of slants (degrees, all positive).
pub fn scan_bounds(grid_deg: &[f64], convex_only: bool, exec: Exec) -> Result<Vec<BoundRow>, BoundError> {
    exec.map(grid_deg, |&d| {
        let s = d.to_radians();
        Ok(BoundRow { sigma_degrees: d, cover_area_basic: cover_area_basic(s)?, cover_area_reflected: cover_area_reflected(s, convex_only)? })
    })
    .into_iter()
    .collect()
}

/// Evenly spaced grid `step, 2·step, …, hi` in degrees.
pub fn sigma_grid(step: f64, hi: f64) -> Vec<f64> {
    let n = (hi / step).round() as usize;
    (1..=n).map(|k| k as f64 * step).collect()
}

/// Minimum of the reflected cover area: grid scan then golden-section
/// refinement around the best grid point. Returns `(sigma_deg, area)`.
pub fn minimize_reflected(step: f64, hi: f64, convex_only: bool, exec: Exec) -> Result<(f64, f64), BoundError> {
    let rows = scan_bounds(&sigma_grid(step, hi), convex_only, exec)?;
    let best = rows.iter().min_by(|a, b| a.cover_area_reflected.total_cmp(&b.cover_area_reflected)).ok_or(BoundError::Construction("empty grid"))?;
    let f = |d: f64| cover_area_reflected(d.to_radians(), convex_only);
    let (mut a, mut b) = ((best.sigma_degrees - step).max(step * 1e-3), (best.sigma_degrees + step).min(hi));
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..60 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (a + b);
    let v = f(x)?;
    Ok(if v <= best.cover_area_reflected { (x, v) } else { (best.sigma_degrees, best.cover_area_reflected) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_slant_regions_vanish() {
        let f = Frame::new(0.0);
        assert_eq!(region_near_c2(&f).area, 0.0);
        assert_eq!(region_near_e2(&f).unwrap().area, 0.0);
    }

    #[test]
    fn regions_positive_at_one_degree() {
        let f = Frame::from_degrees(1.0);
        assert!(region_near_c2(&f).area > 0.0);
        assert!(region_near_e2(&f).unwrap().area > 0.0);
        assert!(region_xyzw(&f, true).unwrap().area > 0.0);
    }
}
