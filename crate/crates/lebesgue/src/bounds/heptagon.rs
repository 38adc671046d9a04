//! Regions at E2 and C3 ruled out by the heptagon chain, and the slant below
//! which they beat the regions of the basic construction.
//!
//! For a point X near E2, the unit circle through X tangent to the E cut
//! fixes M on side DE; the unit circle through M tangent to the D cut fixes N
//! on DC; the one through N tangent to the C cut fixes P on BC. A shape with
//! points at X and P needs `P.x ≥ X.x − w`, where `w` is the half-chord of the
//! unit circle around X on line BC. When the chain forces `P.x` below that,
//! X is excluded.
//!
//! The regions are thin slivers (about 10⁻⁷ long and 10⁻¹⁰ wide at zero
//! slant), so areas come from polar quadrature around the corner with
//! log-spaced angles, and membership is evaluated in the generic precision.

use super::frame::{Corner, FrameT};
use super::regions::{RegionName, RemovableRegion};
use super::BoundError;
use crate::exec::Exec;
use crate::ext::{Real, P2};
use crate::geom::{wrap_angle, ArcPolygon, Point2};
use crate::widthcurves::ConstantWidthShape;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

fn unit<T: Real>(v: &P2<T>) -> P2<T> {
    let l = v.norm2().sqrt();
    P2::new(v.x.clone() / l.clone(), v.y.clone() / l)
}

/// Center of the unit circle through `x` touching the line `p·n = 1/2` from
/// inside, shifted from the foot of `x` along `dir`.
fn tangent_center<T: Real>(x: &P2<T>, n: &P2<T>, dir: &P2<T>) -> Option<P2<T>> {
    let d = n.dot(x) + T::from_f64(0.5);
    let foot = x.sub(&n.scale(&d));
    let t2 = T::from_f64(1.0) - d.clone() * d;
    if t2 < T::from_f64(0.0) {
        return None;
    }
    Some(foot.add(&dir.scale(&t2.sqrt())))
}

/// Unit circle around `o` against the line `p·n = 1/2`, point nearest `near`.
fn circle_on_line<T: Real>(o: &P2<T>, n: &P2<T>, near: &P2<T>) -> Option<P2<T>> {
    let tv = n.perp();
    let p0 = n.scale(&T::from_f64(0.5));
    let w = p0.sub(o);
    let b = w.dot(&tv);
    let c = w.norm2() - T::from_f64(1.0);
    let disc = b.clone() * b.clone() - c;
    if disc < T::from_f64(0.0) {
        return None;
    }
    let r = disc.sqrt();
    let c1 = p0.add(&tv.scale(&(-b.clone() - r.clone())));
    let c2 = p0.add(&tv.scale(&(-b + r)));
    Some(if c1.sub(near).norm2() < c2.sub(near).norm2() { c1 } else { c2 })
}

/// Chain points `[O1, M, O2, N, O3, P]` from `x`.
pub fn chain<T: Real>(f: &FrameT<T>, x: &P2<T>) -> Option<[P2<T>; 6]> {
    let side = |deg: f64| P2::polar(&T::from_degrees(deg));
    let along = |c: Corner| unit(&f.p3(c).sub(f.p2(c)));
    let o1 = tangent_center(x, f.normal(Corner::E), &along(Corner::E))?;
    let m = circle_on_line(&o1, &side(30.0), f.p3(Corner::E))?;
    let o2 = tangent_center(&m, f.normal(Corner::D), &along(Corner::D))?;
    let n = circle_on_line(&o2, &side(-30.0), f.p3(Corner::D))?;
    let o3 = tangent_center(&n, f.normal(Corner::C), &along(Corner::C))?;
    let p = circle_on_line(&o3, &side(-90.0), f.p3(Corner::C))?;
    Some([o1, m, o2, n, o3, p])
}

/// Slack of the chain at `x`; negative means `x` is excluded.
pub fn chain_slack<T: Real>(f: &FrameT<T>, x: &P2<T>) -> Option<T> {
    let [_, _, _, _, _, p] = chain(f, x)?;
    let h = T::from_f64(0.5) - x.y.clone();
    let w2 = h.clone() * (T::from_f64(2.0) - h);
    let w = if w2 > T::from_f64(0.0) { w2.sqrt() } else { T::from_f64(0.0) };
    Some(p.x - (x.x.clone() - w))
}

pub fn chain_excludes<T: Real>(f: &FrameT<T>, x: &P2<T>) -> bool {
    chain_slack(f, x).is_some_and(|g| g < T::from_f64(0.0))
}

/// Wedge at `apex` between two edge directions, opening towards the center.
#[derive(Debug, Clone, Copy)]
pub struct Wedge {
    pub start: f64,
    pub sweep: f64,
}

impl Wedge {
    pub fn new(apex: Point2, d0: Point2, d1: Point2) -> Self {
        let start = d0.angle();
        let mut sweep = wrap_angle(d1.angle() - start);
        let mid = Point2::polar(start + 0.5 * sweep);
        if mid.dot(-apex) < 0.0 {
            sweep -= 2.0 * PI * sweep.signum();
        }
        Self { start, sweep }
    }
}

/// Result of a polar quadrature: area and sampled boundary offsets.
#[derive(Debug, Clone)]
pub struct PolarRegion {
    pub area: f64,
    pub boundary: Vec<Point2>,
}

/// Area of the excluded part of a wedge, assuming it is star-shaped from the
/// apex. Each half of the wedge uses `ψ = arm ± e^u` with Simpson's rule in
/// `u` over `n` intervals, and the radius along each ray is located by
/// bisection in `ln r`.
pub fn polar_area<T: Real, F: Fn(&P2<T>) -> bool>(apex: &P2<T>, wedge: Wedge, excluded: F, n: usize) -> PolarRegion {
    let n = n + n % 2;
    let at = |dir: Point2, r: f64| excluded(&apex.add(&P2::new(T::from_f64(r * dir.x), T::from_f64(r * dir.y))));
    let radius = |dir: Point2, guess: f64| -> f64 {
        const FLOOR: f64 = 1e-26;
        const CAP: f64 = 0.25;
        let mut lo;
        let mut hi;
        let mut r = guess.clamp(FLOOR, CAP);
        if at(dir, r) {
            loop {
                let next = r * 4.0;
                if next > CAP {
                    return r;
                }
                if !at(dir, next) {
                    lo = r;
                    hi = next;
                    break;
                }
                r = next;
            }
        } else {
            loop {
                let next = r / 4.0;
                if next < FLOOR {
                    return 0.0;
                }
                if at(dir, next) {
                    lo = next;
                    hi = r;
                    break;
                }
                r = next;
            }
        }
        let (mut a, mut b) = (lo.ln(), hi.ln());
        for _ in 0..32 {
            let m = 0.5 * (a + b);
            if at(dir, m.exp()) {
                a = m;
            } else {
                b = m;
            }
        }
        lo = a.exp();
        hi = b.exp();
        0.5 * (lo + hi)
    };
    let sgn = wedge.sweep.signum();
    let half = 0.5 * wedge.sweep.abs();
    let (u0, u1) = ((1e-13f64).ln(), half.ln());
    let h = (u1 - u0) / n as f64;
    let mut area = 0.0;
    let mut pts_a = Vec::with_capacity(n + 1);
    let mut pts_b = Vec::with_capacity(n + 1);
    for (arm, dirsgn, pts) in [(wedge.start, sgn, &mut pts_a), (wedge.start + wedge.sweep, -sgn, &mut pts_b)] {
        let mut guess = 1e-9;
        let mut sum = 0.0;
        for k in 0..=n {
            let u = u0 + k as f64 * h;
            let psi = arm + dirsgn * u.exp();
            let dir = Point2::polar(psi);
            let r = radius(dir, guess);
            if r > 0.0 {
                guess = r;
            }
            pts.push(dir * r);
            let w = if k == 0 || k == n { 1.0 } else if k % 2 == 1 { 4.0 } else { 2.0 };
            sum += w * 0.5 * r * r * u.exp();
        }
        area += sum * h / 3.0;
    }
    pts_b.reverse();
    let mut boundary = vec![Point2::ORIGIN];
    boundary.extend(pts_a);
    boundary.extend(pts_b);
    PolarRegion { area, boundary }
}

fn e2_wedge<T: Real>(f: &FrameT<T>) -> (P2<T>, Wedge) {
    let e2 = f.p2(Corner::E).clone();
    let e2f = e2.to_f64();
    let w = Wedge::new(e2f, Point2::new(-1.0, 0.0), f.p3(Corner::E).sub(&e2).to_f64());
    (e2, w)
}

/// Excluded region at E2 for slant `sigma_deg`.
pub fn heptagon_region_e2<T: Real>(sigma_deg: f64, n: usize) -> PolarRegion {
    let f = FrameT::<T>::from_degrees(sigma_deg);
    let (apex, w) = e2_wedge(&f);
    polar_area(&apex, w, |x| chain_excludes(&f, x), n)
}

/// Both heptagon regions as removable regions (the C3 one is the mirror of
/// the E2 computation at the opposite slant).
pub fn heptagon_regions<T: Real>(sigma_deg: f64, n: usize) -> [RemovableRegion; 2] {
    let e = heptagon_region_e2::<T>(sigma_deg, n);
    let c = heptagon_region_e2::<T>(-sigma_deg, n);
    let e2 = crate::bounds::frame::Frame::from_degrees(sigma_deg).p2(Corner::E);
    let poly = |pts: &[Point2], base: Point2, mirror: bool| {
        let v: Vec<Point2> = pts.iter().map(|p| base + *p).map(|p| if mirror { Point2::new(p.x, -p.y) } else { p }).collect();
        ArcPolygon::polygon(&v).into_ccw()
    };
    let e2m = crate::bounds::frame::Frame::from_degrees(-sigma_deg).p2(Corner::E);
    [
        RemovableRegion { name: RegionName::HeptagonE2, boundary: poly(&e.boundary, e2, false), area: e.area, justification: "heptagon chain at E2".into() },
        RemovableRegion { name: RegionName::HeptagonC3, boundary: poly(&c.boundary, e2m, true), area: c.area, justification: "heptagon chain at C3".into() },
    ]
}

fn seg_dist2<T: Real>(x: &P2<T>, a: &P2<T>, b: &P2<T>) -> T {
    let d = b.sub(a);
    let zero = T::from_f64(0.0);
    let one = T::from_f64(1.0);
    let t = x.sub(a).dot(&d) / d.norm2();
    let t = if t < zero.clone() { zero } else if t > one { one } else { t };
    x.sub(&a.add(&d.scale(&t))).norm2()
}

/// Unit circle around `c` against the line `p + t d`, point nearest `p`.
fn line_unit_circle<T: Real>(p: &P2<T>, d: &P2<T>, c: &P2<T>) -> Option<P2<T>> {
    let dd = d.norm2();
    let w = p.sub(c);
    let b = w.dot(d) / dd.clone();
    let cc = (w.norm2() - T::from_f64(1.0)) / dd;
    let disc = b.clone() * b.clone() - cc;
    if disc < T::from_f64(0.0) {
        return None;
    }
    let r = disc.sqrt();
    let (t1, t2) = (-b.clone() - r.clone(), -b + r);
    let t = if t1.abs() < t2.abs() { t1 } else { t2 };
    Some(p.add(&d.scale(&t)))
}

/// Regions of the basic construction at E2 and C2, by the same quadrature.
pub fn basic_corner_areas<T: Real>(sigma_deg: f64, n: usize) -> (f64, f64) {
    if sigma_deg == 0.0 {
        return (0.0, 0.0);
    }
    let f = FrameT::<T>::from_degrees(sigma_deg);
    let one = T::from_f64(1.0);
    let (apex, w) = e2_wedge(&f);
    let (b1, b2, b3, c3) = (f.p1(Corner::B).clone(), f.p2(Corner::B).clone(), f.p3(Corner::B).clone(), f.p3(Corner::C).clone());
    let far_from_triangle = |x: &P2<T>| seg_dist2(x, &b1, &b2) > one.clone() && seg_dist2(x, &b2, &b3) > one.clone() && seg_dist2(x, &b3, &b1) > one.clone();
    let e2 = polar_area(&apex, w, |x| seg_dist2(x, &b2, &c3) > one.clone() || far_from_triangle(x), n).area;
    let c2 = f.p2(Corner::C).clone();
    let f3 = f.p3(Corner::F).clone();
    let (Some(g), Some(k)) = (line_unit_circle(&c2, &f.p1(Corner::D).sub(&c2), &f3), line_unit_circle(&c2, &f.p3(Corner::C).sub(&c2), &f3)) else {
        return (e2, 0.0);
    };
    let chord = k.sub(&g);
    let side = chord.cross(&c2.sub(&g)) > T::from_f64(0.0);
    let wc = Wedge::new(c2.to_f64(), f.p1(Corner::D).sub(&c2).to_f64(), f.p3(Corner::C).sub(&c2).to_f64());
    let c2a = polar_area(&c2, wc, |x| x.sub(&f3).norm2() > one.clone() && (chord.cross(&x.sub(&g)) > T::from_f64(0.0)) == side, n).area;
    (e2, c2a)
}

/// Point L on EF where the chain slack vanishes, as the distance `E2L`.
pub fn arm_length<T: Real>(f: &FrameT<T>) -> Option<f64> {
    let e2 = f.p2(Corner::E).clone();
    let at = |s: f64| chain_excludes(f, &e2.add(&P2::new(T::from_f64(-s), T::from_f64(0.0))));
    let mut s = 1e-20;
    if !at(s) {
        return None;
    }
    while at(s * 4.0) {
        s *= 4.0;
        if s > 0.1 {
            return None;
        }
    }
    let (mut a, mut b) = (s, 4.0 * s);
    for _ in 0..80 {
        let m = 0.5 * (a + b);
        if at(m) {
            a = m;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

/// The limiting heptagon `L O1 M O2 N O3 P`.
pub fn critical_heptagon<T: Real>(sigma_deg: f64) -> Result<ConstantWidthShape, BoundError> {
    let f = FrameT::<T>::from_degrees(sigma_deg);
    let s = arm_length(&f).ok_or(BoundError::Construction("heptagon chain has no tight point on EF"))?;
    let l = f.p2(Corner::E).add(&P2::new(T::from_f64(-s), T::from_f64(0.0)));
    let [o1, m, o2, n, o3, p] = chain(&f, &l).ok_or(BoundError::Construction("heptagon chain broke"))?;
    let v = vec![l.to_f64(), o1.to_f64(), m.to_f64(), o2.to_f64(), n.to_f64(), o3.to_f64(), p.to_f64()];
    ConstantWidthShape::from_star_vertices(v, None, "critical heptagon").map_err(|_| BoundError::Construction("heptagon is not of unit width"))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CrossoverRow {
    pub sigma_degrees: f64,
    /// Heptagon regions at E2 and C3.
    pub heptagon: f64,
    /// Basic regions at E2 and C2.
    pub basic: f64,
}

impl CrossoverRow {
    pub fn difference(&self) -> f64 {
        self.heptagon - self.basic
    }
}

pub fn crossover_row<T: Real>(sigma_deg: f64, n: usize) -> CrossoverRow {
    let he = heptagon_region_e2::<T>(sigma_deg, n).area;
    let hc = heptagon_region_e2::<T>(-sigma_deg, n).area;
    let (be, bc) = basic_corner_areas::<T>(sigma_deg, n);
    CrossoverRow { sigma_degrees: sigma_deg, heptagon: he + hc, basic: be + bc }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Crossover {
    /// Slant where the difference changes sign, if it does below `hi`.
    pub sigma_degrees: Option<f64>,
    pub rows: Vec<CrossoverRow>,
}

/// Scans `0` and a log grid of `points` slants from 10⁻⁷° up to `hi_deg`,
/// then refines the first sign change of heptagon minus basic area with
/// `bisections` geometric bisections.
pub fn find_crossover<T: Real + Send>(hi_deg: f64, points: usize, bisections: usize, n: usize, exec: Exec) -> Crossover {
    let mut grid = vec![0.0];
    let k = points.max(2) - 1;
    let lo: f64 = 1e-7;
    grid.extend((0..=k).map(|i| lo * (hi_deg / lo).powf(i as f64 / k as f64)));
    let mut rows = exec.map(&grid, |&s| crossover_row::<T>(s, n));
    let idx = rows.windows(2).position(|w| w[0].difference() > 0.0 && w[1].difference() <= 0.0);
    let sigma = idx.map(|i| {
        let (mut a, mut b) = (rows[i].sigma_degrees.max(lo * 1e-3), rows[i + 1].sigma_degrees);
        for _ in 0..bisections {
            let m = (a * b).sqrt();
            let r = crossover_row::<T>(m, n);
            if r.difference() > 0.0 {
                a = m;
            } else {
                b = m;
            }
            rows.push(r);
        }
        (a * b).sqrt()
    });
    rows.sort_by(|x, y| x.sigma_degrees.total_cmp(&y.sigma_degrees));
    Crossover { sigma_degrees: sigma, rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arm_matches_hansen_x3() {
        let f = FrameT::<crate::ext::Ext>::from_degrees(0.0);
        let s = arm_length(&f).unwrap();
        let x3 = crate::bounds::hansen::hansen_x::<f64>(3).unwrap();
        assert!(((s - x3) / x3).abs() < 1e-6, "{s} vs {x3}");
    }

    #[test]
    fn heptagon_symmetric_at_zero() {
        let h = critical_heptagon::<crate::ext::Ext>(0.0).unwrap();
        let v = &h.vertices;
        assert!(v[3].dist(Point2::new(-0.5, 0.0)) < 1e-10);
        for i in 0..3 {
            let a = v[i];
            let b = v[6 - i];
            assert!((a.x - b.x).abs() < 1e-10 && (a.y + b.y).abs() < 1e-10);
        }
    }
}
