//! Cross-checks of removed regions against actual placements.

use super::regions::{CoverConstruction, RegionName, RemovableRegion};
use crate::exec::Exec;
use crate::geom::{convex_hull, ConvexPolygon, Piece, Point2};
use crate::hexfit::{admissible_placements, FitShape, PalCut, ParallelHexagon, Placement};
use crate::widthcurves::ConstantWidthShape;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AuditViolation {
    pub shape: usize,
    pub label: String,
    /// Region hit by the least bad placement; `None` when the shape has no
    /// admissible placement at all.
    pub region: Option<RegionName>,
    pub placement: Option<Placement>,
    pub point: Option<Point2>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AuditReport {
    pub shapes: usize,
    pub placements_checked: usize,
    pub violations: Vec<AuditViolation>,
}

/// Smallest-area rectangle around a region, as `(origin, u, v, lu, lv)`:
/// points `origin + a·u + b·v` with `a ∈ [0, lu]`, `b ∈ [0, lv]`. Thin
/// regions fill a far larger share of it than of the axis-aligned box.
fn sampling_frame(r: &RemovableRegion) -> (Point2, Point2, Point2, f64, f64) {
    const PER_PIECE: usize = 256;
    let pts = r.boundary.sample_boundary(PER_PIECE);
    // Arcs bulge past their chords by at most the sagitta.
    let margin = r
        .boundary
        .pieces
        .iter()
        .map(|p| match p {
            Piece::Arc(a) => a.radius * (1.0 - (a.sweep().abs() / (2.0 * PER_PIECE as f64)).cos()),
            Piece::Line { .. } => 0.0,
        })
        .fold(0.0, f64::max)
        * 2.0
        + 1e-12;
    let hull = convex_hull(&pts).map(|h| h.vertices).unwrap_or(pts);
    let mut best: Option<(f64, (Point2, Point2, Point2, f64, f64))> = None;
    for i in 0..hull.len() {
        let e = hull[(i + 1) % hull.len()] - hull[i];
        if e.norm() == 0.0 {
            continue;
        }
        let u = e.unit();
        let v = u.perp();
        let (mut a0, mut a1, mut b0, mut b1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in &hull {
            let (a, b) = (p.dot(u), p.dot(v));
            a0 = a0.min(a);
            a1 = a1.max(a);
            b0 = b0.min(b);
            b1 = b1.max(b);
        }
        let (a0, a1, b0, b1) = (a0 - margin, a1 + margin, b0 - margin, b1 + margin);
        let area = (a1 - a0) * (b1 - b0);
        if best.as_ref().is_none_or(|b| area < b.0) {
            best = Some((area, (u * a0 + v * b0, u, v, a1 - a0, b1 - b0)));
        }
    }
    best.map(|b| b.1).unwrap_or((Point2::ORIGIN, Point2::new(1.0, 0.0), Point2::new(0.0, 1.0), 0.0, 0.0))
}

/// Cells of a grid over the sampling frame that may meet the region. A
/// cell is dropped only when its center is outside and farther from the
/// boundary than its half-diagonal, so no region point is lost.
struct SamplingCells {
    origin: Point2,
    du: Point2,
    dv: Point2,
    cells: Vec<(u32, u32)>,
}

impl SamplingCells {
    const GRID: u32 = 1024;

    fn new(r: &RemovableRegion) -> Self {
        let (origin, u, v, lu, lv) = sampling_frame(r);
        let g = Self::GRID as f64;
        let (du, dv) = (u * (lu / g), v * (lv / g));
        let half = 0.5 * (lu * lu + lv * lv).sqrt() / g;
        let mut cells = Vec::new();
        for i in 0..Self::GRID {
            for j in 0..Self::GRID {
                let c = origin + du * (i as f64 + 0.5) + dv * (j as f64 + 0.5);
                if r.boundary.contains(c) || r.boundary.boundary_distance(c) <= half * (1.0 + 1e-9) {
                    cells.push((i, j));
                }
            }
        }
        Self { origin, du, dv, cells }
    }

    fn area(&self) -> f64 {
        self.du.cross(self.dv).abs() * self.cells.len() as f64
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Point2 {
        let (i, j) = self.cells[rng.gen_range(0..self.cells.len())];
        self.origin + self.du * (i as f64 + rng.gen::<f64>()) + self.dv * (j as f64 + rng.gen::<f64>())
    }
}

/// Random points inside a region, by rejection from its sampling cells.
pub fn region_samples(r: &RemovableRegion, count: usize, rng: &mut ChaCha8Rng) -> Vec<Point2> {
    if r.boundary.is_empty() || count == 0 {
        return Vec::new();
    }
    let cells = SamplingCells::new(r);
    if cells.cells.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(count);
    let mut tries = 0usize;
    while out.len() < count && tries < count * 1000 {
        tries += 1;
        let p = cells.sample(rng);
        if r.boundary.contains(p) {
            out.push(p);
        }
    }
    out
}

/// Region area by uniform point counting over its sampling cells.
pub fn monte_carlo_area(r: &RemovableRegion, samples: usize, seed: u64, exec: Exec) -> f64 {
    if r.boundary.is_empty() || samples == 0 {
        return 0.0;
    }
    let cells = SamplingCells::new(r);
    if cells.cells.is_empty() {
        return 0.0;
    }
    const CHUNK: usize = 1 << 16;
    let chunks = samples.div_ceil(CHUNK);
    let hits: usize = exec
        .map_range(chunks, |c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let n = CHUNK.min(samples - c * CHUNK);
            (0..n).filter(|_| r.boundary.contains(cells.sample(&mut rng))).count()
        })
        .into_iter()
        .sum();
    cells.area() * hits as f64 / samples as f64
}

/// First removed region that a placed shape enters, with a witness point.
fn first_hit(placed: &ConvexPolygon, regions: &[(&RemovableRegion, Vec<Point2>)], margin: f64) -> Option<(RegionName, Point2)> {
    for (r, inner) in regions {
        if let Some(p) = placed.vertices.iter().find(|p| r.contains_strictly(**p, margin)) {
            return Some((r.name, *p));
        }
        if let Some(p) = inner.iter().find(|p| placed.contains(**p, -margin)) {
            return Some((r.name, *p));
        }
    }
    None
}

/// Checks the removal arguments against real placements. Regions that every
/// admissible placement must avoid are checked placement by placement; for
/// the others each shape needs at least one admissible placement (mirror
/// images allowed) that avoids every region. Placed boundaries are sampled
/// with `segments` points per arc, and `samples` random points per region are
/// tested against each placed shape.
pub fn monte_carlo_region_audit(construction: &CoverConstruction, pool: &[ConstantWidthShape], segments: usize, samples: usize, seed: u64, exec: Exec) -> AuditReport {
    let hex = ParallelHexagon::regular();
    let cut = PalCut::new(construction.sigma);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let regions: Vec<(&RemovableRegion, Vec<Point2>)> = construction.removed().map(|r| (r, region_samples(r, samples, &mut rng))).collect();
    let (every, some): (Vec<_>, Vec<_>) = regions.into_iter().partition(|(r, _)| r.name.avoided_by_every_placement());
    let per_shape = exec.map_range(pool.len(), |i| {
        let fs = FitShape::new(pool[i].clone());
        let pls = admissible_placements(&fs, &hex, Some(&cut), true);
        let violation = |region, placement, point| AuditViolation { shape: i, label: pool[i].label.clone(), region, placement, point };
        let mut out = Vec::new();
        let mut clean = false;
        let mut first_miss = None;
        for pl in &pls {
            let placed = ConvexPolygon { vertices: fs.placed_points(pl, segments) };
            if let Some((name, p)) = first_hit(&placed, &every, 1e-9) {
                out.push(violation(Some(name), Some(*pl), Some(p)));
                continue;
            }
            match first_hit(&placed, &some, 1e-9) {
                None => clean = true,
                Some((name, p)) => {
                    first_miss.get_or_insert((name, *pl, p));
                }
            }
        }
        if !clean && out.is_empty() {
            out.push(match first_miss {
                Some((name, pl, p)) => violation(Some(name), Some(pl), Some(p)),
                None => violation(None, None, None),
            });
        }
        (pls.len(), out)
    });
    AuditReport {
        shapes: pool.len(),
        placements_checked: per_shape.iter().map(|x| x.0).sum(),
        violations: per_shape.into_iter().flat_map(|x| x.1).collect(),
    }
}

/// The same construction with every removed region scaled about its
/// centroid (used for mutation testing of the audit).
pub fn inflate_regions(c: &CoverConstruction, k: f64) -> CoverConstruction {
    let mut out = c.clone();
    for r in out.regions.iter_mut() {
        if matches!(r.name, RegionName::CornerE | RegionName::CornerC) || r.boundary.is_empty() {
            continue;
        }
        let pts = r.boundary.sample_boundary(64);
        let ctr = pts.iter().fold(Point2::ORIGIN, |s, p| s + *p) * (1.0 / pts.len() as f64);
        r.boundary = r.boundary.scaled_about(ctr, k);
        r.area *= k * k;
    }
    out
}
