//! Annealing several constant-width shapes towards a small common hull.
//!
//! A biased random walk: moves that shrink the hull are always kept, moves
//! that grow it are kept with a fixed probability, and the move size shrinks
//! geometrically. Reflections are not moves; each assignment of mirror images
//! to the asymmetric shapes is annealed separately.

use crate::coversearch::SortedHull;
use crate::exec::Exec;
use crate::geom::{convex_hull, Point2};
use crate::hexfit::ParallelHexagon;
use crate::widthcurves::ConstantWidthShape;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_3, PI, TAU};
use thiserror::Error;

/// Discretization for reported areas.
pub const REPORT_SEGMENTS: usize = 256;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnnealError {
    #[error("nothing to anneal")]
    Empty,
    #[error("{0} asymmetric shapes would need 2^{0} reflection runs (limit 12)")]
    TooManyReflections(usize),
    #[error("invalid parameter: {0}")]
    Params(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AnnealParams {
    /// Chance of keeping a move that grows the hull.
    pub accept_probability: f64,
    /// Step scale factor applied after every epoch.
    pub step_decay: f64,
    pub steps_per_epoch: usize,
    pub initial_step: f64,
    /// The run ends once the step scale falls below this.
    pub min_step: f64,
    pub restarts: usize,
    pub seed: u64,
    pub segments_per_arc: usize,
}

impl Default for AnnealParams {
    fn default() -> Self {
        Self {
            accept_probability: 0.3,
            step_decay: 0.95,
            steps_per_epoch: 1000,
            initial_step: 0.1,
            min_step: 1e-6,
            restarts: 50,
            seed: 0x5eed,
            segments_per_arc: 64,
        }
    }
}

impl AnnealParams {
    pub fn validate(&self) -> Result<(), AnnealError> {
        if !(self.accept_probability > 0.0 && self.accept_probability < 1.0) {
            return Err(AnnealError::Params("accept probability must lie in (0, 1)"));
        }
        if !(self.step_decay > 0.0 && self.step_decay < 1.0) {
            return Err(AnnealError::Params("step decay must lie in (0, 1)"));
        }
        if !(self.initial_step > self.min_step && self.min_step > 0.0) {
            return Err(AnnealError::Params("need initial step > min step > 0"));
        }
        if self.steps_per_epoch == 0 || self.restarts == 0 || self.segments_per_arc == 0 {
            return Err(AnnealError::Params("counts must be positive"));
        }
        Ok(())
    }
}

/// `p ↦ R(rotation)·m(p) + translation`, `m` mirroring in the x-axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Pose {
    pub rotation: f64,
    pub translation: Point2,
    pub reflected: bool,
}

impl Pose {
    pub fn apply(&self, p: Point2) -> Point2 {
        let q = if self.reflected { Point2::new(p.x, -p.y) } else { p };
        q.rotate(self.rotation) + self.translation
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AnnealState {
    pub poses: Vec<Pose>,
    /// Step scale when this state was reached.
    pub step: f64,
    pub area: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LogRow {
    pub restart: usize,
    pub epoch: usize,
    pub step_scale: f64,
    pub best_area: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AnnealOutcome {
    pub best: AnnealState,
    /// Hull area of the best state at [`REPORT_SEGMENTS`] per arc.
    pub report_area: f64,
    pub restart_areas: Vec<f64>,
    /// Reflection assignments tried (one bit per asymmetric shape).
    pub combinations: usize,
    pub log: Vec<LogRow>,
}

/// Placed boundary samples of every shape.
pub fn placed_points(shapes: &[ConstantWidthShape], poses: &[Pose], segments_per_arc: usize) -> Vec<Vec<Point2>> {
    shapes.iter().zip(poses).map(|(s, p)| s.discretize(segments_per_arc).vertices.into_iter().map(|q| p.apply(q)).collect()).collect()
}

pub fn hull_area(parts: &[Vec<Point2>]) -> f64 {
    let all: Vec<Point2> = parts.iter().flatten().copied().collect();
    convex_hull(&all).map_or(0.0, |h| h.area())
}

/// Rule for proposals that grow the hull.
pub fn accept(delta: f64, p: f64, rng: &mut impl Rng) -> bool {
    delta <= 0.0 || rng.gen::<f64>() < p
}

fn disk(rng: &mut impl Rng, r: f64) -> Point2 {
    loop {
        let p = Point2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if p.norm2() <= 1.0 {
            return p * r;
        }
    }
}

fn run(shapes: &[ConstantWidthShape], reflected: &[bool], params: &AnnealParams, restart: usize, rng: &mut ChaCha8Rng) -> (AnnealState, Vec<LogRow>) {
    let local: Vec<Vec<Point2>> = shapes.iter().map(|s| s.discretize(params.segments_per_arc).vertices).collect();
    let mut poses: Vec<Pose> = shapes
        .iter()
        .zip(reflected)
        .map(|(s, &r)| {
            let rotation = rng.gen_range(0.0..TAU);
            let c = if r { Point2::new(s.center.x, -s.center.y) } else { s.center };
            Pose { rotation, translation: -c.rotate(rotation), reflected: r }
        })
        .collect();
    let place = |i: usize, p: &Pose| -> SortedHull {
        let (sin, cos) = p.rotation.sin_cos();
        let flip = if p.reflected { -1.0 } else { 1.0 };
        let ring: Vec<Point2> = local[i].iter().map(|q| Point2::new(cos * q.x - sin * flip * q.y, sin * q.x + cos * flip * q.y) + p.translation).collect();
        SortedHull::from_convex_ring(&ring)
    };
    let mut parts: Vec<SortedHull> = poses.iter().enumerate().map(|(i, p)| place(i, p)).collect();
    let mut area = SortedHull::union(&parts).area;
    let mut step = params.initial_step;
    let mut best = AnnealState { poses: poses.clone(), step, area };
    let mut log = Vec::new();
    let mut epoch = 0;
    // Hull of every part but one, rebuilt only after that part's neighbours move.
    let mut others: Vec<Option<SortedHull>> = vec![None; shapes.len()];
    while step >= params.min_step {
        for _ in 0..params.steps_per_epoch {
            let i = rng.gen_range(0..shapes.len());
            let mut p = poses[i];
            p.translation += disk(rng, step);
            p.rotation += rng.gen_range(-step..step);
            let moved = place(i, &p);
            let rest = others[i].get_or_insert_with(|| SortedHull::union(parts.iter().enumerate().filter(|(j, _)| *j != i).map(|x| x.1)));
            let a = rest.merge(&moved).area;
            if accept(a - area, params.accept_probability, rng) {
                poses[i] = p;
                parts[i] = moved;
                area = a;
                for (j, o) in others.iter_mut().enumerate() {
                    if j != i {
                        *o = None;
                    }
                }
                if a < best.area {
                    best = AnnealState { poses: poses.clone(), step, area: a };
                }
            }
        }
        log.push(LogRow { restart, epoch, step_scale: step, best_area: best.area });
        step *= params.step_decay;
        epoch += 1;
    }
    (best, log)
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn anneal_fixed(shapes: &[ConstantWidthShape], reflected: &[bool], params: &AnnealParams, stream0: u64, exec: Exec) -> Vec<(AnnealState, Vec<LogRow>)> {
    exec.map_range(params.restarts, |r| run(shapes, reflected, params, r, &mut rng_for(params.seed, stream0 + r as u64)))
}

fn outcome(shapes: &[ConstantWidthShape], params: &AnnealParams, runs: Vec<(AnnealState, Vec<LogRow>)>, combinations: usize) -> AnnealOutcome {
    let restart_areas: Vec<f64> = runs.iter().map(|r| r.0.area).collect();
    let mut log = Vec::new();
    let mut best: Option<AnnealState> = None;
    for (s, l) in runs {
        log.extend(l);
        if best.as_ref().is_none_or(|b| s.area < b.area) {
            best = Some(s);
        }
    }
    let best = best.expect("at least one restart");
    let report_area = hull_area(&placed_points(shapes, &best.poses, REPORT_SEGMENTS.max(params.segments_per_arc)));
    AnnealOutcome { best, report_area, restart_areas, combinations, log }
}

/// Best of `params.restarts` independent runs, all shapes unreflected.
pub fn anneal(shapes: &[ConstantWidthShape], params: &AnnealParams, exec: Exec) -> Result<AnnealOutcome, AnnealError> {
    if shapes.is_empty() {
        return Err(AnnealError::Empty);
    }
    params.validate()?;
    let runs = anneal_fixed(shapes, &vec![false; shapes.len()], params, 0, exec);
    Ok(outcome(shapes, params, runs, 1))
}

/// Anneals every assignment of mirror images to the shapes without
/// bilateral symmetry and keeps the best.
pub fn anneal_with_reflections(shapes: &[ConstantWidthShape], params: &AnnealParams, exec: Exec) -> Result<AnnealOutcome, AnnealError> {
    if shapes.is_empty() {
        return Err(AnnealError::Empty);
    }
    params.validate()?;
    let asym: Vec<usize> = (0..shapes.len()).filter(|&i| !shapes[i].bilaterally_symmetric).collect();
    if asym.len() > 12 {
        return Err(AnnealError::TooManyReflections(asym.len()));
    }
    let combos = 1usize << asym.len();
    let mut runs = Vec::new();
    for mask in 0..combos {
        let mut refl = vec![false; shapes.len()];
        for (b, &i) in asym.iter().enumerate() {
            refl[i] = mask >> b & 1 == 1;
        }
        runs.extend(anneal_fixed(shapes, &refl, params, (mask * params.restarts) as u64, exec));
    }
    Ok(outcome(shapes, params, runs, combos))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HexagonWitness {
    pub hexagon: ParallelHexagon,
    pub center: Point2,
    /// Largest signed distance of a shape point outside the hexagon.
    pub residual: f64,
}

fn hexagon_residual(pts: &[Point2], x: &[f64; 5]) -> f64 {
    let c = Point2::new(x[3], x[4]);
    let ns = [x[0], x[1], x[2]].map(Point2::polar);
    let mut worst = f64::NEG_INFINITY;
    for p in pts {
        let d = *p - c;
        for n in &ns {
            worst = worst.max(d.dot(*n).abs() - 0.5);
        }
    }
    worst
}

/// Parallel hexagon (opposite sides one apart, common center) that the
/// posed shapes leave least, by compass search over the three side
/// directions and the center.
pub fn hexagon_witness(shapes: &[ConstantWidthShape], state: &AnnealState, segments_per_arc: usize) -> HexagonWitness {
    let all: Vec<Point2> = placed_points(shapes, &state.poses, segments_per_arc).into_iter().flatten().collect();
    let pts = convex_hull(&all).map(|h| h.vertices).unwrap_or(all);
    let width = |a: f64| {
        let n = Point2::polar(a);
        let (lo, hi) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p.dot(n)), hi.max(p.dot(n))));
        hi - lo
    };
    let phi = (0..360).map(|k| k as f64 * PI / 360.0).min_by(|a, b| width(*a).total_cmp(&width(*b))).unwrap_or(0.0);
    let c = pts.iter().fold(Point2::ORIGIN, |s, p| s + *p) * (1.0 / pts.len().max(1) as f64);
    let mut x = [phi, phi + FRAC_PI_3, phi + 2.0 * FRAC_PI_3, c.x, c.y];
    let mut f = hexagon_residual(&pts, &x);
    let mut h = 0.05;
    while h > 1e-10 {
        let mut improved = false;
        for k in 0..5 {
            for s in [-1.0, 1.0] {
                let mut y = x;
                y[k] += s * h;
                let g = hexagon_residual(&pts, &y);
                if g < f {
                    x = y;
                    f = g;
                    improved = true;
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    let mut a = [x[0], x[1], x[2]].map(|t| t.rem_euclid(PI));
    a.sort_by(f64::total_cmp);
    let hexagon = ParallelHexagon { angle_a: a[1] - a[0], angle_b: a[2] - a[1], rotation: a[0] };
    HexagonWitness { hexagon, center: Point2::new(x[3], x[4]), residual: f }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::widthcurves::regular;

    fn quick() -> AnnealParams {
        AnnealParams { steps_per_epoch: 200, initial_step: 0.05, min_step: 1e-4, restarts: 2, segments_per_arc: 32, ..Default::default() }
    }

    #[test]
    fn lone_circle_keeps_its_area() {
        let c = [ConstantWidthShape::circle()];
        let r = anneal(&c, &quick(), Exec::Sequential).unwrap();
        let n = 4.0 * 32.0;
        let inscribed = 0.5 * n * 0.25 * (TAU / n).sin();
        assert!((r.best.area - inscribed).abs() < 1e-12);
    }

    #[test]
    fn best_never_exceeds_start() {
        let s = [ConstantWidthShape::circle(), regular(3)];
        let r = anneal(&s, &quick(), Exec::Sequential).unwrap();
        assert!(r.log.windows(2).all(|w| w[0].restart != w[1].restart || w[1].best_area <= w[0].best_area));
        assert!(r.best.area > std::f64::consts::FRAC_PI_4 && r.best.area < 0.84, "{}", r.best.area);
    }

    #[test]
    fn witness_for_circle() {
        let c = [ConstantWidthShape::circle()];
        let st = AnnealState { poses: vec![Pose { rotation: 0.3, translation: Point2::new(0.2, -0.1), reflected: false }], step: 0.0, area: 0.0 };
        let w = hexagon_witness(&c, &st, 64);
        assert!(w.residual <= 1e-9, "{}", w.residual);
    }
}
