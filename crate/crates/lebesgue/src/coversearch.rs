//! Minimal convex cover of a finite shape set inside a fixed hexagon.
//!
//! Each shape may only sit at the placements where it touches all six sides
//! (the roots of `t`), so the minimum over placement combinations of the hull
//! area of the union is a lower bound for any convex cover inside that
//! hexagon. Shapes are discretized by inscribed polygons, which keeps every
//! computed area below the true one.

use crate::exec::Exec;
use crate::geom::Point2;
use crate::hexfit::{admissible_placements, FitShape, PalCut, ParallelHexagon, Placement};
use crate::widthcurves::ConstantWidthShape;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering as AtomicOrdering};
use thiserror::Error;

/// Slack for pruning: a branch is cut only when its bound exceeds the
/// incumbent by more than this, so equal-area leaves are always visited.
const PRUNE_EPS: f64 = 1e-12;

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;
pub const SEARCH_SEGMENTS: usize = 32;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("shape {index} ({label}) has no admissible placement")]
    Infeasible { index: usize, label: String },
    #[error("no shapes to cover")]
    Empty,
    #[error("exhaustive oracle is limited to 3 shapes, got {0}")]
    OracleTooLarge(usize),
}

/// Convex hull whose vertices are kept in lexicographic order, so two hulls
/// merge in linear time.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SortedHull {
    pub sorted: Vec<Point2>,
    pub area: f64,
}

fn lex(a: &Point2, b: &Point2) -> Ordering {
    a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y))
}

fn turn(o: Point2, a: Point2, b: Point2) -> f64 {
    (a - o).cross(b - o)
}

/// Monotone chain over lexicographically sorted, deduplicated points.
fn chain(pts: &[Point2]) -> SortedHull {
    if pts.len() < 3 {
        return SortedHull { sorted: pts.to_vec(), area: 0.0 };
    }
    let mut lower: Vec<Point2> = Vec::with_capacity(pts.len());
    for &p in pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point2> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    let mut ring = lower.clone();
    ring.extend_from_slice(&upper[1..upper.len() - 1]);
    let area = crate::geom::shoelace(&ring);
    // Both chains share the endpoints; the upper one runs right to left.
    let inner: Vec<Point2> = upper[1..upper.len() - 1].iter().rev().copied().collect();
    SortedHull { sorted: merge_sorted(&lower, &inner), area }
}

fn merge_sorted(a: &[Point2], b: &[Point2]) -> Vec<Point2> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match lex(&a[i], &b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl SortedHull {
    pub fn from_points(points: &[Point2]) -> Self {
        let mut pts = points.to_vec();
        pts.sort_by(lex);
        pts.dedup();
        chain(&pts)
    }

    pub fn merge(&self, other: &SortedHull) -> SortedHull {
        if self.sorted.is_empty() {
            return other.clone();
        }
        chain(&merge_sorted(&self.sorted, &other.sorted))
    }

    /// Hull of a convex ring (either orientation) without sorting: the two
    /// chains between the extreme vertices are already monotone.
    pub fn from_convex_ring(ring: &[Point2]) -> Self {
        let n = ring.len();
        if n < 3 {
            return Self::from_points(ring);
        }
        let lo = (0..n).min_by(|&a, &b| lex(&ring[a], &ring[b])).unwrap_or(0);
        let hi = (0..n).max_by(|&a, &b| lex(&ring[a], &ring[b])).unwrap_or(0);
        let walk = |from: usize, to: usize, step: usize| {
            let mut v = vec![ring[from]];
            let mut k = from;
            while k != to {
                k = (k + step) % n;
                v.push(ring[k]);
            }
            v
        };
        let a = walk(lo, hi, 1);
        let b = walk(lo, hi, n - 1);
        let mut pts = merge_sorted(&a, &b);
        if !pts.windows(2).all(|w| lex(&w[0], &w[1]) == Ordering::Less) {
            pts.sort_by(lex);
            pts.dedup();
        }
        chain(&pts)
    }

    /// Hull of several hulls with a single chain pass.
    pub fn union<'a>(parts: impl IntoIterator<Item = &'a SortedHull>) -> SortedHull {
        let mut all: Vec<Point2> = Vec::new();
        for h in parts {
            all = merge_sorted(&all, &h.sorted);
        }
        chain(&all)
    }

    /// Vertices in counterclockwise order starting from the lowest-left one.
    pub fn ccw(&self) -> Vec<Point2> {
        chain_ring(&self.sorted)
    }
}

fn chain_ring(sorted: &[Point2]) -> Vec<Point2> {
    if sorted.len() < 3 {
        return sorted.to_vec();
    }
    let (first, last) = (sorted[0], sorted[sorted.len() - 1]);
    let d = last - first;
    let mut lower = vec![first];
    let mut upper = Vec::new();
    for &p in &sorted[1..sorted.len() - 1] {
        if d.cross(p - first) < 0.0 {
            lower.push(p);
        } else {
            upper.push(p);
        }
    }
    lower.push(last);
    lower.extend(upper.into_iter().rev());
    lower
}

#[derive(Debug, Clone)]
pub struct SearchProblem {
    pub shapes: Vec<ConstantWidthShape>,
    pub hex: ParallelHexagon,
    pub cut: Option<PalCut>,
    pub segments_per_arc: usize,
    pub allow_reflection: bool,
    /// Node budget; the result is uncertified once it runs out.
    pub budget: u64,
}

impl SearchProblem {
    pub fn new(shapes: Vec<ConstantWidthShape>, hex: ParallelHexagon, cut: Option<PalCut>) -> Self {
        Self { shapes, hex, cut, segments_per_arc: SEARCH_SEGMENTS, allow_reflection: true, budget: DEFAULT_BUDGET }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CoverResult {
    pub area: f64,
    pub chosen: Vec<Placement>,
    /// Index of each chosen placement in the shape's admissible list.
    pub indices: Vec<usize>,
    /// True when the search finished inside its budget.
    pub lower_bound_certified: bool,
    pub nodes: u64,
}

/// A shape's admissible placements with their discretized hulls.
#[derive(Debug, Clone)]
pub struct PreparedShape {
    pub label: String,
    pub placements: Vec<Placement>,
    pub hulls: Vec<SortedHull>,
}

impl PreparedShape {
    pub fn new(shape: &ConstantWidthShape, hex: &ParallelHexagon, cut: Option<&PalCut>, allow_reflection: bool, segments_per_arc: usize) -> Self {
        let fs = FitShape::new(shape.clone());
        let placements = admissible_placements(&fs, hex, cut, allow_reflection);
        let hulls = placements.iter().map(|pl| SortedHull::from_points(&fs.placed_points(pl, segments_per_arc))).collect();
        Self { label: shape.label.clone(), placements, hulls }
    }
}

pub fn prepare(problem: &SearchProblem, exec: Exec) -> Result<Vec<PreparedShape>, SearchError> {
    if problem.shapes.is_empty() {
        return Err(SearchError::Empty);
    }
    let prepared =
        exec.map(&problem.shapes, |s| PreparedShape::new(s, &problem.hex, problem.cut.as_ref(), problem.allow_reflection, problem.segments_per_arc));
    check_feasible(&prepared.iter().collect::<Vec<_>>())?;
    Ok(prepared)
}

fn check_feasible(shapes: &[&PreparedShape]) -> Result<(), SearchError> {
    match shapes.iter().position(|s| s.placements.is_empty()) {
        Some(index) => Err(SearchError::Infeasible { index, label: shapes[index].label.clone() }),
        None => Ok(()),
    }
}

/// Hull of a full choice, merged in shape order. Both the search and the
/// oracle score leaves with this, so equal choices give equal bits.
pub fn choice_hull(shapes: &[&PreparedShape], choice: &[usize]) -> SortedHull {
    let mut h = SortedHull::default();
    for (s, &k) in shapes.iter().zip(choice) {
        h = h.merge(&s.hulls[k]);
    }
    h
}

fn better(a: f64, ca: &[usize], b: f64, cb: &[usize]) -> bool {
    a < b || (a == b && ca < cb)
}

fn result_from(shapes: &[&PreparedShape], area: f64, choice: Vec<usize>, certified: bool, nodes: u64) -> CoverResult {
    let chosen = shapes.iter().zip(&choice).map(|(s, &k)| s.placements[k]).collect();
    CoverResult { area, chosen, indices: choice, lower_bound_certified: certified, nodes }
}

/// Every combination of placements, no pruning. Testing oracle.
pub fn exhaustive_oracle(problem: &SearchProblem) -> Result<CoverResult, SearchError> {
    if problem.shapes.len() > 3 {
        return Err(SearchError::OracleTooLarge(problem.shapes.len()));
    }
    let prepared = prepare(problem, Exec::Sequential)?;
    let shapes: Vec<&PreparedShape> = prepared.iter().collect();
    let counts: Vec<usize> = shapes.iter().map(|s| s.placements.len()).collect();
    let mut choice = vec![0usize; shapes.len()];
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut nodes = 0u64;
    loop {
        nodes += 1;
        let a = choice_hull(&shapes, &choice).area;
        if best.as_ref().is_none_or(|(b, cb)| better(a, &choice, *b, cb)) {
            best = Some((a, choice.clone()));
        }
        let mut i = 0;
        while i < choice.len() {
            choice[i] += 1;
            if choice[i] < counts[i] {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            break;
        }
    }
    let (area, choice) = best.expect("at least one combination");
    Ok(result_from(&shapes, area, choice, true, nodes))
}

struct Shared {
    incumbent: AtomicU64,
    nodes: AtomicU64,
    budget: u64,
    exhausted: AtomicBool,
}

impl Shared {
    fn incumbent(&self) -> f64 {
        f64::from_bits(self.incumbent.load(AtomicOrdering::Relaxed))
    }

    /// Areas are nonnegative, so their bit patterns order like the values.
    fn offer(&self, a: f64) {
        self.incumbent.fetch_min(a.to_bits(), AtomicOrdering::Relaxed);
    }

    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, AtomicOrdering::Relaxed);
        if n >= self.budget {
            self.exhausted.store(true, AtomicOrdering::Relaxed);
            return false;
        }
        true
    }
}

struct Worker<'a> {
    shapes: &'a [&'a PreparedShape],
    shared: &'a Shared,
    best: Option<(f64, Vec<usize>)>,
}

/// Children of the most constrained remaining shape, sorted by hull area.
struct Branch {
    shape: usize,
    bound: f64,
    children: Vec<(f64, usize, SortedHull)>,
}

impl<'a> Worker<'a> {
    /// For every remaining shape, the smallest hull after adding it; the
    /// largest of those minima bounds every completion. Branches on that
    /// shape (ties to the lowest index). Shapes with a placement inside the
    /// current hull are returned separately: fixing them there loses nothing,
    /// since every completion's hull contains the current one.
    fn branch(&self, hull: &SortedHull, remaining: &[usize]) -> (Option<Branch>, Vec<(usize, usize)>) {
        let mut out: Option<Branch> = None;
        let mut free = Vec::new();
        for &j in remaining {
            let mut kids: Vec<(f64, usize, SortedHull)> = self.shapes[j]
                .hulls
                .iter()
                .enumerate()
                .map(|(k, h)| {
                    let m = hull.merge(h);
                    (m.area, k, m)
                })
                .collect();
            kids.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            let lo = kids[0].0;
            if !hull.sorted.is_empty() && lo <= hull.area {
                free.push((j, kids[0].1));
                continue;
            }
            if out.as_ref().is_none_or(|b| lo > b.bound) {
                out = Some(Branch { shape: j, bound: lo, children: kids });
            }
        }
        (out, free)
    }

    fn leaf(&mut self, choice: &[Option<usize>]) {
        let c: Vec<usize> = choice.iter().map(|k| k.expect("complete choice")).collect();
        let a = choice_hull(self.shapes, &c).area;
        if self.best.as_ref().is_none_or(|(b, cb)| better(a, &c, *b, cb)) {
            self.shared.offer(a);
            self.best = Some((a, c));
        }
    }

    fn dfs(&mut self, hull: &SortedHull, remaining: &mut Vec<usize>, choice: &mut Vec<Option<usize>>) {
        if !self.shared.tick() {
            return;
        }
        let (br, free) = self.branch(hull, remaining);
        for &(j, k) in &free {
            choice[j] = Some(k);
        }
        remaining.retain(|j| !free.iter().any(|f| f.0 == *j));
        match br {
            None => self.leaf(choice),
            Some(br) if br.bound <= self.shared.incumbent() + PRUNE_EPS => {
                let pos = remaining.iter().position(|&j| j == br.shape).expect("branch shape is remaining");
                remaining.swap_remove(pos);
                for (a, k, h) in &br.children {
                    if *a > self.shared.incumbent() + PRUNE_EPS || self.shared.exhausted.load(AtomicOrdering::Relaxed) {
                        break;
                    }
                    choice[br.shape] = Some(*k);
                    self.dfs(h, remaining, choice);
                }
                choice[br.shape] = None;
                remaining.push(br.shape);
            }
            Some(_) => {}
        }
        for &(j, _) in &free {
            choice[j] = None;
            remaining.push(j);
        }
        remaining.sort_unstable();
    }
}

/// Exact minimum over placement combinations of the discretized hull area,
/// by depth-first branch and bound. `warm` is an optional complete choice
/// used as the first incumbent.
pub fn search_prepared(shapes: &[&PreparedShape], budget: u64, warm: Option<&[usize]>, exec: Exec) -> Result<CoverResult, SearchError> {
    if shapes.is_empty() {
        return Err(SearchError::Empty);
    }
    check_feasible(shapes)?;
    let warm = warm.map(|c| (choice_hull(shapes, c).area, c.to_vec()));
    let shared = Shared {
        incumbent: AtomicU64::new(warm.as_ref().map_or(f64::INFINITY, |w| w.0).to_bits()),
        nodes: AtomicU64::new(0),
        budget,
        exhausted: AtomicBool::new(false),
    };
    let root = Worker { shapes, shared: &shared, best: None };
    let all: Vec<usize> = (0..shapes.len()).collect();
    let br = root.branch(&SortedHull::default(), &all).0.expect("the empty hull frees nothing");
    let rest: Vec<usize> = all.into_iter().filter(|&j| j != br.shape).collect();
    let bests = exec.map(&br.children, |(a, k, h)| {
        let mut w = Worker { shapes, shared: &shared, best: None };
        if *a <= shared.incumbent() + PRUNE_EPS {
            let mut choice = vec![None; shapes.len()];
            choice[br.shape] = Some(*k);
            w.dfs(h, &mut rest.clone(), &mut choice);
        }
        w.best
    });
    let mut best = warm;
    for (a, c) in bests.into_iter().flatten() {
        if best.as_ref().is_none_or(|(b, cb)| better(a, &c, *b, cb)) {
            best = Some((a, c));
        }
    }
    let nodes = shared.nodes.load(AtomicOrdering::Relaxed).min(budget);
    let certified = !shared.exhausted.load(AtomicOrdering::Relaxed);
    let (area, choice) = match best {
        Some(b) => b,
        None => greedy_choice(shapes),
    };
    Ok(result_from(shapes, area, choice, certified, nodes))
}

/// Each shape in turn at its placement that grows the hull least. Stands in
/// when the budget runs out before any leaf is reached.
fn greedy_choice(shapes: &[&PreparedShape]) -> (f64, Vec<usize>) {
    let mut hull = SortedHull::default();
    let mut choice = Vec::with_capacity(shapes.len());
    for s in shapes {
        let (k, m) = s
            .hulls
            .iter()
            .map(|h| hull.merge(h))
            .enumerate()
            .min_by(|a, b| a.1.area.total_cmp(&b.1.area))
            .expect("feasible shapes have placements");
        choice.push(k);
        hull = m;
    }
    (choice_hull(shapes, &choice).area, choice)
}

pub fn min_cover_area(problem: &SearchProblem, exec: Exec) -> Result<CoverResult, SearchError> {
    let prepared = prepare(problem, exec)?;
    let shapes: Vec<&PreparedShape> = prepared.iter().collect();
    search_prepared(&shapes, problem.budget, None, exec)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IncrementStep {
    /// Index of the added shape in the pool.
    pub shape: usize,
    pub label: String,
    pub area: f64,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IncrementalResult {
    pub steps: Vec<IncrementStep>,
    /// Placements of the last certified step, in step order.
    pub chosen: Vec<Placement>,
    /// False when a step ran out of budget and the sequence was cut there.
    pub complete: bool,
    /// Every pool shape fits in the final hull, so more steps change nothing.
    pub converged: bool,
}

impl IncrementalResult {
    pub fn final_area(&self) -> f64 {
        self.steps.last().map_or(0.0, |s| s.area)
    }

    pub fn areas(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.area).collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct IncrementalOptions {
    pub max_shapes: usize,
    /// Node budget per step.
    pub budget: u64,
    pub segments_per_arc: usize,
    pub allow_reflection: bool,
}

impl Default for IncrementalOptions {
    fn default() -> Self {
        Self { max_shapes: 12, budget: DEFAULT_BUDGET, segments_per_arc: SEARCH_SEGMENTS, allow_reflection: true }
    }
}

/// Grows the shape set one at a time, always adding the pool shape that the
/// current optimal hull covers worst (largest smallest hull after adding
/// it), and re-solves exactly after each addition.
pub fn incremental_lower_bound(
    pool: &[ConstantWidthShape],
    hex: &ParallelHexagon,
    cut: Option<&PalCut>,
    opts: &IncrementalOptions,
    exec: Exec,
) -> Result<IncrementalResult, SearchError> {
    if pool.is_empty() {
        return Err(SearchError::Empty);
    }
    let prepared = exec.map(pool, |s| PreparedShape::new(s, hex, cut, opts.allow_reflection, opts.segments_per_arc));
    check_feasible(&prepared.iter().collect::<Vec<_>>())?;
    let mut chosen: Vec<usize> = Vec::new();
    let mut choice: Vec<usize> = Vec::new();
    let mut hull = SortedHull::default();
    let mut steps: Vec<IncrementStep> = Vec::new();
    let mut last: Vec<Placement> = Vec::new();
    let mut complete = true;
    let mut converged = chosen.len() == pool.len();
    while chosen.len() < opts.max_shapes.min(pool.len()) {
        let scores = exec.map_range(pool.len(), |i| {
            if chosen.contains(&i) {
                return None;
            }
            let (a, k) = prepared[i].hulls.iter().enumerate().map(|(k, h)| (hull.merge(h).area, k)).min_by(|x, y| x.0.total_cmp(&y.0))?;
            Some((a, i, k))
        });
        let Some((worst, next, k)) = scores.into_iter().flatten().max_by(|x, y| x.0.total_cmp(&y.0).then(y.1.cmp(&x.1))) else {
            break;
        };
        if !hull.sorted.is_empty() && worst <= hull.area {
            converged = true;
            break;
        }
        let mut set = chosen.clone();
        set.push(next);
        let mut warm = choice.clone();
        warm.push(k);
        let shapes: Vec<&PreparedShape> = set.iter().map(|&i| &prepared[i]).collect();
        let r = search_prepared(&shapes, opts.budget, Some(&warm), exec)?;
        if !r.lower_bound_certified {
            complete = false;
            break;
        }
        hull = choice_hull(&shapes, &r.indices);
        chosen = set;
        choice = r.indices.clone();
        last = r.chosen.clone();
        steps.push(IncrementStep { shape: next, label: pool[next].label.clone(), area: r.area, nodes: r.nodes });
    }
    converged |= chosen.len() == pool.len();
    Ok(IncrementalResult { steps, chosen: last, complete, converged })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HexScanRow {
    pub angle_a_degrees: f64,
    pub angle_b_degrees: f64,
    pub lower_bound: f64,
    pub shapes: usize,
    pub complete: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SlantScanRow {
    pub sigma_degrees: f64,
    pub lower_bound: f64,
    pub shapes: usize,
    pub complete: bool,
}

/// Lower bound for each hexagon given as `(A, B)` in degrees.
pub fn scan_hexagons(angles: &[(f64, f64)], pool: &[ConstantWidthShape], opts: &IncrementalOptions, exec: Exec) -> Result<Vec<HexScanRow>, SearchError> {
    exec.map(angles, |&(a, b)| {
        let hex = ParallelHexagon::from_degrees(a, b);
        let r = incremental_lower_bound(pool, &hex, None, opts, Exec::Sequential)?;
        Ok(HexScanRow { angle_a_degrees: a, angle_b_degrees: b, lower_bound: r.final_area(), shapes: r.steps.len(), complete: r.complete })
    })
    .into_iter()
    .collect()
}

/// Lower bound in the regular hexagon with both corners cut at each slant
/// (degrees).
pub fn scan_slant(sigmas: &[f64], pool: &[ConstantWidthShape], opts: &IncrementalOptions, exec: Exec) -> Result<Vec<SlantScanRow>, SearchError> {
    let hex = ParallelHexagon::regular();
    exec.map(sigmas, |&s| {
        let cut = PalCut::from_degrees(s);
        let r = incremental_lower_bound(pool, &hex, Some(&cut), opts, Exec::Sequential)?;
        Ok(SlantScanRow { sigma_degrees: s, lower_bound: r.final_area(), shapes: r.steps.len(), complete: r.complete })
    })
    .into_iter()
    .collect()
}

/// Symmetric grid `A = B` around the regular hexagon, in degrees.
pub fn symmetric_slice(center: f64, half_width: f64, steps: usize) -> Vec<(f64, f64)> {
    let steps = steps.max(1);
    (0..=steps)
        .map(|i| {
            let a = center - half_width + 2.0 * half_width * i as f64 / steps as f64;
            (a, a)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::convex_hull;
    use crate::widthcurves::regular;

    #[test]
    fn sorted_hull_matches_monotone_chain() {
        let pts: Vec<Point2> = (0..200).map(|i| Point2::polar(i as f64 * 0.7) * (0.3 + 0.2 * ((i * 7 % 11) as f64 / 11.0))).collect();
        let a = SortedHull::from_points(&pts);
        let b = convex_hull(&pts).unwrap();
        assert!((a.area - b.area()).abs() < 1e-14);
        assert_eq!(a.sorted.len(), b.vertices.len());
        assert!((crate::geom::shoelace(&a.ccw()) - a.area).abs() < 1e-14);
    }

    #[test]
    fn merge_is_hull_of_union() {
        let a: Vec<Point2> = (0..50).map(|i| Point2::polar(i as f64 * 0.4) * 0.5).collect();
        let b: Vec<Point2> = a.iter().map(|p| *p + Point2::new(0.3, 0.1)).collect();
        let m = SortedHull::from_points(&a).merge(&SortedHull::from_points(&b));
        let mut all = a.clone();
        all.extend(&b);
        assert!((m.area - SortedHull::from_points(&all).area).abs() < 1e-14);
    }

    #[test]
    fn circle_alone() {
        let p = SearchProblem::new(vec![ConstantWidthShape::circle()], ParallelHexagon::regular(), None);
        let r = min_cover_area(&p, Exec::Sequential).unwrap();
        let exact = std::f64::consts::FRAC_PI_4;
        assert!(r.area < exact && exact - r.area < 2e-3, "{}", r.area);
        assert!(r.lower_bound_certified);
    }

    #[test]
    fn search_matches_oracle_on_regular_shapes() {
        let p = SearchProblem::new(vec![regular(3), regular(5), ConstantWidthShape::circle()], ParallelHexagon::regular(), None);
        let a = min_cover_area(&p, Exec::Sequential).unwrap();
        let b = exhaustive_oracle(&p).unwrap();
        assert_eq!(a.area, b.area);
        assert_eq!(a.indices, b.indices);
    }

    #[test]
    fn exhausted_budget_still_reports_a_choice() {
        let mut p = SearchProblem::new(vec![regular(3), regular(5), ConstantWidthShape::circle()], ParallelHexagon::regular(), None);
        p.budget = 1;
        let r = min_cover_area(&p, Exec::Sequential).unwrap();
        assert!(!r.lower_bound_certified);
        assert_eq!(r.indices.len(), 3);
        p.budget = DEFAULT_BUDGET;
        assert!(r.area >= min_cover_area(&p, Exec::Sequential).unwrap().area);
    }
}
