//! `lebesgue`: lower-bound searches, annealing and cover constructions from
//! the command line.
//!
//! Exit status: 0 success, 1 usage or input error, 2 construction
//! invalidated, 3 budget exhausted (outputs are written but partial).

mod svg;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lebesgue::annealing::{anneal, anneal_with_reflections, hexagon_witness, placed_points, AnnealParams, Pose};
use lebesgue::bounds::audit::monte_carlo_region_audit;
use lebesgue::bounds::frame::{Corner, Frame};
use lebesgue::bounds::hansen::hansen_area_report;
use lebesgue::bounds::regions::{basic_construction, reflected_construction, scan_bounds, sigma_grid, BoundRow, CoverConstruction};
use lebesgue::bounds::{critical_pentagon, BoundError, HANSEN_AREA, SPRAGUE_AREA};
use lebesgue::coversearch::{incremental_lower_bound, min_cover_area, scan_hexagons, scan_slant, symmetric_slice, IncrementStep, IncrementalOptions, SearchError, SearchProblem, DEFAULT_BUDGET, SEARCH_SEGMENTS};
use lebesgue::exec::{with_jobs, Exec};
use lebesgue::ext::Precision;
use lebesgue::geom::{convex_hull, ConvexPolygon, Point2};
use lebesgue::hexfit::{admissible, enumerate_placements, find_roots, verify_containment, FitShape, PalCut, ParallelHexagon, Placement, RootSet};
use lebesgue::widthcurves::{load_pool, random_pool, regular_pool, ConstantWidthShape};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use svg::{line_chart, Figure, Series};

const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser, Debug)]
#[command(name = "lebesgue", version, about = "Bounds for Lebesgue's universal covering problem")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Shape pool (JSON list of {n, freeAnglesDegrees, label}).
    #[arg(long, global = true)]
    pool: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output directory, created if missing.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Worker threads; 1 is the reproducibility reference.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Boundary samples per arc.
    #[arg(long, global = true)]
    segments: Option<usize>,
    /// Search node budget per exact solve.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = PrecisionArg::Double)]
    precision: PrecisionArg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum PrecisionArg {
    Double,
    Extended,
}

impl From<PrecisionArg> for Precision {
    fn from(p: PrecisionArg) -> Self {
        match p {
            PrecisionArg::Double => Precision::Double,
            PrecisionArg::Extended => Precision::Extended,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Anneal the pool shapes towards a small common hull.
    Anneal(AnnealArgs),
    /// Roots and placements of every pool shape in one hexagon.
    Fit(HexArgs),
    /// Smallest hull of admissible placements of the pool shapes.
    Search(SearchArgs),
    /// Lower bound over a grid of parallel hexagons.
    ScanHex(ScanHexArgs),
    /// Lower bound over slants of the two corner cuts.
    ScanSlant(ScanSlantArgs),
    /// Cover construction at one slant, or a scan over slants.
    Bound(BoundArgs),
    /// Hansen's iterated region areas.
    Hansen(HansenArgs),
    /// Search hull against the removed regions of a construction.
    Overlay(OverlayArgs),
}

#[derive(Args, Debug)]
struct AnnealArgs {
    #[arg(long, default_value_t = 50)]
    restarts: usize,
    /// Try every mirror assignment of the asymmetric shapes.
    #[arg(long)]
    reflections: bool,
    #[arg(long, default_value_t = 0.3)]
    accept: f64,
    #[arg(long, default_value_t = 0.95)]
    decay: f64,
    #[arg(long, default_value_t = 1000)]
    epoch_steps: usize,
    #[arg(long, default_value_t = 0.1)]
    initial_step: f64,
    #[arg(long, default_value_t = 1e-6)]
    min_step: f64,
}

#[derive(Args, Debug, Clone, Copy)]
struct HexArgs {
    /// Hexagon angle A in degrees.
    #[arg(long, default_value_t = 60.0)]
    angle_a: f64,
    /// Hexagon angle B in degrees.
    #[arg(long, default_value_t = 60.0)]
    angle_b: f64,
    /// Cut the regular hexagon's corners at this slant (degrees).
    #[arg(long)]
    slant: Option<f64>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[command(flatten)]
    hex: HexArgs,
    /// Grow the shape set from the pool instead of using all of it.
    #[arg(long)]
    incremental: bool,
    #[arg(long, default_value_t = 12)]
    max_shapes: usize,
    /// Random pool size when no pool file is given (incremental only).
    #[arg(long)]
    pool_size: Option<usize>,
}

#[derive(Args, Debug)]
struct ScanHexArgs {
    #[arg(long, default_value_t = 60.0)]
    center: f64,
    #[arg(long, default_value_t = 1.0)]
    half_width: f64,
    #[arg(long, default_value_t = 8)]
    steps: usize,
    /// Full A×B grid instead of the symmetric slice A = B.
    #[arg(long)]
    grid: bool,
    #[arg(long, default_value_t = 12)]
    max_shapes: usize,
    #[arg(long, default_value_t = 80)]
    pool_size: usize,
}

#[derive(Args, Debug)]
struct ScanSlantArgs {
    #[arg(long, default_value_t = 0.0)]
    from: f64,
    #[arg(long, default_value_t = 2.0)]
    to: f64,
    #[arg(long, default_value_t = 0.1)]
    step: f64,
    #[arg(long, default_value_t = 12)]
    max_shapes: usize,
    #[arg(long, default_value_t = 80)]
    pool_size: usize,
}

#[derive(Args, Debug)]
struct BoundArgs {
    /// Slant in degrees.
    #[arg(long, default_value_t = 0.52)]
    sigma: f64,
    /// Basic construction only (no reflection region).
    #[arg(long)]
    basic: bool,
    /// Keep the non-convex part of the reflection region.
    #[arg(long)]
    full: bool,
    /// Scan both cover areas over (0, --to] instead.
    #[arg(long)]
    scan: bool,
    #[arg(long, default_value_t = 0.01)]
    step: f64,
    #[arg(long, default_value_t = 2.0)]
    to: f64,
    /// Also audit the regions against placements of the pool shapes.
    #[arg(long)]
    audit: bool,
}

#[derive(Args, Debug)]
struct HansenArgs {
    #[arg(long, default_value_t = 2)]
    index: usize,
}

#[derive(Args, Debug)]
struct OverlayArgs {
    /// search.json written by `search --slant`.
    #[arg(long)]
    search: PathBuf,
    /// Slant of the construction (degrees); must match the search.
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    basic: bool,
    /// Sampling grid points per unit length for the green area.
    #[arg(long, default_value_t = 600)]
    resolution: usize,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Invalid(String),
    Partial(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Partial(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Invalid(m) => write!(f, "invalid: {m}"),
            CliError::Partial(m) => write!(f, "partial: {m}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<BoundError> for CliError {
    fn from(e: BoundError) -> Self {
        match e {
            BoundError::SlantOutOfRange(_) => CliError::Usage(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        CliError::Usage(e.to_string())
    }
}

type Res<T = ()> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let jobs = cli.common.jobs.max(1);
    match with_jobs(jobs, move || run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Res {
    let c = &cli.common;
    std::fs::create_dir_all(&c.out)?;
    match &cli.command {
        Command::Anneal(a) => cmd_anneal(c, a),
        Command::Fit(h) => cmd_fit(c, h),
        Command::Search(s) => cmd_search(c, s),
        Command::ScanHex(s) => cmd_scan_hex(c, s),
        Command::ScanSlant(s) => cmd_scan_slant(c, s),
        Command::Bound(b) => cmd_bound(c, b),
        Command::Hansen(h) => cmd_hansen(c, h),
        Command::Overlay(o) => cmd_overlay(c, o),
    }
}

impl Common {
    fn exec(&self) -> Exec {
        Exec::from_jobs(self.jobs)
    }

    fn budget(&self) -> u64 {
        self.budget.unwrap_or(DEFAULT_BUDGET)
    }

    fn segments_or(&self, d: usize) -> Res<usize> {
        match self.segments {
            Some(0) => Err(CliError::Usage("--segments must be positive".into())),
            Some(s) => Ok(s),
            None => Ok(d),
        }
    }

    /// Pool file if given, else `fallback`.
    fn pool_or(&self, fallback: impl FnOnce() -> Vec<ConstantWidthShape>) -> Res<Vec<ConstantWidthShape>> {
        let pool = match &self.pool {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
                load_pool(&text).map_err(|e| CliError::Usage(format!("invalid pool file {}: {e}", p.display())))?
            }
            None => fallback(),
        };
        if pool.is_empty() {
            return Err(CliError::Usage("the shape pool is empty".into()));
        }
        Ok(pool)
    }

    fn random_pool(&self, size: usize) -> Vec<ConstantWidthShape> {
        random_pool(size, &mut ChaCha8Rng::seed_from_u64(self.seed))
    }

    fn path(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }
}

fn write_json<T: Serialize>(path: &Path, v: &T) -> Res {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Usage(e.to_string()))?;
    s.push('\n');
    std::fs::write(path, s)?;
    Ok(())
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Res {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn slant_radians(deg: f64) -> Res<f64> {
    if !(0.0..=PalCut::MAX_SLANT.to_degrees()).contains(&deg) {
        return Err(CliError::Usage(format!("slant {deg}° outside [0°, {}°]", PalCut::MAX_SLANT.to_degrees())));
    }
    Ok(deg.to_radians())
}

impl HexArgs {
    /// Hexagon and optional cut; a cut requires the regular hexagon.
    fn build(&self) -> Res<(ParallelHexagon, Option<PalCut>)> {
        let hex = ParallelHexagon::from_degrees(self.angle_a, self.angle_b);
        if !hex.is_valid() {
            return Err(CliError::Usage(format!("angles A = {}°, B = {}° do not form a hexagon", self.angle_a, self.angle_b)));
        }
        let cut = match self.slant {
            None => None,
            Some(_) if self.angle_a != 60.0 || self.angle_b != 60.0 => return Err(CliError::Usage("--slant needs the regular hexagon".into())),
            Some(s) => Some(PalCut::new(slant_radians(s)?)),
        };
        Ok((hex, cut))
    }
}

/// The regular hexagon with its cut corners removed.
fn cut_hexagon(sigma: Option<f64>) -> Vec<Point2> {
    let mut poly = ParallelHexagon::regular().vertices();
    if let Some(s) = sigma {
        for n in PalCut::new(s).normals() {
            poly = clip(&poly, n, 0.5);
        }
    }
    poly
}

/// Part of a convex polygon with `p·n ≤ h`.
fn clip(poly: &[Point2], n: Point2, h: f64) -> Vec<Point2> {
    let mut out = Vec::new();
    for (i, &a) in poly.iter().enumerate() {
        let b = poly[(i + 1) % poly.len()];
        let (da, db) = (a.dot(n) - h, b.dot(n) - h);
        if da <= 0.0 {
            out.push(a);
        }
        if (da < 0.0) != (db < 0.0) && da != db {
            out.push(a.lerp(b, da / (da - db)));
        }
    }
    out
}

fn cut_lines(fig: &mut Figure, sigma: Option<f64>) {
    let Some(s) = sigma else { return };
    for n in PalCut::new(s).normals() {
        let p = n * 0.5;
        let d = n.perp() * 0.35;
        fig.polygon(&[p - d, p + d], "fill:none;stroke:#c00;stroke-width:1;stroke-dasharray:4 3");
    }
}

const SHAPE_STYLE: &str = "fill:none;stroke:#1f4e9c;stroke-width:1";
const HULL_STYLE: &str = "fill:none;stroke:#000;stroke-width:1.5";
const HEX_STYLE: &str = "fill:#eeeeee;stroke:#666;stroke-width:1";

// ---------------------------------------------------------------- anneal

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AnnealReport {
    shapes: Vec<String>,
    params: AnnealParams,
    best_area: f64,
    search_area: f64,
    poses: Vec<Pose>,
    restart_areas: Vec<f64>,
    combinations: usize,
    witness_hexagon_degrees: [f64; 3],
    witness_center: Point2,
    witness_residual: f64,
}

fn cmd_anneal(c: &Common, a: &AnnealArgs) -> Res {
    let pool = c.pool_or(regular_pool)?;
    let params = AnnealParams {
        accept_probability: a.accept,
        step_decay: a.decay,
        steps_per_epoch: a.epoch_steps,
        initial_step: a.initial_step,
        min_step: a.min_step,
        restarts: a.restarts,
        seed: c.seed,
        segments_per_arc: c.segments_or(AnnealParams::default().segments_per_arc)?,
    };
    let run = if a.reflections { anneal_with_reflections } else { anneal };
    let out = run(&pool, &params, c.exec()).map_err(|e| CliError::Usage(e.to_string()))?;
    let w = hexagon_witness(&pool, &out.best, params.segments_per_arc);
    let angles = w.hexagon.normal_angles().map(f64::to_degrees);
    write_csv(&c.path("anneal_log.csv"), &out.log)?;
    write_json(
        &c.path("anneal.json"),
        &AnnealReport {
            shapes: pool.iter().map(|s| s.label.clone()).collect(),
            params,
            best_area: out.report_area,
            search_area: out.best.area,
            poses: out.best.poses.clone(),
            restart_areas: out.restart_areas.clone(),
            combinations: out.combinations,
            witness_hexagon_degrees: angles,
            witness_center: w.center,
            witness_residual: w.residual,
        },
    )?;
    let parts = placed_points(&pool, &out.best.poses, 128);
    let hex: Vec<Point2> = w.hexagon.vertices().into_iter().map(|v| v + w.center).collect();
    let mut fig = Figure::new(w.center - Point2::new(0.75, 0.75), w.center + Point2::new(0.75, 0.75), 480.0);
    fig.polygon(&hex, HEX_STYLE);
    for p in &parts {
        fig.polygon(p, SHAPE_STYLE);
    }
    if let Ok(h) = convex_hull(&parts.concat()) {
        fig.polygon(&h.vertices, HULL_STYLE);
    }
    fig.caption(&format!("{} shapes, hull area {:.8}", pool.len(), out.report_area));
    std::fs::write(c.path("anneal.svg"), fig.finish())?;
    println!("best area {:.8} over {} restarts", out.report_area, out.restart_areas.len());
    Ok(())
}

// ---------------------------------------------------------------- fit

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct FitRow {
    shape: usize,
    label: String,
    roots: String,
    reflected: bool,
    theta_degrees: f64,
    rotation_degrees: f64,
    x: f64,
    y: f64,
    admissible: bool,
    containment_excess: f64,
}

fn cmd_fit(c: &Common, h: &HexArgs) -> Res {
    let pool = c.pool_or(regular_pool)?;
    let (hex, cut) = h.build()?;
    let segs = c.segments_or(SEARCH_SEGMENTS)?;
    let per_shape = c.exec().map_range(pool.len(), |i| {
        let fs = FitShape::new(pool[i].clone());
        let roots = match find_roots(&pool[i], &hex, 1e-12) {
            RootSet::Always => "always".to_string(),
            RootSet::Roots(r) => r.len().to_string(),
        };
        enumerate_placements(&fs, &hex, true)
            .into_iter()
            .map(|pl| FitRow {
                shape: i,
                label: pool[i].label.clone(),
                roots: roots.clone(),
                reflected: pl.reflected,
                theta_degrees: pl.theta.to_degrees(),
                rotation_degrees: pl.rotation.to_degrees(),
                x: pl.translation.x,
                y: pl.translation.y,
                admissible: admissible(&fs, &pl, cut.as_ref()),
                containment_excess: verify_containment(&fs, &pl, &hex, cut.as_ref(), segs),
            })
            .collect::<Vec<_>>()
    });
    let rows: Vec<FitRow> = per_shape.into_iter().flatten().collect();
    write_csv(&c.path("fit.csv"), &rows)?;
    for (i, s) in pool.iter().enumerate() {
        let mine = rows.iter().filter(|r| r.shape == i);
        let (n, ok) = mine.fold((0, 0), |(n, ok), r| (n + 1, ok + usize::from(r.admissible)));
        println!("{:<16} {n:>4} placements, {ok:>4} admissible", s.label);
    }
    Ok(())
}

// ---------------------------------------------------------------- search

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(rename_all = "camelCase")]
struct PlacedShape {
    label: String,
    placement: Placement,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(rename_all = "camelCase")]
struct SearchReport {
    angle_a_degrees: f64,
    angle_b_degrees: f64,
    sigma_degrees: Option<f64>,
    segments_per_arc: usize,
    area: f64,
    certified: bool,
    nodes: u64,
    placements: Vec<PlacedShape>,
    hull: Vec<Point2>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    steps: Vec<IncrementStep>,
}

fn cmd_search(c: &Common, s: &SearchArgs) -> Res {
    let (hex, cut) = s.hex.build()?;
    let segs = c.segments_or(SEARCH_SEGMENTS)?;
    let (placed, area, certified, nodes, steps): (Vec<(ConstantWidthShape, Placement)>, f64, bool, u64, Vec<IncrementStep>) = if s.incremental {
        let size = s.pool_size.unwrap_or(80);
        let pool = c.pool_or(|| c.random_pool(size))?;
        let opts = IncrementalOptions { max_shapes: s.max_shapes, budget: c.budget(), segments_per_arc: segs, allow_reflection: true };
        let r = incremental_lower_bound(&pool, &hex, cut.as_ref(), &opts, c.exec())?;
        let placed = r.steps.iter().zip(&r.chosen).map(|(st, pl)| (pool[st.shape].clone(), *pl)).collect();
        let nodes = r.steps.iter().map(|s| s.nodes).sum();
        (placed, r.final_area(), r.complete, nodes, r.steps)
    } else {
        let pool = c.pool_or(regular_pool)?;
        let mut problem = SearchProblem::new(pool.clone(), hex, cut);
        problem.segments_per_arc = segs;
        problem.budget = c.budget();
        let r = min_cover_area(&problem, c.exec())?;
        (pool.into_iter().zip(r.chosen).collect(), r.area, r.lower_bound_certified, r.nodes, Vec::new())
    };
    let parts: Vec<Vec<Point2>> = placed.iter().map(|(sh, pl)| FitShape::new(sh.clone()).placed_points(pl, segs)).collect();
    let hull = convex_hull(&parts.concat()).map(|h| h.vertices).unwrap_or_default();
    let report = SearchReport {
        angle_a_degrees: s.hex.angle_a,
        angle_b_degrees: s.hex.angle_b,
        sigma_degrees: s.hex.slant,
        segments_per_arc: segs,
        area,
        certified,
        nodes,
        placements: placed.iter().map(|(sh, pl)| PlacedShape { label: sh.label.clone(), placement: *pl }).collect(),
        hull: hull.clone(),
        steps,
    };
    write_json(&c.path("search.json"), &report)?;
    let mut fig = Figure::centered(0.62, 480.0);
    fig.polygon(&hex.vertices(), HEX_STYLE);
    cut_lines(&mut fig, s.hex.slant.map(f64::to_radians));
    for (sh, pl) in &placed {
        fig.polygon(&FitShape::new(sh.clone()).placed_points(pl, 128), SHAPE_STYLE);
    }
    if !hull.is_empty() {
        fig.polygon(&hull, HULL_STYLE);
    }
    fig.caption(&format!("{} shapes, smallest hull {:.8}{}", placed.len(), area, if certified { "" } else { " (partial)" }));
    std::fs::write(c.path("search.svg"), fig.finish())?;
    println!("area {area:.10} ({} shapes, {nodes} nodes)", placed.len());
    if !certified {
        return Err(CliError::Partial("node budget exhausted; the area is not certified".into()));
    }
    Ok(())
}

// ---------------------------------------------------------------- scans

fn check_angle(a: f64) -> Res {
    if !(a > 0.0 && a < 120.0) {
        return Err(CliError::Usage(format!("hexagon angle {a}° outside (0°, 120°)")));
    }
    Ok(())
}

fn cmd_scan_hex(c: &Common, s: &ScanHexArgs) -> Res {
    let steps = s.steps.max(1);
    let angles: Vec<(f64, f64)> = if s.grid {
        let axis: Vec<f64> = symmetric_slice(s.center, s.half_width, steps).into_iter().map(|p| p.0).collect();
        axis.iter().flat_map(|&a| axis.iter().map(move |&b| (a, b))).collect()
    } else if s.half_width == 0.0 {
        vec![(s.center, s.center)]
    } else {
        symmetric_slice(s.center, s.half_width, steps)
    };
    for &(a, b) in &angles {
        check_angle(a)?;
        check_angle(b)?;
        if !ParallelHexagon::from_degrees(a, b).is_valid() {
            return Err(CliError::Usage(format!("angles A = {a}°, B = {b}° do not form a hexagon")));
        }
    }
    let pool = c.pool_or(|| c.random_pool(s.pool_size))?;
    let opts = IncrementalOptions { max_shapes: s.max_shapes, budget: c.budget(), segments_per_arc: c.segments_or(SEARCH_SEGMENTS)?, allow_reflection: true };
    let rows = scan_hexagons(&angles, &pool, &opts, c.exec())?;
    write_csv(&c.path("scan_hex.csv"), &rows)?;
    let mut bs: Vec<f64> = rows.iter().map(|r| r.angle_b_degrees).collect();
    bs.sort_by(f64::total_cmp);
    bs.dedup();
    let colors = ["#1f4e9c", "#2a9d3a", "#b5651d", "#7a3b9c", "#333333"];
    let series: Vec<Series> = if s.grid {
        bs.iter()
            .enumerate()
            .map(|(i, &b)| Series { name: "", points: rows.iter().filter(|r| r.angle_b_degrees == b).map(|r| (r.angle_a_degrees, r.lower_bound)).collect(), color: colors[i % colors.len()] })
            .collect()
    } else {
        vec![Series { name: "lower bound (A = B)", points: rows.iter().map(|r| (r.angle_a_degrees, r.lower_bound)).collect(), color: colors[0] }]
    };
    std::fs::write(c.path("scan_hex.svg"), line_chart("Lower bound over parallel hexagons", "angle A (degrees)", "area", &series, &[("known upper limit", HANSEN_AREA)]))?;
    for r in &rows {
        println!("{:>9.4} {:>9.4} {:.8} {:>3}", r.angle_a_degrees, r.angle_b_degrees, r.lower_bound, r.shapes);
    }
    if rows.iter().any(|r| !r.complete) {
        return Err(CliError::Partial("some grid points ran out of budget".into()));
    }
    Ok(())
}

fn cmd_scan_slant(c: &Common, s: &ScanSlantArgs) -> Res {
    if !(s.step > 0.0) || s.to < s.from {
        return Err(CliError::Usage("need --step > 0 and --to ≥ --from".into()));
    }
    slant_radians(s.from)?;
    slant_radians(s.to)?;
    let n = ((s.to - s.from) / s.step + 1e-9).floor() as usize;
    let sigmas: Vec<f64> = (0..=n).map(|k| s.from + k as f64 * s.step).collect();
    let pool = c.pool_or(|| c.random_pool(s.pool_size))?;
    let opts = IncrementalOptions { max_shapes: s.max_shapes, budget: c.budget(), segments_per_arc: c.segments_or(SEARCH_SEGMENTS)?, allow_reflection: true };
    let rows = scan_slant(&sigmas, &pool, &opts, c.exec())?;
    write_csv(&c.path("scan_slant.csv"), &rows)?;
    let series = [Series { name: "lower bound", points: rows.iter().map(|r| (r.sigma_degrees, r.lower_bound)).collect(), color: "#1f4e9c" }];
    std::fs::write(c.path("scan_slant.svg"), line_chart("Lower bound with both corners cut", "slant (degrees)", "area", &series, &[("known upper limit", HANSEN_AREA)]))?;
    for r in &rows {
        println!("{:>7.4} {:.8} {:>3}", r.sigma_degrees, r.lower_bound, r.shapes);
    }
    if rows.iter().any(|r| !r.complete) {
        return Err(CliError::Partial("some slants ran out of budget".into()));
    }
    Ok(())
}

// ---------------------------------------------------------------- bound

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct RegionEntry {
    name: String,
    area: f64,
    justification: String,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct BoundReport {
    sigma_degrees: f64,
    reflections: bool,
    convex_only: bool,
    total_area: f64,
    regions: Vec<RegionEntry>,
    points: Vec<(String, Point2)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    audit_violations: Option<usize>,
}

fn construction(sigma_deg: f64, basic: bool, full: bool) -> Res<CoverConstruction> {
    let s = slant_radians(sigma_deg)?;
    let c = if basic { basic_construction(s)? } else { reflected_construction(s, !full)? };
    c.check_disjoint(1e-9)?;
    Ok(c)
}

fn construction_figure(con: &CoverConstruction) -> Figure {
    let mut fig = Figure::centered(0.62, 640.0);
    fig.polygon(&ParallelHexagon::regular().vertices(), "fill:#f7f7f7;stroke:#666;stroke-width:1");
    let f = Frame::new(con.sigma);
    for corner in [Corner::E, Corner::C] {
        fig.polygon(&f.corner_triangle(corner), "fill:#bbbbbb;stroke:none");
    }
    for r in con.removed() {
        fig.arc_polygon(&r.boundary, "fill:#f39c34;fill-opacity:0.8;stroke:#b35c00;stroke-width:0.5");
    }
    fig
}

fn cmd_bound(c: &Common, b: &BoundArgs) -> Res {
    if b.scan {
        if !(b.step > 0.0 && b.to > 0.0) {
            return Err(CliError::Usage("need --step > 0 and --to > 0".into()));
        }
        slant_radians(b.to)?;
        let rows: Vec<BoundRow> = scan_bounds(&sigma_grid(b.step, b.to), !b.full, c.exec())?;
        write_csv(&c.path("bound_scan.csv"), &rows)?;
        let series = [
            Series { name: "basic", points: rows.iter().map(|r| (r.sigma_degrees, r.cover_area_basic)).collect(), color: "#b5651d" },
            Series { name: "with reflections", points: rows.iter().map(|r| (r.sigma_degrees, r.cover_area_reflected)).collect(), color: "#1f4e9c" },
        ];
        let svg = line_chart("Cover area against slant", "slant (degrees)", "area", &series, &[("Sprague", SPRAGUE_AREA), ("Hansen", HANSEN_AREA)]);
        std::fs::write(c.path("bound_scan.svg"), svg)?;
        let best = rows.iter().min_by(|x, y| x.cover_area_reflected.total_cmp(&y.cover_area_reflected)).ok_or_else(|| CliError::Usage("empty grid".into()))?;
        println!("min {:.10} at {:.4}° (Hansen {:.10})", best.cover_area_reflected, best.sigma_degrees, HANSEN_AREA);
        return Ok(());
    }
    let con = construction(b.sigma, b.basic, b.full)?;
    let audit = if b.audit {
        let mut pool = c.pool_or(|| c.random_pool(48))?;
        if let Ok(p) = critical_pentagon(con.sigma) {
            pool.push(p);
        }
        let r = monte_carlo_region_audit(&con, &pool, c.segments_or(64)?, 200, c.seed, c.exec());
        Some(r.violations.len())
    } else {
        None
    };
    let report = BoundReport {
        sigma_degrees: b.sigma,
        reflections: con.use_reflections,
        convex_only: con.convex_only,
        total_area: con.area,
        regions: con.regions.iter().map(|r| RegionEntry { name: r.name.to_string(), area: r.area, justification: r.justification.clone() }).collect(),
        points: Frame::new(con.sigma).labeled(),
        audit_violations: audit,
    };
    write_json(&c.path("bound.json"), &report)?;
    let mut fig = construction_figure(&con);
    for (name, p) in &report.points {
        fig.dot(*p, name);
    }
    fig.caption(&format!("slant {}°, cover area {:.10}", b.sigma, con.area));
    std::fs::write(c.path("bound.svg"), fig.finish())?;
    println!("total area {:.10}", con.area);
    if let Some(n) = audit.filter(|n| *n > 0) {
        return Err(CliError::Invalid(format!("audit found {n} violating placements")));
    }
    Ok(())
}

// ---------------------------------------------------------------- hansen

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct HansenReport {
    index: usize,
    precision: Precision,
    area: f64,
    area_text: String,
    sprague_minus_hansen: f64,
}

fn cmd_hansen(c: &Common, h: &HansenArgs) -> Res {
    let precision: Precision = c.precision.into();
    let (area, area_text) = hansen_area_report(h.index, precision)?;
    write_json(&c.path("hansen.json"), &HansenReport { index: h.index, precision, area, area_text: area_text.clone(), sprague_minus_hansen: SPRAGUE_AREA - HANSEN_AREA })?;
    println!("A{} = {area_text} ({precision})", h.index);
    Ok(())
}

// ---------------------------------------------------------------- overlay

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct OverlayReport {
    sigma_degrees: f64,
    search_area: f64,
    construction_area: f64,
    green_area: f64,
    resolution: usize,
}

/// Area inside the cover but outside both the hull and the removed regions,
/// by midpoint sampling on a square grid.
fn green_area(cover: &[Point2], con: &CoverConstruction, hull: &ConvexPolygon, resolution: usize) -> f64 {
    let h = 1.0 / resolution as f64;
    let n = (1.2 * resolution as f64).ceil() as usize;
    let cover = ConvexPolygon { vertices: cover.to_vec() };
    let regions: Vec<_> = con.removed().filter(|r| !r.boundary.is_empty()).collect();
    let mut hits = 0usize;
    for i in 0..n {
        for j in 0..n {
            let p = Point2::new(-0.6 + (i as f64 + 0.5) * h, -0.6 + (j as f64 + 0.5) * h);
            if cover.contains(p, 0.0) && (hull.vertices.len() < 3 || !hull.contains(p, 0.0)) && !regions.iter().any(|r| r.boundary.contains(p)) {
                hits += 1;
            }
        }
    }
    hits as f64 * h * h
}

fn cmd_overlay(c: &Common, o: &OverlayArgs) -> Res {
    let text = std::fs::read_to_string(&o.search).map_err(|e| CliError::Usage(format!("{}: {e}", o.search.display())))?;
    let search: SearchReport = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid search report: {e}")))?;
    let Some(sigma) = search.sigma_degrees else {
        return Err(CliError::Usage("the search ran without corner cuts; rerun it with --slant".into()));
    };
    if let Some(s) = o.sigma {
        if (s - sigma).abs() > 1e-12 {
            return Err(CliError::Usage(format!("slant mismatch: search at {sigma}°, construction at {s}°")));
        }
    }
    if o.resolution == 0 {
        return Err(CliError::Usage("--resolution must be positive".into()));
    }
    let con = construction(sigma, o.basic, false)?;
    let cover = cut_hexagon(Some(con.sigma));
    let hull = ConvexPolygon { vertices: search.hull.clone() };
    let green = green_area(&cover, &con, &hull, o.resolution);
    write_json(
        &c.path("overlay.json"),
        &OverlayReport { sigma_degrees: sigma, search_area: search.area, construction_area: con.area, green_area: green, resolution: o.resolution },
    )?;
    let mut fig = construction_figure(&con);
    let mut hole = String::new();
    if hull.vertices.len() >= 3 {
        hole.push_str(&fig.polygon_path(&hull.vertices));
    }
    for r in con.removed().filter(|r| !r.boundary.is_empty()) {
        hole.push(' ');
        hole.push_str(&fig.arc_path(&r.boundary));
    }
    let area = fig.polygon_path(&cover);
    fig.masked("outside-hull", &area, &hole, "#3cb44b");
    if hull.vertices.len() >= 3 {
        fig.polygon(&hull.vertices, HULL_STYLE);
    }
    fig.caption(&format!("slant {sigma}°: orange removed, green further removable ({green:.3e})"));
    std::fs::write(c.path("overlay.svg"), fig.finish())?;
    println!("green area {green:.6e}");
    Ok(())
}
