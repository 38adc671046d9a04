//! Acceptance suite. Prints one PASS/FAIL line per criterion with the
//! measured values and the pinned tolerance.
//!
//! Thresholds are fixed. A criterion that is known to be out of reach is
//! listed in `KNOWN_GAPS` and still reported as FAIL; the run only errors on
//! failures outside that list. Set `ACCEPTANCE_ONLY=3,8` to run a subset.

use lebesgue::annealing::{anneal, AnnealParams};
use lebesgue::bounds::hansen::hansen_area_report;
use lebesgue::bounds::{
    basic_construction, cover_area_basic, cover_area_reflected, critical_pentagon, find_crossover, inflate_regions, minimize_reflected,
    monte_carlo_region_audit, pal_cut_area, reflected_construction, HANSEN_AREA, HEXAGON_AREA, SPRAGUE_AREA,
};
use lebesgue::coversearch::{exhaustive_oracle, incremental_lower_bound, min_cover_area, scan_slant, IncrementalOptions, SearchProblem};
use lebesgue::exec::Exec;
use lebesgue::ext::{Ext, Precision};
use lebesgue::hexfit::{enumerate_placements, find_roots, t_value, verify_containment, FitShape, PalCut, ParallelHexagon, RootSet};
use lebesgue::widthcurves::{build_reuleaux, random_pool, random_spec, regular, regular_pool, ConstantWidthShape, ReuleauxSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};
use std::time::Instant;

/// Criteria that fail for documented reasons (see the README).
const KNOWN_GAPS: &[(u32, &str)] = &[
    (8, "reference values need a larger pool and coarser arc sampling"),
    (9, "80-shape pool stays below the gated band"),
];

const EXEC: Exec = Exec::Parallel;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

fn c1_constants() -> Outcome {
    let hex = ParallelHexagon::regular().area();
    let cut = pal_cut_area(0.0);
    let (hex_exact, cut_exact) = (3f64.sqrt() / 2.0, 2.0 - 2.0 / 3f64.sqrt());
    // The 8-decimal reference values agree to half a unit in the last place.
    let pass = (hex - hex_exact).abs() <= 1e-12
        && (HEXAGON_AREA - hex_exact).abs() <= 1e-12
        && (cut - cut_exact).abs() <= 1e-12
        && (hex - 0.866_025_40).abs() <= 5e-9
        && (cut - 0.845_299_46).abs() <= 5e-9;
    outcome(pass, format!("hexagon {hex:.15}, cut {cut:.15} (tol 1e-12 to closed form)"))
}

fn c2_sprague() -> Outcome {
    let a = cover_area_basic(0.0).unwrap();
    let err = (a - 0.844_137_708_435_197).abs();
    outcome(err <= 1e-9 && (SPRAGUE_AREA - 0.844_137_708_435_197).abs() <= 1e-15, format!("{a:.15}, |err| {err:.1e} (tol 1e-9)"))
}

fn c3_headline() -> Outcome {
    let at = cover_area_reflected(0.52f64.to_radians(), true).unwrap();
    let (arg, min) = minimize_reflected(0.01, 2.0, true, EXEC).unwrap();
    let pass = (at - 0.844_112_1).abs() <= 2e-6 && min < HANSEN_AREA && (0.4..=0.7).contains(&arg);
    outcome(pass, format!("area(0.52°) {at:.10} (tol 2e-6); min {min:.10} at {arg:.4}° (< {HANSEN_AREA}, argmin in [0.4°, 0.7°])"))
}

fn c4_hansen() -> Outcome {
    let a2 = hansen_area_report(2, Precision::Extended).unwrap().0;
    let a3 = hansen_area_report(3, Precision::Extended).unwrap().0;
    let diff = SPRAGUE_AREA - HANSEN_AREA;
    let e = [rel(a2, 1.8738e-11), rel(a3, 4.2270e-21), rel(diff, a2)];
    outcome(e.iter().all(|x| *x <= 1e-3), format!("A2 {a2:.5e}, A3 {a3:.5e}, Sprague − Hansen {diff:.5e}; rel err {:.1e}/{:.1e}/{:.1e} (tol 1e-3)", e[0], e[1], e[2]))
}

fn c5_root_counts() -> Outcome {
    let h = ParallelHexagon::regular();
    let counts: Vec<usize> = [35.0, 36.0, 37.0]
        .iter()
        .map(|&v| match find_roots(&build_reuleaux(&ReuleauxSpec::from_degrees(5, &[v, v])).unwrap(), &h, 1e-12) {
            RootSet::Roots(r) => r.len(),
            RootSet::Always => usize::MAX,
        })
        .collect();
    outcome(counts == [18, 30, 6], format!("free angles (v, v) for v = 35/36/37°: {counts:?} (want [18, 30, 6])"))
}

fn random_shape(rng: &mut ChaCha8Rng) -> ConstantWidthShape {
    let n = [5, 7, 9][rng.gen_range(0..3)];
    build_reuleaux(&random_spec(n, rng).unwrap()).unwrap()
}

fn random_hexagon(rng: &mut ChaCha8Rng) -> ParallelHexagon {
    loop {
        let (a, b) = (rng.gen_range(30.0..90.0), rng.gen_range(30.0..90.0));
        if a + b < 150.0 {
            let mut h = ParallelHexagon::from_degrees(a, b);
            h.rotation = rng.gen_range(0.0..PI);
            return h;
        }
    }
}

fn c6_fit_universality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let shapes: Vec<FitShape> = (0..200).map(|_| FitShape::new(random_shape(&mut rng))).collect();
    let hexes: Vec<ParallelHexagon> = (0..20).map(|_| random_hexagon(&mut rng)).collect();
    let thetas: Vec<f64> = (0..1000).map(|_| rng.gen_range(0.0..TAU)).collect();
    // (min roots, max containment excess, max antisymmetry error, placements)
    let per_shape = EXEC.map(&shapes, |fs| {
        let mut acc = (usize::MAX, f64::NEG_INFINITY, 0f64, 0usize);
        for h in &hexes {
            let roots = match find_roots(&fs.shape, h, 1e-12) {
                RootSet::Roots(r) => r.len(),
                RootSet::Always => usize::MAX,
            };
            acc.0 = acc.0.min(roots);
            for pl in enumerate_placements(fs, h, true) {
                acc.1 = acc.1.max(verify_containment(fs, &pl, h, None, 64));
                acc.3 += 1;
            }
            for &t in &thetas {
                acc.2 = acc.2.max((t_value(&fs.shape, h, t) + t_value(&fs.shape, h, t + PI)).abs());
            }
        }
        acc
    });
    let roots = per_shape.iter().map(|a| a.0).min().unwrap();
    let excess = per_shape.iter().map(|a| a.1).fold(f64::NEG_INFINITY, f64::max);
    let anti = per_shape.iter().map(|a| a.2).fold(0.0, f64::max);
    let placements: usize = per_shape.iter().map(|a| a.3).sum();
    outcome(
        roots >= 2 && excess <= 1e-9 && anti <= 1e-12,
        format!("200 shapes × 20 hexagons: min roots {roots}, max containment excess {excess:.1e} over {placements} placements (tol 1e-9), max |t(θ)+t(θ+π)| {anti:.1e} (tol 1e-12)"),
    )
}

fn c7_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut mismatches = 0;
    for _ in 0..50 {
        let count = rng.gen_range(1..=3);
        let shapes: Vec<ConstantWidthShape> = (0..count)
            .map(|_| match rng.gen_range(0..5) {
                0 => ConstantWidthShape::circle(),
                1 => regular(3),
                _ => random_shape(&mut rng),
            })
            .collect();
        let cut = rng.gen_bool(0.5).then(|| PalCut::from_degrees(rng.gen_range(0.0..2.0)));
        let p = SearchProblem::new(shapes, ParallelHexagon::regular(), cut);
        let a = min_cover_area(&p, EXEC).unwrap();
        let b = exhaustive_oracle(&p).unwrap();
        if !a.lower_bound_certified || a.area.to_bits() != b.area.to_bits() {
            mismatches += 1;
        }
    }
    outcome(mismatches == 0, format!("50 instances of ≤ 3 shapes: {mismatches} bitwise mismatches (want 0)"))
}

fn c8_desk_bounds() -> Outcome {
    let pool = random_pool(80, &mut ChaCha8Rng::seed_from_u64(8));
    let opts = IncrementalOptions { max_shapes: 80, ..Default::default() };
    let inc = incremental_lower_bound(&pool, &ParallelHexagon::regular(), None, &opts, EXEC).unwrap();
    let lb = inc.final_area();
    let monotone = inc.areas().windows(2).all(|w| w[1] >= w[0]);
    let params = AnnealParams { restarts: 50, seed: 8, ..Default::default() };
    let ann = anneal(&regular_pool(), &params, EXEC).unwrap();
    let best = ann.report_area;
    let inc_ok = inc.complete && monotone && (0.8410..=0.844_137_8).contains(&lb);
    let ann_ok = (0.8320..=0.8371).contains(&best);
    outcome(
        inc_ok && ann_ok,
        format!(
            "incremental {lb:.6} with {} shapes (want [0.8410, 0.8441378]) {}; annealing best of 50 {best:.6} (want [0.8320, 0.8371]) {}",
            inc.steps.len(),
            if inc_ok { "ok" } else { "MISS" },
            if ann_ok { "ok" } else { "MISS" }
        ),
    )
}

fn c9_slant_scan() -> Outcome {
    let pool = random_pool(80, &mut ChaCha8Rng::seed_from_u64(9));
    let sigmas: Vec<f64> = (0..=20).map(|k| k as f64 * 0.1).collect();
    let opts = IncrementalOptions { max_shapes: 80, ..Default::default() };
    let rows = scan_slant(&sigmas, &pool, &opts, EXEC).unwrap();
    let best = rows.iter().min_by(|a, b| a.lower_bound.total_cmp(&b.lower_bound)).unwrap();
    let pass = rows.iter().all(|r| r.complete) && best.sigma_degrees > 0.2 && (0.8435..=0.8442).contains(&best.lower_bound);
    outcome(pass, format!("min {:.6} at {:.1}° over 0–2° (want argmin > 0.2°, min in [0.8435, 0.8442])", best.lower_bound, best.sigma_degrees))
}

fn c10_audit() -> Outcome {
    let sigma = 0.52f64.to_radians();
    let con = reflected_construction(sigma, true).unwrap();
    let mut pool = random_pool(49, &mut ChaCha8Rng::seed_from_u64(10));
    pool.push(critical_pentagon(sigma).unwrap());
    let clean = monte_carlo_region_audit(&con, &pool, 64, 200, 10, EXEC);
    let mutated = monte_carlo_region_audit(&inflate_regions(&con, 1.5), &pool, 64, 200, 10, EXEC);
    let basic = monte_carlo_region_audit(&basic_construction(sigma).unwrap(), &pool, 64, 200, 10, EXEC);
    outcome(
        clean.violations.is_empty() && basic.violations.is_empty() && !mutated.violations.is_empty(),
        format!(
            "{} shapes, {} placements: {} violations (want 0; basic {}), inflated ×1.5: {} (want ≥ 1)",
            clean.shapes,
            clean.placements_checked,
            clean.violations.len(),
            basic.violations.len(),
            mutated.violations.len()
        ),
    )
}

fn c11_crossover() -> Outcome {
    let c = find_crossover::<Ext>(0.005, 8, 8, 120, EXEC);
    match c.sigma_degrees {
        Some(s) => outcome(s < 0.005, format!("sign change at {s:.3e}° (want < 0.005°)")),
        None => outcome(false, "no sign change below 0.005°".into()),
    }
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 11] = [
        (1, "constants", c1_constants),
        (2, "Sprague reduction", c2_sprague),
        (3, "headline bound", c3_headline),
        (4, "Hansen areas", c4_hansen),
        (5, "root counts", c5_root_counts),
        (6, "fit universality", c6_fit_universality),
        (7, "search = oracle", c7_oracle),
        (8, "desk-scale lower bounds", c8_desk_bounds),
        (9, "slant scan", c9_slant_scan),
        (10, "region audit", c10_audit),
        (11, "crossover", c11_crossover),
    ];
    let only: Option<Vec<u32>> = std::env::var("ACCEPTANCE_ONLY").ok().map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let t = Instant::now();
        let o = run();
        let gap = KNOWN_GAPS.iter().find(|g| g.0 == id);
        let tag = match (o.pass, gap) {
            (true, _) => "PASS".to_string(),
            (false, Some(g)) => format!("FAIL (known gap: {})", g.1),
            (false, None) => "FAIL".to_string(),
        };
        println!("[{id:>2}] {tag:<4} {name}: {} [{:.1}s]", o.detail, t.elapsed().as_secs_f64());
        if !o.pass && gap.is_none() {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
