use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lebesgue")).arg("--out").arg(dir).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_svg(path: &Path) {
    let s = std::fs::read_to_string(path).unwrap();
    assert!(s.starts_with("<svg") || s.starts_with("<?xml"), "{}", path.display());
    assert!(s.trim_end().ends_with("</svg>"));
    assert_eq!(s.matches("<svg").count(), s.matches("</svg>").count());
}

fn assert_scaled_svg(path: &Path) {
    assert_svg(path);
    assert!(std::fs::read_to_string(path).unwrap().contains("0.25 (unit = diameter)"));
}

#[test]
fn hansen_reports_a2() {
    let d = TempDir::new().unwrap();
    let o = run(d.path(), &["hansen", "--index", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&d.path().join("hansen.json"));
    assert!((v["area"].as_f64().unwrap() / 1.8738e-11 - 1.0).abs() <= 1e-3);
    assert!(v["areaText"].as_str().unwrap().ends_with("e-11"));
}

#[test]
fn bound_at_the_optimal_slant() {
    let d = TempDir::new().unwrap();
    let o = run(d.path(), &["bound", "--sigma", "0.52"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&d.path().join("bound.json"));
    assert!((v["totalArea"].as_f64().unwrap() - 0.844_112_1).abs() <= 2e-6);
    assert!(v["regions"].as_array().unwrap().len() >= 5);
    assert_scaled_svg(&d.path().join("bound.svg"));
}

#[test]
fn bound_without_slant_is_sprague() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&run(d.path(), &["bound", "--sigma", "0", "--basic"])), 0);
    let v = json(&d.path().join("bound.json"));
    assert!((v["totalArea"].as_f64().unwrap() - 0.844_137_708_435_2).abs() <= 1e-9);
}

#[test]
fn bound_scan_beats_hansen() {
    let d = TempDir::new().unwrap();
    let o = run(d.path(), &["bound", "--scan", "--step", "0.02", "--to", "1"]);
    assert_eq!(code(&o), 0);
    let mut r = csv::Reader::from_path(d.path().join("bound_scan.csv")).unwrap();
    let col = r.headers().unwrap().iter().position(|h| h == "cover_area_reflected" || h == "coverAreaReflected").unwrap();
    let min = r.records().map(|x| x.unwrap()[col].parse::<f64>().unwrap()).fold(f64::INFINITY, f64::min);
    assert!(min < 0.844_137_708_416);
    assert_svg(&d.path().join("bound_scan.svg"));
}

#[test]
fn bad_pools_are_usage_errors() {
    let d = TempDir::new().unwrap();
    let empty = d.path().join("empty.json");
    std::fs::write(&empty, "[]").unwrap();
    let broken = d.path().join("broken.json");
    std::fs::write(&broken, r#"[{"n": 5, "freeAnglesDegrees": [170, 170, 170]}]"#).unwrap();
    for p in [&empty, &broken, &d.path().join("missing.json")] {
        let o = run(d.path(), &["--pool", p.to_str().unwrap(), "fit"]);
        assert_eq!(code(&o), 1, "{}", p.display());
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn anneal_is_reproducible() {
    let quick = ["anneal", "--restarts", "2", "--epoch-steps", "40", "--initial-step", "0.05", "--min-step", "0.01", "--segments", "8"];
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    assert_eq!(code(&run(a.path(), &quick)), 0);
    assert_eq!(code(&run(b.path(), &quick)), 0);
    let log = |d: &TempDir| std::fs::read(d.path().join("anneal_log.csv")).unwrap();
    assert_eq!(log(&a), log(&b));
    let v = json(&a.path().join("anneal.json"));
    assert!(v["bestArea"].as_f64().unwrap() > 0.8);
    assert_scaled_svg(&a.path().join("anneal.svg"));
}

#[test]
fn fit_lists_placements() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&run(d.path(), &["fit"])), 0);
    let mut r = csv::Reader::from_path(d.path().join("fit.csv")).unwrap();
    let rows: Vec<_> = r.records().map(|x| x.unwrap()).collect();
    assert!(rows.len() >= 5);
}

#[test]
fn search_then_overlay() {
    let d = TempDir::new().unwrap();
    let o = run(d.path(), &["search", "--slant", "1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let search = d.path().join("search.json");
    let v = json(&search);
    assert_eq!(v["sigmaDegrees"].as_f64(), Some(1.0));
    assert!(v["certified"].as_bool().unwrap());
    assert_scaled_svg(&d.path().join("search.svg"));

    let o = run(d.path(), &["overlay", "--search", search.to_str().unwrap(), "--sigma", "1", "--resolution", "300"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(json(&d.path().join("overlay.json"))["greenArea"].as_f64().unwrap() > 0.0);
    assert_scaled_svg(&d.path().join("overlay.svg"));

    let o = run(d.path(), &["overlay", "--search", search.to_str().unwrap(), "--sigma", "0.5"]);
    assert_eq!(code(&o), 1);
}

/// A hull covering the whole cut hexagon leaves nothing green.
#[test]
fn overlay_with_full_hull_is_empty() {
    let d = TempDir::new().unwrap();
    let o = run(d.path(), &["search", "--slant", "1"]);
    assert_eq!(code(&o), 0);
    let path = d.path().join("search.json");
    let mut v = json(&path);
    let r = 1.0 / 3f64.sqrt();
    v["hull"] = (0..6)
        .map(|k| {
            let a = std::f64::consts::PI / 3.0 * k as f64;
            serde_json::json!({"x": r * a.cos(), "y": r * a.sin()})
        })
        .collect();
    std::fs::write(&path, v.to_string()).unwrap();
    assert_eq!(code(&run(d.path(), &["overlay", "--search", path.to_str().unwrap(), "--resolution", "200"])), 0);
    assert_eq!(json(&d.path().join("overlay.json"))["greenArea"].as_f64(), Some(0.0));
}

#[test]
fn overlay_needs_a_cut_search() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&run(d.path(), &["search"])), 0);
    let path = d.path().join("search.json");
    assert_eq!(code(&run(d.path(), &["overlay", "--search", path.to_str().unwrap()])), 1);
}

#[test]
fn tiny_budget_is_partial() {
    let d = TempDir::new().unwrap();
    let o = run(d.path(), &["--budget", "1", "search"]);
    assert_eq!(code(&o), 3);
    assert!(d.path().join("search.json").exists());
    assert_eq!(json(&d.path().join("search.json"))["certified"].as_bool(), Some(false));
}

#[test]
fn zero_width_hex_scan_is_one_point() {
    let d = TempDir::new().unwrap();
    let o = run(d.path(), &["scan-hex", "--half-width", "0", "--max-shapes", "3", "--pool-size", "6"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let mut r = csv::Reader::from_path(d.path().join("scan_hex.csv")).unwrap();
    assert_eq!(r.records().count(), 1);
    assert_svg(&d.path().join("scan_hex.svg"));
}

#[test]
fn slant_scan_rejects_out_of_range() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&run(d.path(), &["scan-slant", "--from", "20", "--to", "21"])), 1);
    assert_eq!(code(&run(d.path(), &["bound", "--sigma", "45"])), 1);
}

#[test]
fn slant_scan_writes_rows() {
    let d = TempDir::new().unwrap();
    let o = run(d.path(), &["scan-slant", "--from", "0.5", "--to", "1", "--step", "0.5", "--max-shapes", "3", "--pool-size", "6"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let mut r = csv::Reader::from_path(d.path().join("scan_slant.csv")).unwrap();
    assert_eq!(r.records().count(), 2);
    assert_svg(&d.path().join("scan_slant.svg"));
}

#[test]
fn flags_and_help() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&run(d.path(), &["hansen", "--no-such-flag"])), 1);
    assert_eq!(code(&run(d.path(), &["--help"])), 0);
    assert_eq!(code(&run(d.path(), &["--version"])), 0);
    assert_eq!(code(&run(d.path(), &[])), 1);
}
