use lebesgue::bounds::{
    basic_construction, cover_area_basic, cover_area_reflected, monte_carlo_area, pal_cut_area, reflected_construction, CoverConstruction, RegionName,
    SPRAGUE_AREA,
};
use lebesgue::exec::Exec;
use lebesgue::hexfit::{PalCut, ParallelHexagon};
use proptest::prelude::*;

fn inside_cut_hexagon(c: &CoverConstruction) -> bool {
    let cut = PalCut::new(c.sigma);
    let sides = ParallelHexagon::regular().side_normals();
    c.removed().all(|r| {
        r.boundary.sample_boundary(64).iter().all(|p| sides.iter().chain(cut.normals().iter()).all(|n| p.dot(*n) <= 0.5 + 1e-12))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reflections_never_cost_area(deg in 0.01..8.99f64) {
        let s = deg.to_radians();
        prop_assert!(cover_area_reflected(s, true).unwrap() <= cover_area_basic(s).unwrap());
        prop_assert!(cover_area_reflected(s, false).unwrap() <= cover_area_reflected(s, true).unwrap());
    }

    #[test]
    fn regions_are_disjoint_and_inside(deg in 0.01..8.99f64, reflect in any::<bool>()) {
        let s = deg.to_radians();
        let c = if reflect { reflected_construction(s, true).unwrap() } else { basic_construction(s).unwrap() };
        prop_assert!(c.check_disjoint(1e-12).is_ok());
        prop_assert!(inside_cut_hexagon(&c));
    }
}

#[test]
fn zero_slant_collapses_to_sprague() {
    assert!((pal_cut_area(0.0) - (2.0 - 2.0 / 3f64.sqrt())).abs() <= 1e-12);
    assert!((cover_area_basic(0.0).unwrap() - SPRAGUE_AREA).abs() <= 1e-9);
    let c = basic_construction(0.0).unwrap();
    for name in [RegionName::NearC2, RegionName::NearE2] {
        assert!(c.region(name).map_or(0.0, |r| r.area) <= 1e-15);
    }
}

/// Closed-form region areas against point counting at 10⁷ samples.
#[test]
fn region_areas_match_point_counts() {
    let c = reflected_construction(1f64.to_radians(), true).unwrap();
    for r in c.removed().filter(|r| r.area > 0.0) {
        let mc = monte_carlo_area(r, 10_000_000, 42, Exec::Parallel);
        assert!((mc - r.area).abs() <= 1e-3 * r.area, "{}: {} vs {}", r.name, mc, r.area);
    }
}
