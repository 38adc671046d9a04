use lebesgue::bounds::HANSEN_AREA;
use lebesgue::coversearch::{exhaustive_oracle, min_cover_area, SearchProblem};
use lebesgue::exec::Exec;
use lebesgue::hexfit::{PalCut, ParallelHexagon};
use lebesgue::widthcurves::{build_reuleaux, random_spec, regular, ConstantWidthShape};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn shapes(seed: u64, count: usize) -> Vec<ConstantWidthShape> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| match rng.gen_range(0..5) {
            0 => ConstantWidthShape::circle(),
            1 => regular(3),
            k => build_reuleaux(&random_spec([5, 7, 9][k - 2], &mut rng).unwrap()).unwrap(),
        })
        .collect()
}

fn problem(seed: u64, count: usize, sigma: Option<f64>) -> SearchProblem {
    let mut p = SearchProblem::new(shapes(seed, count), ParallelHexagon::regular(), sigma.map(PalCut::from_degrees));
    p.segments_per_arc = 16;
    p
}

fn area(p: &SearchProblem) -> f64 {
    let r = min_cover_area(p, Exec::Sequential).unwrap();
    assert!(r.lower_bound_certified);
    r.area
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pruned_search_equals_oracle(seed in any::<u64>(), count in 1usize..=3, cut in prop::option::of(0.0..2.0f64)) {
        let p = problem(seed, count, cut);
        prop_assert_eq!(area(&p).to_bits(), exhaustive_oracle(&p).unwrap().area.to_bits());
    }

    #[test]
    fn adding_a_shape_never_shrinks_the_cover(seed in any::<u64>(), count in 1usize..=3) {
        let small = problem(seed, count, None);
        let big = problem(seed, count + 1, None);
        prop_assert!(area(&big) >= area(&small));
        prop_assert!(area(&big) <= HANSEN_AREA);
    }

    #[test]
    fn refining_the_boundary_never_lowers_the_bound(seed in any::<u64>(), count in 1usize..=3) {
        let mut p = problem(seed, count, None);
        let mut last = 0.0;
        for segs in [4, 8, 16, 32] {
            p.segments_per_arc = segs;
            let a = area(&p);
            prop_assert!(a >= last);
            last = a;
        }
    }
}

#[test]
fn search_is_deterministic() {
    let p = problem(11, 4, Some(1.0));
    let a = min_cover_area(&p, Exec::Sequential).unwrap();
    let b = min_cover_area(&p, Exec::Parallel).unwrap();
    assert_eq!(a.area.to_bits(), b.area.to_bits());
    assert_eq!(a, min_cover_area(&p, Exec::Sequential).unwrap());
}
