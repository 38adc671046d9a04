use lebesgue::hexfit::{admissible_placements, find_roots, t_value, FitShape, ParallelHexagon, RootSet};
use lebesgue::widthcurves::{build_reuleaux, random_spec, ConstantWidthShape};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

fn shape(seed: u64, k: usize) -> ConstantWidthShape {
    let n = [5, 7, 9][k % 3];
    build_reuleaux(&random_spec(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()).unwrap()
}

fn hexagon() -> impl Strategy<Value = ParallelHexagon> {
    (30.0..90.0f64, 30.0..90.0f64, 0.0..PI).prop_filter("third angle positive", |(a, b, _)| a + b < 150.0).prop_map(|(a, b, r)| {
        let mut h = ParallelHexagon::from_degrees(a, b);
        h.rotation = r;
        h
    })
}

fn roots(s: &ConstantWidthShape, h: &ParallelHexagon) -> Vec<f64> {
    match find_roots(s, h, 1e-12) {
        RootSet::Roots(r) => r,
        RootSet::Always => panic!("Reuleaux polygons have isolated roots"),
    }
}

/// Distance on the circle between two angles.
fn circ(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

fn same_angles(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.iter().any(|y| circ(*x, *y) <= tol))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn t_is_antisymmetric(seed in any::<u64>(), k in 0usize..3, h in hexagon()) {
        let s = shape(seed, k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..200 {
            let th = rng.gen_range(0.0..TAU);
            prop_assert!((t_value(&s, &h, th) + t_value(&s, &h, th + PI)).abs() <= 1e-12);
        }
    }

    /// Every sign change seen on a dense grid holds a reported root.
    #[test]
    fn no_sign_change_is_missed(seed in any::<u64>(), k in 0usize..3, h in hexagon()) {
        let s = shape(seed, k);
        let r = roots(&s, &h);
        let n = 20_000;
        let step = TAU / n as f64;
        for i in 0..n {
            let (a, b) = (i as f64 * step, (i + 1) as f64 * step);
            if t_value(&s, &h, a) * t_value(&s, &h, b) < 0.0 {
                prop_assert!(r.iter().any(|x| circ(*x, 0.5 * (a + b)) <= step), "missed root near {a}");
            }
        }
    }

    #[test]
    fn every_shape_fits_every_hexagon(seed in any::<u64>(), k in 0usize..3, h in hexagon()) {
        let s = shape(seed, k);
        prop_assert!(roots(&s, &h).len() >= 2);
        prop_assert!(!admissible_placements(&FitShape::new(s), &h, None, false).is_empty());
    }

    /// Turning the hexagon by φ turns every root by −φ.
    #[test]
    fn roots_follow_hexagon_rotation(seed in any::<u64>(), k in 0usize..3, h in hexagon(), phi in 0.0..TAU) {
        let s = shape(seed, k);
        let mut g = h;
        g.rotation += phi;
        let shifted: Vec<f64> = roots(&s, &h).iter().map(|r| r - phi).collect();
        prop_assert!(same_angles(&shifted, &roots(&s, &g), 1e-8));
    }

    /// In the regular hexagon (symmetric about the x-axis) the mirror
    /// shape's roots are the negated roots.
    #[test]
    fn mirror_roots_are_negated(seed in any::<u64>(), k in 0usize..3) {
        let s = shape(seed, k);
        let h = ParallelHexagon::regular();
        let neg: Vec<f64> = roots(&s, &h).iter().map(|r| -r).collect();
        prop_assert!(same_angles(&neg, &roots(&s.mirrored(), &h), 1e-8));
    }
}
