use lebesgue::geom::{convex_hull, diameter, intersect, ArcPolygon, ArcSegment, Orientation, Piece, Point2};
use lebesgue::widthcurves::{build_reuleaux, random_spec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

fn cloud() -> impl Strategy<Value = Vec<Point2>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 3..80).prop_map(|v| v.into_iter().map(|(x, y)| Point2::new(x, y)).collect())
}

fn point() -> impl Strategy<Value = Point2> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(x, y)| Point2::new(x, y))
}

fn piece() -> impl Strategy<Value = Piece> {
    prop_oneof![
        (point(), point()).prop_map(|(a, b)| Piece::Line { a, b }),
        (point(), 0.2..1.5f64, 0.0..TAU, 0.1..3.0f64, any::<bool>()).prop_map(|(c, r, s, w, ccw)| {
            let o = if ccw { Orientation::Ccw } else { Orientation::Cw };
            let e = if ccw { s + w } else { s - w };
            Piece::Arc(ArcSegment::new(c, r, s, e, o))
        }),
    ]
}

fn sorted(mut v: Vec<Point2>) -> Vec<Point2> {
    v.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    v
}

proptest! {
    #[test]
    fn hull_is_idempotent(p in cloud()) {
        if let Ok(h) = convex_hull(&p) {
            prop_assert_eq!(convex_hull(&h.vertices).unwrap(), h);
        }
    }

    #[test]
    fn hull_contains_its_input(p in cloud()) {
        if let Ok(h) = convex_hull(&p) {
            for q in &p {
                prop_assert!(h.outside_distance(*q) <= 1e-10);
            }
        }
    }

    #[test]
    fn diameter_is_rigid_invariant(p in cloud(), a in 0.0..TAU, t in point(), flip in any::<bool>()) {
        let moved: Vec<Point2> = p.iter().map(|q| {
            let q = if flip { Point2::new(q.x, -q.y) } else { *q };
            q.rotate(a) + t
        }).collect();
        prop_assert!((diameter(&p) - diameter(&moved)).abs() <= 1e-12);
    }

    #[test]
    fn intersect_is_symmetric(a in piece(), b in piece()) {
        let ab = intersect(&a, &b);
        let ba = intersect(&b, &a);
        prop_assert_eq!(ab.points.len(), ba.points.len());
        prop_assert_eq!(ab.tangent, ba.tangent);
        for (p, q) in sorted(ab.points).iter().zip(sorted(ba.points)) {
            prop_assert!(p.dist(q) <= 1e-9);
        }
    }

    /// Arc-polygon area against chord polygon plus circular segments.
    #[test]
    fn reuleaux_area_decomposes(seed in any::<u64>(), k in 0usize..3) {
        let n = [5, 7, 9][k];
        let spec = random_spec(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let s = build_reuleaux(&spec).unwrap();
        let chords: Vec<Point2> = s.boundary.pieces.iter().map(|p| p.start()).collect();
        let mut area = lebesgue::geom::shoelace(&chords);
        for p in &s.boundary.pieces {
            if let Piece::Arc(a) = p {
                let w = a.sweep().abs();
                area += 0.5 * a.radius * a.radius * (w - w.sin());
            }
        }
        prop_assert!((s.boundary.area() - area).abs() <= 1e-10);
    }
}

#[test]
fn circle_area() {
    let c = ArcPolygon::circle(Point2::new(0.3, -0.2), 0.5);
    assert!((c.area() - PI / 4.0).abs() <= 1e-12);
}
