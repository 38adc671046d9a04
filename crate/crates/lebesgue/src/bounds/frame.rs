//! Labeled points of the regular hexagon with slanted corner cuts.
//!
//! The hexagon has apothem 1/2 and corners A..F counterclockwise at 180°,
//! 240°, 300°, 0°, 60°, 120°. For a corner X, `X1` is the corner itself and
//! `X2`/`X3` are where the corner's cut line meets the side towards the next/
//! previous corner. Every corner carries a cut line at the same slant; only the
//! cuts at E and C are removed from the cover, the others are reference points.

use crate::ext::{Real, P2};
use crate::geom::{circle_circle_near, line_circle_near, line_line, Point2};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Circumradius of the hexagon.
pub const CIRCUMRADIUS: f64 = 0.577_350_269_189_625_8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Corner {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Corner {
    pub const ALL: [Corner; 6] = [Corner::A, Corner::B, Corner::C, Corner::D, Corner::E, Corner::F];

    pub fn degrees(self) -> f64 {
        match self {
            Corner::A => 180.0,
            Corner::B => 240.0,
            Corner::C => 300.0,
            Corner::D => 0.0,
            Corner::E => 60.0,
            Corner::F => 120.0,
        }
    }

    pub fn letter(self) -> char {
        b"ABCDEF"[self as usize] as char
    }
}

/// Points of the construction for one slant `sigma` (radians).
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub sigma: f64,
    p1: [Point2; 6],
    p2: [Point2; 6],
    p3: [Point2; 6],
    normal: [Point2; 6],
}

impl Frame {
    pub fn new(sigma: f64) -> Self {
        let mut f = Self {
            sigma,
            p1: [Point2::ORIGIN; 6],
            p2: [Point2::ORIGIN; 6],
            p3: [Point2::ORIGIN; 6],
            normal: [Point2::ORIGIN; 6],
        };
        let side = PI / 6.0;
        for c in Corner::ALL {
            let a = c.degrees().to_radians();
            let n = Point2::polar(a - 2.0 * sigma);
            let i = c as usize;
            f.p1[i] = Point2::polar(a) * CIRCUMRADIUS;
            f.p2[i] = line_line(n, 0.5, Point2::polar(a + side), 0.5).expect("cut meets side");
            f.p3[i] = line_line(n, 0.5, Point2::polar(a - side), 0.5).expect("cut meets side");
            f.normal[i] = n;
        }
        f
    }

    pub fn from_degrees(d: f64) -> Self {
        Self::new(d.to_radians())
    }

    pub fn p1(&self, c: Corner) -> Point2 {
        self.p1[c as usize]
    }

    pub fn p2(&self, c: Corner) -> Point2 {
        self.p2[c as usize]
    }

    pub fn p3(&self, c: Corner) -> Point2 {
        self.p3[c as usize]
    }

    /// Outward normal of the cut line at `c`; the line is `p · n = 1/2`.
    pub fn cut_normal(&self, c: Corner) -> Point2 {
        self.normal[c as usize]
    }

    /// Corner triangle `X1 X2 X3`, counterclockwise.
    pub fn corner_triangle(&self, c: Corner) -> [Point2; 3] {
        let (a, b, d) = (self.p1(c), self.p2(c), self.p3(c));
        if (b - a).cross(d - a) >= 0.0 {
            [a, b, d]
        } else {
            [a, d, b]
        }
    }

    pub fn corner_triangle_area(&self, c: Corner) -> f64 {
        let [a, b, d] = self.corner_triangle(c);
        0.5 * (b - a).cross(d - a)
    }

    /// Point on side CD, near C2, at distance one from F3.
    pub fn g(&self) -> Point2 {
        let c2 = self.p2(Corner::C);
        line_circle_near(c2, self.p1(Corner::D) - c2, self.p3(Corner::F), 1.0, c2).unwrap_or(c2)
    }

    /// Point on the C cut, near C2, at distance one from F3.
    pub fn k(&self) -> Point2 {
        let c2 = self.p2(Corner::C);
        line_circle_near(c2, self.p3(Corner::C) - c2, self.p3(Corner::F), 1.0, c2).unwrap_or(c2)
    }

    /// Midpoint of side DE.
    pub fn m(&self) -> Point2 {
        Point2::polar(PI / 6.0) * 0.5
    }

    /// Image of F3 in the mirror line through M.
    pub fn q(&self) -> Point2 {
        self.p3(Corner::F).reflect(PI / 6.0)
    }

    /// Counterpart of G for corner E: on side DE beyond E3 at distance one
    /// from B2 (E3 itself when B2 is already within reach).
    pub fn n(&self) -> Point2 {
        let e3 = self.p3(Corner::E);
        let b2 = self.p2(Corner::B);
        if b2.dist(e3) <= 1.0 {
            return e3;
        }
        line_circle_near(e3, self.p1(Corner::D) - e3, b2, 1.0, e3).unwrap_or(e3)
    }

    /// Corner triangle B mirrored onto corner A.
    pub fn a_prime(&self) -> [Point2; 3] {
        self.corner_triangle(Corner::B).map(|p| p.reflect(PI / 6.0))
    }

    /// Near H of the critical pentagon: one from both F3 and E3, near B2.
    pub fn h(&self) -> Option<Point2> {
        circle_circle_near(self.p3(Corner::F), 1.0, self.p3(Corner::E), 1.0, self.p2(Corner::B))
    }

    /// Vertex J of the critical pentagon: one from both E3 and G, near A1.
    pub fn j(&self) -> Option<Point2> {
        circle_circle_near(self.p3(Corner::E), 1.0, self.g(), 1.0, self.p1(Corner::A))
    }

    /// Every named point.
    pub fn labeled(&self) -> Vec<(String, Point2)> {
        let mut out = Vec::new();
        for c in Corner::ALL {
            out.push((format!("{}1", c.letter()), self.p1(c)));
            out.push((format!("{}2", c.letter()), self.p2(c)));
            out.push((format!("{}3", c.letter()), self.p3(c)));
        }
        out.push(("G".into(), self.g()));
        out.push(("K".into(), self.k()));
        out.push(("M".into(), self.m()));
        out.push(("N".into(), self.n()));
        out.push(("Q".into(), self.q()));
        if let Some(h) = self.h() {
            out.push(("H".into(), h));
        }
        if let Some(j) = self.j() {
            out.push(("J".into(), j));
        }
        out
    }
}

/// The same frame in a generic precision, for the tiny-region computations.
#[derive(Debug, Clone)]
pub struct FrameT<T> {
    pub p1: Vec<P2<T>>,
    pub p2: Vec<P2<T>>,
    pub p3: Vec<P2<T>>,
    pub normal: Vec<P2<T>>,
}

/// `p · n1 = p · n2 = 1/2`.
pub fn meet_t<T: Real>(n1: &P2<T>, n2: &P2<T>) -> P2<T> {
    let h = T::from_f64(0.5);
    let det = n1.cross(n2);
    P2::new(h.clone() * (n2.y.clone() - n1.y.clone()) / det.clone(), h * (n1.x.clone() - n2.x.clone()) / det)
}

impl<T: Real> FrameT<T> {
    /// `sigma` in degrees, converted in the target precision.
    pub fn from_degrees(sigma_deg: f64) -> Self {
        let (mut p1, mut p2, mut p3, mut normal) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        let r = T::from_f64(1.0) / T::from_f64(3.0).sqrt();
        for c in Corner::ALL {
            let a = c.degrees();
            let n = P2::polar(&(T::from_degrees(a) - T::from_degrees(2.0 * sigma_deg)));
            p1.push(P2::polar(&T::from_degrees(a)).scale(&r));
            p2.push(meet_t(&n, &P2::polar(&T::from_degrees(a + 30.0))));
            p3.push(meet_t(&n, &P2::polar(&T::from_degrees(a - 30.0))));
            normal.push(n);
        }
        Self { p1, p2, p3, normal }
    }

    pub fn p1(&self, c: Corner) -> &P2<T> {
        &self.p1[c as usize]
    }

    pub fn p2(&self, c: Corner) -> &P2<T> {
        &self.p2[c as usize]
    }

    pub fn p3(&self, c: Corner) -> &P2<T> {
        &self.p3[c as usize]
    }

    pub fn normal(&self, c: Corner) -> &P2<T> {
        &self.normal[c as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_slant_points() {
        let f = Frame::new(0.0);
        let s = 3f64.sqrt();
        let e2 = f.p2(Corner::E);
        assert!((e2.x - (1.0 - s / 2.0)).abs() < 1e-15 && (e2.y - 0.5).abs() < 1e-15);
        let c3 = f.p3(Corner::C);
        assert!((c3.x - e2.x).abs() < 1e-15 && (c3.y + 0.5).abs() < 1e-15);
        assert!(f.g().dist(f.p2(Corner::C)) < 1e-12);
        assert!(f.k().dist(f.p2(Corner::C)) < 1e-12);
    }

    #[test]
    fn cuts_tangent_to_incircle() {
        let f = Frame::from_degrees(1.3);
        for c in Corner::ALL {
            let n = f.cut_normal(c);
            assert!((f.p2(c).dot(n) - 0.5).abs() < 1e-12);
            assert!((f.p3(c).dot(n) - 0.5).abs() < 1e-12);
        }
        // Longer leg towards the previous corner.
        let a = Corner::A;
        assert!(f.p1(a).dist(f.p3(a)) > f.p1(a).dist(f.p2(a)));
    }

    #[test]
    fn generic_frame_agrees() {
        let f = Frame::from_degrees(0.7);
        let t = FrameT::<f64>::from_degrees(0.7);
        for c in Corner::ALL {
            assert!(t.p2(c).to_f64().dist(f.p2(c)) < 1e-14);
            assert!(t.p3(c).to_f64().dist(f.p3(c)) < 1e-14);
        }
    }
}
