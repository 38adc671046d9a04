//! Scalar abstraction over `f64` and a fixed-precision software float.
//!
//! The Hansen recurrence and the heptagon chain are written once against
//! [`Real`] and evaluated in either precision.

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Mantissa bits of [`Ext`] (about 57 significant decimal digits).
pub const EXT_BITS: usize = 192;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

/// Precision selector used by the CLI and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    Double,
    Extended,
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Precision::Double => "double",
            Precision::Extended => "extended",
        })
    }
}

pub trait Real:
    Clone
    + fmt::Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn sqrt(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn asin(&self) -> Self;
    fn pi() -> Self;

    fn abs(&self) -> Self {
        if *self < Self::from_f64(0.0) {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn max_of(self, o: Self) -> Self {
        if o > self {
            o
        } else {
            self
        }
    }

    /// Degrees to radians in this precision.
    fn from_degrees(d: f64) -> Self {
        Self::from_f64(d) * Self::pi() / Self::from_f64(180.0)
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn asin(&self) -> Self {
        f64::asin(*self)
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
}

/// Software float with [`EXT_BITS`] bits of mantissa.
#[derive(Clone, Debug)]
pub struct Ext(pub BigFloat);

impl Ext {
    pub fn parse(s: &str) -> Self {
        CONSTS.with(|cc| Ext(BigFloat::parse(s, astro_float::Radix::Dec, EXT_BITS, RM, &mut cc.borrow_mut())))
    }

    /// Decimal rendering with the given number of significant digits.
    pub fn to_sci(&self, digits: usize) -> String {
        let s = CONSTS.with(|cc| self.0.format(astro_float::Radix::Dec, RM, &mut cc.borrow_mut()));
        match s {
            Ok(s) => shorten(&s, digits),
            Err(_) => format!("{:e}", self.to_f64()),
        }
    }
}

fn shorten(s: &str, digits: usize) -> String {
    // astro-float prints `d.ddddde±x`; keep `digits` significant digits.
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m, e),
        None => (s, "0"),
    };
    let neg = mant.starts_with('-');
    let mant = mant.trim_start_matches('-');
    let mut keep = String::new();
    let mut count = 0;
    for ch in mant.chars() {
        if ch.is_ascii_digit() {
            if count >= digits {
                break;
            }
            count += 1;
        }
        keep.push(ch);
    }
    format!("{}{}e{}", if neg { "-" } else { "" }, keep, exp)
}

impl PartialEq for Ext {
    fn eq(&self, o: &Self) -> bool {
        self.0.cmp(&o.0) == Some(0)
    }
}

impl PartialOrd for Ext {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        self.0.cmp(&o.0).map(|c| c.cmp(&0))
    }
}

macro_rules! ext_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for Ext {
            type Output = Ext;
            fn $f(self, o: Ext) -> Ext {
                Ext(self.0.$f(&o.0, EXT_BITS, RM))
            }
        }
    };
}
ext_binop!(Add, add);
ext_binop!(Sub, sub);
ext_binop!(Mul, mul);
ext_binop!(Div, div);

impl Neg for Ext {
    type Output = Ext;
    fn neg(self) -> Ext {
        Ext(self.0.neg())
    }
}

impl Real for Ext {
    fn from_f64(x: f64) -> Self {
        Ext(BigFloat::from_f64(x, EXT_BITS))
    }

    fn to_f64(&self) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        match self.0.as_raw_parts() {
            Some((words, _bits, sign, exp, _)) => {
                let n = words.len();
                let hi = words[n - 1] as f64;
                let lo = if n >= 2 { words[n - 2] as f64 } else { 0.0 };
                let v = (hi + lo * 2f64.powi(-64)) * 2f64.powi(exp - 64);
                if sign == Sign::Neg {
                    -v
                } else {
                    v
                }
            }
            None => f64::NAN,
        }
    }

    fn sqrt(&self) -> Self {
        Ext(self.0.sqrt(EXT_BITS, RM))
    }

    fn sin(&self) -> Self {
        CONSTS.with(|cc| Ext(self.0.sin(EXT_BITS, RM, &mut cc.borrow_mut())))
    }

    fn cos(&self) -> Self {
        CONSTS.with(|cc| Ext(self.0.cos(EXT_BITS, RM, &mut cc.borrow_mut())))
    }

    fn asin(&self) -> Self {
        CONSTS.with(|cc| Ext(self.0.asin(EXT_BITS, RM, &mut cc.borrow_mut())))
    }

    fn pi() -> Self {
        CONSTS.with(|cc| Ext(cc.borrow_mut().pi(EXT_BITS, RM)))
    }
}

/// Planar point over a [`Real`] scalar.
#[derive(Clone, Debug)]
pub struct P2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Real> P2<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }
    pub fn polar(a: &T) -> Self {
        Self { x: a.cos(), y: a.sin() }
    }
    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.x.clone() + o.x.clone(), self.y.clone() + o.y.clone())
    }
    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone())
    }
    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }
    pub fn dot(&self, o: &Self) -> T {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone()
    }
    pub fn cross(&self, o: &Self) -> T {
        self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone()
    }
    pub fn norm2(&self) -> T {
        self.dot(self)
    }
    pub fn perp(&self) -> Self {
        Self::new(-self.y.clone(), self.x.clone())
    }
    pub fn to_f64(&self) -> crate::geom::Point2 {
        crate::geom::Point2::new(self.x.to_f64(), self.y.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_f64() {
        for x in [1.0, -0.1339745962155614, 3.7e-7, 1.8738e-11, 4.227e-21] {
            let e = Ext::from_f64(x);
            assert_eq!(e.to_f64(), x);
        }
    }

    #[test]
    fn sqrt_three_digits() {
        let r = Ext::from_f64(3.0).sqrt();
        let s = r.to_sci(40);
        assert!(s.starts_with("1.732050807568877293527446341505872366942"), "{s}");
    }

    #[test]
    fn ordering() {
        assert!(Ext::from_f64(1.0) < Ext::from_f64(2.0));
        assert!(Ext::from_f64(-1.0) < Ext::from_f64(0.0));
        assert_eq!(Ext::from_f64(2.0).abs(), Ext::from_f64(2.0));
        assert_eq!(Ext::from_f64(-2.0).abs(), Ext::from_f64(2.0));
    }
}
