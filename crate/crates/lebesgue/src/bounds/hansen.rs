//! Hansen's sequence of vanishing corner regions.
//!
//! `x₀ = 1 − √3/2`, `x_{i+1} = 2x_i² / (1 − √3 x_i + √(1 − 2√3 x_i − x_i²))`,
//! and `A_i = x_i x_{i+1}/4 − (θ − sin θ)` with `θ = 2 asin(d/2)`,
//! `d = √(x_{i+1}²/4 + (x_i + (√3/2) x_{i+1})²)`.

use super::BoundError;
use crate::ext::{Ext, Precision, Real};

/// `x₀ … x_n`.
pub fn hansen_xs<T: Real>(n: usize) -> Result<Vec<T>, BoundError> {
    let one = T::from_f64(1.0);
    let two = T::from_f64(2.0);
    let s3 = T::from_f64(3.0).sqrt();
    let mut xs = vec![one.clone() - s3.clone() / two.clone()];
    for i in 0..n {
        let x = xs[i].clone();
        let rad = one.clone() - two.clone() * s3.clone() * x.clone() - x.clone() * x.clone();
        if !(rad > T::from_f64(0.0)) {
            return Err(BoundError::Domain(i));
        }
        let den = one.clone() - s3.clone() * x.clone() + rad.sqrt();
        xs.push(two.clone() * x.clone() * x / den);
    }
    Ok(xs)
}

pub fn hansen_x<T: Real>(i: usize) -> Result<T, BoundError> {
    Ok(hansen_xs::<T>(i)?.pop().expect("nonempty"))
}

/// `A_i` for `i ≥ 0` (only `i ≥ 1` are regions of the construction).
pub fn hansen_area<T: Real>(i: usize) -> Result<T, BoundError> {
    let xs = hansen_xs::<T>(i + 1)?;
    let (x, y) = (xs[i].clone(), xs[i + 1].clone());
    let two = T::from_f64(2.0);
    let s3h = T::from_f64(3.0).sqrt() / two.clone();
    let a = x.clone() + s3h * y.clone();
    let d = (y.clone() * y.clone() / T::from_f64(4.0) + a.clone() * a).sqrt();
    let th = two.clone() * (d / two).asin();
    Ok(x * y / T::from_f64(4.0) - (th.clone() - th.sin()))
}

/// `A_i` rendered in the requested precision, with its f64 value.
pub fn hansen_area_report(i: usize, precision: Precision) -> Result<(f64, String), BoundError> {
    match precision {
        Precision::Double => {
            let v = hansen_area::<f64>(i)?;
            Ok((v, format!("{v:.12e}")))
        }
        Precision::Extended => {
            let v = hansen_area::<Ext>(i)?;
            Ok((v.to_f64(), v.to_sci(20)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decreasing() {
        let xs = hansen_xs::<f64>(5).unwrap();
        assert!(xs.windows(2).all(|w| w[1] < w[0]));
        assert!((xs[1] - 0.024_131_160_666_459_42).abs() < 1e-15);
    }

    #[test]
    fn double_and_extended_agree_on_a2() {
        let d = hansen_area::<f64>(2).unwrap();
        let e = hansen_area::<Ext>(2).unwrap().to_f64();
        assert!(((d - e) / e).abs() < 1e-6);
    }
}
