//! Minimal complex arithmetic over `astro_float::BigFloat`.
//!
//! The WRT sums cancel catastrophically: individual terms grow like
//! `exp(0.32·N)` while the result grows polynomially, so the summation runs
//! with enough mantissa bits to absorb the cancellation and only the final
//! value is rounded to `f64`.

use astro_float::{BigFloat, RoundingMode, Sign};
use num_complex::Complex64;

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

/// Working precision in bits for modulus `n`: 128 guard bits plus one
/// 64-bit word per 64 units of `n/2`.
pub(crate) fn precision_for(n: u32) -> usize {
    let half = (n as usize).div_ceil(2);
    128 + 64 * half.div_ceil(64)
}

#[derive(Clone, Debug)]
pub(crate) struct ExtComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl ExtComplex {
    pub fn zero(p: usize) -> Self {
        Self {
            re: BigFloat::from_f64(0.0, p),
            im: BigFloat::from_f64(0.0, p),
        }
    }

    pub fn one(p: usize) -> Self {
        Self {
            re: BigFloat::from_f64(1.0, p),
            im: BigFloat::from_f64(0.0, p),
        }
    }

    pub fn add(&self, o: &Self, p: usize) -> Self {
        Self {
            re: self.re.add(&o.re, p, RM),
            im: self.im.add(&o.im, p, RM),
        }
    }

    pub fn sub(&self, o: &Self, p: usize) -> Self {
        Self {
            re: self.re.sub(&o.re, p, RM),
            im: self.im.sub(&o.im, p, RM),
        }
    }

    pub fn mul(&self, o: &Self, p: usize) -> Self {
        let rr = self.re.mul(&o.re, p, RM);
        let ii = self.im.mul(&o.im, p, RM);
        let ri = self.re.mul(&o.im, p, RM);
        let ir = self.im.mul(&o.re, p, RM);
        Self {
            re: rr.sub(&ii, p, RM),
            im: ri.add(&ir, p, RM),
        }
    }

    /// Multiplication by `i^k`.
    pub fn rotate_quarter(&self, k: usize) -> Self {
        match k % 4 {
            0 => self.clone(),
            1 => Self {
                re: self.im.neg(),
                im: self.re.clone(),
            },
            2 => Self {
                re: self.re.neg(),
                im: self.im.neg(),
            },
            _ => Self {
                re: self.im.clone(),
                im: self.re.neg(),
            },
        }
    }

    pub fn inv(&self, p: usize) -> Self {
        let d = self
            .re
            .mul(&self.re, p, RM)
            .add(&self.im.mul(&self.im, p, RM), p, RM);
        Self {
            re: self.re.div(&d, p, RM),
            im: self.im.neg().div(&d, p, RM),
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }
}

/// Rounds a finite `BigFloat` to the nearest `f64` (up to one unit in the
/// last place of the leading 64-bit word).
pub(crate) fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf() {
        return if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    }
    let Some((words, _bits, sign, exp, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let top = *words.last().expect("normalized mantissa has a word") as f64;
    // value = 0.m × 2^exp with the leading word holding the top 64 bits
    let magnitude = scale2(top, exp as i64 - 64);
    match sign {
        Sign::Neg => -magnitude,
        Sign::Pos => magnitude,
    }
}

fn scale2(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_round_trip() {
        for &v in &[1.0, -2.5, 1e-300, std::f64::consts::PI, -7.25e250, 0.1, 6.02e23] {
            assert_eq!(to_f64(&BigFloat::from_f64(v, 192)), v);
        }
        assert_eq!(to_f64(&BigFloat::from_f64(0.0, 192)), 0.0);
    }

    #[test]
    fn complex_inverse() {
        let p = 192;
        let z = ExtComplex {
            re: BigFloat::from_f64(3.0, p),
            im: BigFloat::from_f64(-4.0, p),
        };
        let w = z.mul(&z.inv(p), p).to_c64();
        assert!((w - Complex64::new(1.0, 0.0)).norm() < 1e-16);
    }

    #[test]
    fn precision_grows_with_n() {
        assert_eq!(precision_for(64), 192);
        assert_eq!(precision_for(500), 384);
        assert!(precision_for(3) >= 128);
    }
}
