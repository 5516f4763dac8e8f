//! Complex dilogarithm, Clausen function and the periodic second Bernoulli
//! polynomial.
//!
//! Every logarithm in the crate goes through [`principal_log`], whose
//! imaginary part lies in `(-π, π]`. The dilogarithm is the principal branch
//! with its cut along `[1, ∞)`; on the cut it takes the value of
//! `-∫₀ˣ Log(1-u)/u du` with that same principal `Log`, i.e.
//! `Im Li₂(x) = -π ln x` for real `x > 1`.

use std::f64::consts::PI;
use std::sync::LazyLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// All complex quantities in the crate (q, coordinates, potential values, τ).
pub type ComplexValue = Complex64;

const PI2_OVER_6: f64 = PI * PI / 6.0;

/// `B_{2k} / (2k+1)!` for `k = 1..`, the odd-power coefficients of the
/// expansion of `Li₂` in `u = -Log(1-z)`.
#[allow(clippy::excessive_precision)]
const BERNOULLI_SERIES: [f64; 19] = [
    2.77777777777777762e-02,
    -2.77777777777777778e-04,
    4.72411186696900978e-06,
    -9.18577307466196408e-08,
    1.89788699889710005e-09,
    -4.06476164514422560e-11,
    8.92169102045645230e-13,
    -1.99392958607210744e-14,
    4.51898002961991825e-16,
    -1.03565176121812472e-17,
    2.39521862102618698e-19,
    -5.58178587432500898e-21,
    1.30915075541832125e-22,
    -3.08741980242674029e-24,
    7.31597565270220293e-26,
    -1.74084565723400088e-27,
    4.15763564461389988e-29,
    -9.96214848828462168e-31,
    2.39403442489616522e-32,
];

/// Principal logarithm, `Im ∈ (-π, π]`.
///
/// A negative-zero imaginary part is treated as `+0`, so every point of the
/// negative real axis maps to `ln|z| + iπ` regardless of how it was produced.
#[inline]
pub fn principal_log(z: Complex64) -> Complex64 {
    Complex64::new(z.norm().ln(), (z.im + 0.0).atan2(z.re))
}

/// Principal branch of Euler's dilogarithm `Li₂(z)`.
pub fn dilog(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("dilog"));
    }
    Ok(dilog_unchecked(z))
}

pub(crate) fn dilog_unchecked(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        if z.re == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if z.re == 1.0 {
            return Complex64::new(PI2_OVER_6, 0.0);
        }
        if z.re == -1.0 {
            return Complex64::new(-PI * PI / 12.0, 0.0);
        }
    }
    if z.norm_sqr() > 1.0 {
        // Li₂(z) = -Li₂(1/z) - π²/6 - ½ Log²(-z)
        let l = principal_log(-z);
        return -dilog_unit_disk(z.inv()) - PI2_OVER_6 - 0.5 * l * l;
    }
    dilog_unit_disk(z)
}

/// `|z| ≤ 1`.
fn dilog_unit_disk(z: Complex64) -> Complex64 {
    if z.norm_sqr() <= 0.25 {
        return dilog_power_series(z);
    }
    if z.re > 0.5 {
        // Li₂(z) = π²/6 - Log z · Log(1-z) - Li₂(1-z); here |1-z| < 1, Re(1-z) < ½
        let w = Complex64::new(1.0, 0.0) - z;
        if w.norm_sqr() == 0.0 {
            return Complex64::new(PI2_OVER_6, 0.0);
        }
        let rest = if w.norm_sqr() <= 0.25 {
            dilog_power_series(w)
        } else {
            dilog_bernoulli(w)
        };
        return PI2_OVER_6 - principal_log(z) * principal_log(w) - rest;
    }
    dilog_bernoulli(z)
}

/// `Σ zⁿ/n²`, used for `|z| ≤ ½`.
fn dilog_power_series(z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = z;
    for n in 1..200u32 {
        let term = power / f64::from(n * n);
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() {
            break;
        }
        power *= z;
    }
    sum
}

/// Expansion in `u = -Log(1-z)`, used for `½ < |z| ≤ 1`, `Re z ≤ ½`, where
/// `|u| < 1.3` keeps the series far inside its radius `2π`.
fn dilog_bernoulli(z: Complex64) -> Complex64 {
    let u = -principal_log(Complex64::new(1.0, 0.0) - z);
    let u2 = u * u;
    let mut power = u * u2;
    let mut sum = u - 0.25 * u2;
    for &c in &BERNOULLI_SERIES {
        let term = power * c;
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() {
            break;
        }
        power *= u2;
    }
    sum
}

/// `ζ(2k)` for `k = 0..ZETA_TERMS`; index 0 is unused.
const ZETA_TERMS: usize = 40;

static ZETA_EVEN: LazyLock<[f64; ZETA_TERMS]> = LazyLock::new(|| {
    let mut table = [0.0; ZETA_TERMS];
    table[1] = PI.powi(2) / 6.0;
    table[2] = PI.powi(4) / 90.0;
    table[3] = PI.powi(6) / 945.0;
    for (k, slot) in table.iter_mut().enumerate().skip(4) {
        let s = 2 * k as i32;
        // terms fall below 1e-19 well before n = 300 for s ≥ 8
        let mut acc = 0.0;
        for n in (1..300u32).rev() {
            acc += f64::from(n).powi(-s);
        }
        *slot = acc;
    }
    table
});

/// Clausen function `Cl₂(θ) = Σ_{n≥1} sin(nθ)/n²`.
///
/// This is the convention under which `2·Cl₂(π/3)` is the volume of the
/// figure-eight knot complement, and the imaginary part of `Li₂(e^{iθ})`.
pub fn clausen2(theta: f64) -> Result<f64> {
    if !theta.is_finite() {
        return Err(Error::NonFinite("clausen2"));
    }
    let mut t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    let a = t.abs();
    if a == 0.0 || a == PI {
        return Ok(0.0);
    }
    // Cl₂(a) = a - a ln a + Σ_k ζ(2k)/(k(2k+1)) · a · (a/2π)^{2k},  0 < a ≤ π
    let ratio2 = (a / (2.0 * PI)).powi(2);
    let mut power = a * ratio2;
    let mut sum = a - a * a.ln();
    for (k, zeta) in ZETA_EVEN.iter().enumerate().skip(1) {
        let k = k as f64;
        let term = zeta * power / (k * (2.0 * k + 1.0));
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
        power *= ratio2;
    }
    Ok(sum.copysign(t))
}

/// Periodic second Bernoulli polynomial: `{x}² - {x} + 1/6` with `{x}` the
/// fractional part.
///
/// The sign is the one for which `Re Li₂(e^{iθ}) = π²·B̄₂(θ/2π)`, so
/// `B̄₂(0) = 1/6`.
pub fn bernoulli2_periodic(x: f64) -> f64 {
    let f = x - x.floor();
    f * f - f + 1.0 / 6.0
}

/// `Li₂(e^{iθ})` split as `(π²·B̄₂(θ/2π), Cl₂(θ))`, computed without going
/// through [`dilog`].
pub fn dilog_unit_circle_decomposition(theta: f64) -> Result<(f64, f64)> {
    let im = clausen2(theta)?;
    Ok((PI * PI * bernoulli2_periodic(theta / (2.0 * PI)), im))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Cl₂(π/3) summed over whole periods of `sin(nπ/3)`; the block sums
    /// decay like k⁻³, so 2·10⁶ blocks leave a tail below 1e-14.
    fn clausen_pi_over_3_series() -> f64 {
        let mut acc = 0.0;
        for k in (0..2_000_000u64).rev() {
            let b = (6 * k) as f64;
            acc += 1.0 / (b + 1.0).powi(2) + 1.0 / (b + 2.0).powi(2)
                - 1.0 / (b + 4.0).powi(2)
                - 1.0 / (b + 5.0).powi(2);
        }
        acc * 3f64.sqrt() / 2.0
    }

    #[test]
    fn dilog_special_values() {
        assert_eq!(dilog(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!((dilog(c(1.0, 0.0)).unwrap().re - 1.6449340668482264).abs() < 1e-15);
        assert!((dilog(c(-1.0, 0.0)).unwrap().re + PI * PI / 12.0).abs() < 1e-15);
        // Li₂(½) = π²/12 - ½ ln²2
        let half = PI * PI / 12.0 - 0.5 * 2f64.ln().powi(2);
        assert!((dilog(c(0.5, 0.0)).unwrap() - half).norm() < 1e-15);
    }

    #[test]
    fn dilog_matches_reference_values() {
        // 30-digit values from an independent arbitrary-precision library
        let cases = [
            (c(0.3, 0.4), c(0.2665968667427404, 0.461362891819109)),
            (c(-2.5, 1.0), c(-1.7409767233914817, 0.49524978889226035)),
            (c(2.0, 0.0), c(2.4674011002723395, -2.177586090303602)),
            (c(0.9, -0.9), c(0.6115102073124149, -1.3006011903521029)),
            (c(-7.0, -6.0), c(-3.779166137763516, -1.641889044255111)),
            (c(0.5, 0.8660254037844386), c(0.2741556778080378, 1.0149416064096535)),
        ];
        for (z, want) in cases {
            let got = dilog(z).unwrap();
            assert!((got - want).norm() < 1e-13, "Li2({z}) = {got}, want {want}");
        }
    }

    #[test]
    fn dilog_rejects_non_finite() {
        assert!(matches!(dilog(c(f64::NAN, 0.0)), Err(Error::NonFinite(_))));
        assert!(dilog(c(0.0, f64::INFINITY)).is_err());
    }

    #[test]
    fn clausen_at_pi_over_3_matches_series() {
        let oracle = clausen_pi_over_3_series();
        assert!((oracle - 1.0149416064).abs() < 1e-10);
        assert!((clausen2(PI / 3.0).unwrap() - oracle).abs() < 1e-13);
    }

    #[test]
    fn clausen_zero_odd_and_periodic() {
        assert_eq!(clausen2(0.0).unwrap(), 0.0);
        assert_eq!(clausen2(PI).unwrap(), 0.0);
        for i in 1..50 {
            let t = 0.13 * i as f64;
            let v = clausen2(t).unwrap();
            assert!((clausen2(-t).unwrap() + v).abs() < 1e-14);
            assert!((clausen2(t + 2.0 * PI).unwrap() - v).abs() < 1e-12);
        }
        assert!(clausen2(f64::NAN).is_err());
    }

    #[test]
    fn clausen_maximum_at_pi_over_3() {
        let top = clausen2(PI / 3.0).unwrap();
        assert!(clausen2(PI / 3.0 - 1e-3).unwrap() < top);
        assert!(clausen2(PI / 3.0 + 1e-3).unwrap() < top);
    }

    #[test]
    fn bernoulli2_values() {
        assert!((bernoulli2_periodic(0.0) - 1.0 / 6.0).abs() < 1e-16);
        assert!((bernoulli2_periodic(0.5) + 1.0 / 12.0).abs() < 1e-16);
        assert!((bernoulli2_periodic(1.25) - bernoulli2_periodic(0.25)).abs() < 1e-15);
        for i in 0..40 {
            let x = 0.037 * i as f64;
            assert!((bernoulli2_periodic(-x) - bernoulli2_periodic(x)).abs() < 1e-14);
        }
    }

    #[test]
    fn unit_circle_decomposition_examples() {
        let (re, im) = dilog_unit_circle_decomposition(0.0).unwrap();
        assert!((re - PI * PI / 6.0).abs() < 1e-15 && im == 0.0);
        let (re, im) = dilog_unit_circle_decomposition(PI).unwrap();
        assert!((re + PI * PI / 12.0).abs() < 1e-14 && im.abs() < 1e-15);
        let (re, im) = dilog_unit_circle_decomposition(PI / 3.0).unwrap();
        let li = dilog(Complex64::from_polar(1.0, PI / 3.0)).unwrap();
        assert!((re - li.re).abs() < 1e-13);
        assert!((im - clausen_pi_over_3_series()).abs() < 1e-13);
    }

    #[test]
    fn principal_log_on_negative_axis() {
        assert_eq!(principal_log(c(-2.0, 0.0)).im, PI);
        assert_eq!(principal_log(c(-2.0, -0.0)).im, PI);
        assert!(principal_log(c(-2.0, -1e-300)).im < 0.0);
    }
}
