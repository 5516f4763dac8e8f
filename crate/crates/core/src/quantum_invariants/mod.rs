//! Colored Jones polynomial of the figure-eight knot and the WRT invariant of
//! integer surgeries on it, evaluated at `q = exp(2πi/N)`.

mod context;
mod extended;

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

pub use context::RootOfUnityContext;
use extended::ExtComplex;

use crate::error::{Error, Result};

/// Surgery coefficient: an integer framing, or the limit `p = ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SurgeryCoefficient {
    Finite(i64),
    Infinity,
}

impl SurgeryCoefficient {
    pub fn finite(self) -> Result<i64> {
        match self {
            Self::Finite(p) => Ok(p),
            Self::Infinity => Err(Error::Domain("p = inf has no finite evaluation here".into())),
        }
    }
}

impl From<i64> for SurgeryCoefficient {
    fn from(p: i64) -> Self {
        Self::Finite(p)
    }
}

impl fmt::Display for SurgeryCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(p) => write!(f, "{p}"),
            Self::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for SurgeryCoefficient {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Self::Infinity),
            t => t
                .parse::<i64>()
                .map(Self::Finite)
                .map_err(|_| format!("expected an integer or 'inf', got '{s}'")),
        }
    }
}

/// Quantum integer `[n] = (q^{n/2} - q^{-n/2}) / (q^{1/2} - q^{-1/2})`,
/// which is the real number `sin(nπ/N)/sin(π/N)`.
///
/// Vanishes at `n ≡ 0 (mod N)`.
pub fn quantum_integer(ctx: &RootOfUnityContext, n: i64) -> Complex64 {
    let big_n = i64::from(ctx.n());
    if n.rem_euclid(big_n) == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let num = ctx.half_difference(i128::from(n));
    let den = ctx.half_difference(1);
    let v = num.mul(&den.inv(ctx.prec()), ctx.prec()).to_c64();
    Complex64::new(v.re, 0.0)
}

/// `J_n(4₁; q) = Σ_{m<n} Π_{l=1}^{m} (q^{(n+l)/2} - q^{-(n+l)/2})(q^{(n-l)/2} - q^{-(n-l)/2})`.
pub fn colored_jones_fig8(ctx: &RootOfUnityContext, n: i64) -> Result<Complex64> {
    if n < 1 || n > i64::from(ctx.n()) {
        return Err(Error::Domain(format!(
            "color n = {n} outside 1..={}",
            ctx.n()
        )));
    }
    Ok(jones_ext(ctx, n).to_c64())
}

fn jones_ext(ctx: &RootOfUnityContext, n: i64) -> ExtComplex {
    let p = ctx.prec();
    let n = i128::from(n);
    let mut product = ExtComplex::one(p);
    let mut sum = ExtComplex::one(p);
    for l in 1..n {
        let factor = ctx
            .half_difference(n + l)
            .mul(&ctx.half_difference(n - l), p);
        product = product.mul(&factor, p);
        sum = sum.add(&product, p);
    }
    sum
}

/// `√(2/N)·sin(π/N)·e^{-3πi/4}·q^{(3-p)/4}`.
fn framing_prefactor(ctx: &RootOfUnityContext, p: i64) -> Complex64 {
    let n = f64::from(ctx.n());
    let eighth = Complex64::new(-FRAC_1_SQRT_2, -FRAC_1_SQRT_2);
    (2.0 / n).sqrt() * (PI / n).sin() * eighth * ctx.q_quarter(i128::from(3 - p))
}

/// τ_N(M_p) from the surgery formula
/// `√(2/N) sin(π/N) e^{-3πi/4} q^{(3-p)/4} Σ_{n=1}^{N-1} [n]² q^{pn²/4} J_n(4₁; q)`.
///
/// Only defined for `p > 0`.
pub fn wrt_direct(ctx: &RootOfUnityContext, p: impl Into<SurgeryCoefficient>) -> Result<Complex64> {
    let p = p.into().finite()?;
    if p <= 0 {
        return Err(Error::UnsupportedFraming(p));
    }
    let prec = ctx.prec();
    let den = ctx.half_difference(1);
    let den2_inv = den.mul(&den, prec).inv(prec);
    let mut sum = ExtComplex::zero(prec);
    for n in 1..i128::from(ctx.n()) {
        let qn = ctx.half_difference(n);
        let term = qn
            .mul(&qn, prec)
            .mul(ctx.quarter_ext(i128::from(p) * n * n), prec)
            .mul(&jones_ext(ctx, n as i64), prec);
        sum = sum.add(&term, prec);
    }
    let sum = sum.mul(&den2_inv, prec).to_c64();
    finite(framing_prefactor(ctx, p) * sum, "wrt_direct")
}

/// τ_N(M_p) from the double sum
/// `P(N) Σ_{n=1}^{N-1} Σ_{m=0}^{n-1} (q)_n (q)_{n+m} / ((q)_{n-1} (q)_{n-m-1}) · q^{n(pn/4-m)-n}`
/// with `P(N) = √(2/N) sin(π/N) e^{-3πi/4} q^{(3-p)/4} / (q^{1/2} - q^{-1/2})²`.
///
/// Terms with `n+m ≥ N` vanish. Accepts any integer `p`; for `p ≤ 0` the
/// framing phase uses the same closed form, so only `|τ_N|` is
/// convention-independent there.
pub fn wrt_double_sum(
    ctx: &RootOfUnityContext,
    p: impl Into<SurgeryCoefficient>,
) -> Result<Complex64> {
    let p = p.into().finite()?;
    let prec = ctx.prec();
    let big_n = ctx.n() as usize;
    let pp = i128::from(p);
    let mut sum = ExtComplex::zero(prec);
    for n in 1..big_n {
        let outer = ctx
            .poch_ext(n)
            .expect("n < N")
            .mul(ctx.poch_inv_ext(n - 1), prec);
        let ni = n as i128;
        for m in 0..n.min(big_n - n) {
            let Some(upper) = ctx.poch_ext(n + m) else {
                break;
            };
            let mi = m as i128;
            let exponent = pp * ni * ni - 4 * ni * mi - 4 * ni;
            let term = outer
                .mul(upper, prec)
                .mul(ctx.poch_inv_ext(n - m - 1), prec)
                .mul(ctx.quarter_ext(exponent), prec);
            sum = sum.add(&term, prec);
        }
    }
    let den = ctx.half_difference(1);
    let sum = sum.mul(&den.mul(&den, prec).inv(prec), prec).to_c64();
    finite(framing_prefactor(ctx, p) * sum, "wrt_double_sum")
}

fn finite(z: Complex64, what: &'static str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}

/// `|a - b| / max(|a|, |b|)`, falling back to the absolute difference when
/// both values are below `1e-6` in modulus (τ_N vanishes exactly for some
/// `(N, p)`).
pub fn relative_discrepancy(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    let diff = (a - b).norm();
    if scale > 1e-6 {
        diff / scale
    } else {
        diff
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthRow {
    pub n: u32,
    pub log_abs_tau: f64,
    pub log_abs_tau_over_n: f64,
    pub log_abs_tau_over_log_n: f64,
}

/// `log|τ_N(M_p)|` and its ratios to `N` and `log N`, one row per `N`,
/// sorted by `N`.
pub fn growth_profile(
    p: impl Into<SurgeryCoefficient>,
    n_values: &[u32],
) -> Result<Vec<GrowthRow>> {
    let p = p.into();
    let mut ns = n_values.to_vec();
    ns.sort_unstable();
    ns.par_iter()
        .map(|&n| {
            let ctx = RootOfUnityContext::new(n)?;
            let tau = wrt_direct(&ctx, p)?;
            let log_abs = tau.norm().ln();
            let nf = f64::from(n);
            Ok(GrowthRow {
                n,
                log_abs_tau: log_abs,
                log_abs_tau_over_n: log_abs / nf,
                log_abs_tau_over_log_n: log_abs / nf.ln(),
            })
        })
        .collect()
}
