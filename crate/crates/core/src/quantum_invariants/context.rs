use std::f64::consts::PI;

use astro_float::{BigFloat, Consts};
use num_complex::Complex64;

use super::extended::{precision_for, ExtComplex, RM};
use crate::error::{Error, Result};

/// `q = exp(2πi/N)` together with its quarter powers and the Pochhammer
/// symbols `(q)_k`, all held at extended precision.
///
/// Fractional powers follow one global convention, `q^x := exp(2πi·x/N)`.
/// Every exponent occurring in the surgery formulas is a multiple of `1/4`,
/// so the context stores `q^{j/4}` for `j = 0..4N` and reduces exponents
/// modulo `4N`.
#[derive(Debug, Clone)]
pub struct RootOfUnityContext {
    n: u32,
    prec: usize,
    quarter: Vec<ExtComplex>,
    poch: Vec<ExtComplex>,
    poch_inv: Vec<ExtComplex>,
}

impl RootOfUnityContext {
    pub fn new(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("N must be at least 3, got {n}")));
        }
        let prec = precision_for(n);
        let work = prec + 64;
        let mut cc =
            Consts::new().map_err(|e| Error::Domain(format!("extended precision setup: {e:?}")))?;
        let pi = cc.pi(work, RM);
        let two_n = BigFloat::from_u64(2 * u64::from(n), work);

        // first quadrant: exp(iπj/(2N)), j = 0..N
        let first: Vec<ExtComplex> = (0..n)
            .map(|j| {
                let angle = pi
                    .mul(&BigFloat::from_u64(u64::from(j), work), work, RM)
                    .div(&two_n, work, RM);
                ExtComplex {
                    re: angle.cos(prec, RM, &mut cc),
                    im: angle.sin(prec, RM, &mut cc),
                }
            })
            .collect();
        let mut quarter = Vec::with_capacity(4 * n as usize);
        for k in 0..4 {
            quarter.extend(first.iter().map(|z| z.rotate_quarter(k)));
        }

        let one = ExtComplex::one(prec);
        let mut poch = Vec::with_capacity(n as usize);
        let mut poch_inv = Vec::with_capacity(n as usize);
        poch.push(one.clone());
        poch_inv.push(one.clone());
        for k in 1..n as usize {
            let next = poch[k - 1].mul(&one.sub(&quarter[4 * k], prec), prec);
            poch_inv.push(next.inv(prec));
            poch.push(next);
        }
        Ok(Self {
            n,
            prec,
            quarter,
            poch,
            poch_inv,
        })
    }

    /// The modulus `N`.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> Complex64 {
        self.quarter[4].to_c64()
    }

    /// `q^x = exp(2πi·x/N)` for real `x`.
    pub fn q_pow(&self, x: f64) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * x / f64::from(self.n))
    }

    /// `q^{j/4}` rounded to `f64`.
    pub fn q_quarter(&self, j: i128) -> Complex64 {
        self.quarter_ext(j).to_c64()
    }

    /// `(q)_k`; zero for `k ≥ N`.
    pub fn pochhammer(&self, k: usize) -> Complex64 {
        self.poch
            .get(k)
            .map_or(Complex64::new(0.0, 0.0), ExtComplex::to_c64)
    }

    pub(crate) fn prec(&self) -> usize {
        self.prec
    }

    pub(crate) fn quarter_ext(&self, j: i128) -> &ExtComplex {
        let m = 4 * i128::from(self.n);
        &self.quarter[j.rem_euclid(m) as usize]
    }

    /// `q^{k/2} - q^{-k/2}`.
    pub(crate) fn half_difference(&self, k: i128) -> ExtComplex {
        self.quarter_ext(2 * k)
            .sub(self.quarter_ext(-2 * k), self.prec)
    }

    pub(crate) fn poch_ext(&self, k: usize) -> Option<&ExtComplex> {
        self.poch.get(k)
    }

    pub(crate) fn poch_inv_ext(&self, k: usize) -> &ExtComplex {
        &self.poch_inv[k]
    }
}
