//! Elimination of `w` from the figure-eight critical-point system.
//!
//! With `z = s²` the system reads
//!
//! ```text
//! s^p (1 - s²w) = w - s²,     (1 - s²w)(w - s²) = s²w.
//! ```
//!
//! The first equation gives `w = A/B` with `A = s² + s^p`, `B = 1 + s^{p+2}`;
//! the second is `s²w² - C·w + s² = 0` with `C = 1 - s² + s⁴`. Clearing
//! denominators leaves `P(s) = s²A² - C·A·B + s²B²`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg};

/// Laurent polynomial with integer coefficients, keyed by exponent.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LaurentPoly(BTreeMap<i64, i128>);

impl LaurentPoly {
    pub fn monomial(coefficient: i128, exponent: i64) -> Self {
        let mut m = BTreeMap::new();
        if coefficient != 0 {
            m.insert(exponent, coefficient);
        }
        Self(m)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i128)> + '_ {
        self.0.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    fn normalized(mut self) -> Self {
        self.0.retain(|_, c| *c != 0);
        self
    }
}

impl Add for LaurentPoly {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.0 {
            *self.0.entry(e).or_default() += c;
        }
        self.normalized()
    }
}

impl Neg for LaurentPoly {
    type Output = Self;

    fn neg(mut self) -> Self {
        self.0.values_mut().for_each(|c| *c = -*c);
        self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: Self) -> LaurentPoly {
        let mut out = BTreeMap::new();
        for (&ea, &ca) in &self.0 {
            for (&eb, &cb) in &rhs.0 {
                *out.entry(ea + eb).or_default() += ca * cb;
            }
        }
        LaurentPoly(out).normalized()
    }
}

/// Variable of an elimination polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EliminationVariable {
    /// Polynomial in `s = z^{1/2}` (odd `p`).
    S,
    /// Polynomial in `z` (even `p`, where only even powers of `s` occur).
    Z,
}

/// Ordinary polynomial obtained from `P(s)` after removing the factor
/// `s^{min exponent}`; coefficients in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct EliminationPolynomial {
    pub variable: EliminationVariable,
    pub coefficients: Vec<f64>,
}

/// `A`, `B`, `C` as Laurent polynomials in `s`.
pub fn fig8_factors(p: i64) -> (LaurentPoly, LaurentPoly, LaurentPoly) {
    let m = LaurentPoly::monomial;
    let a = m(1, 2) + m(1, p);
    let b = m(1, 0) + m(1, p + 2);
    let c = m(1, 0) + m(-1, 2) + m(1, 4);
    (a, b, c)
}

/// `P(s) = s²A² - C·A·B + s²B²`.
pub fn fig8_cleared_polynomial(p: i64) -> LaurentPoly {
    let (a, b, c) = fig8_factors(p);
    let s2 = LaurentPoly::monomial(1, 2);
    let first = &s2 * &(&a * &a);
    let middle = &(&c * &a) * &b;
    let last = &s2 * &(&b * &b);
    first + (-middle) + last
}

pub fn fig8_elimination_polynomial(p: i64) -> EliminationPolynomial {
    let poly = fig8_cleared_polynomial(p);
    let (Some(lo), Some(hi)) = (poly.min_exponent(), poly.max_exponent()) else {
        return EliminationPolynomial {
            variable: EliminationVariable::Z,
            coefficients: Vec::new(),
        };
    };
    let even = poly.terms().all(|(e, _)| e % 2 == 0);
    let (variable, step) = if even {
        (EliminationVariable::Z, 2)
    } else {
        (EliminationVariable::S, 1)
    };
    let mut coefficients = vec![0.0; ((hi - lo) / step + 1) as usize];
    for (e, c) in poly.terms() {
        coefficients[((e - lo) / step) as usize] = c as f64;
    }
    EliminationPolynomial {
        variable,
        coefficients,
    }
}
