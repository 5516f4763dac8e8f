//! Dilogarithm potential of a hypergeometric-type sum, its logarithmic
//! gradient, and the branch-corrected critical value.
//!
//! For a sum shape with signs `ε_a`, linear forms `l_a` and quadratic form
//! `Σ r_ij n_i n_j`, the potential is
//!
//! ```text
//! Ṽ(z) = -Σ_a ε_a (Li₂(x_a) - π²/6) + Σ_{i≤j} r_ij Log z_i Log z_j,
//! x_a  = Π_i z_i^{l_{a,i}}
//! ```
//!
//! where only the degree-one part of each `l_a` enters `x_a`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::specfun::{dilog_unchecked, principal_log};

const PI2_OVER_6: f64 = PI * PI / 6.0;
const TWO_PI_I: Complex64 = Complex64::new(0.0, 2.0 * PI);

/// Maximum distance of a raw correction from the lattice before the point
/// is rejected as not critical on any branch.
pub const BRANCH_LATTICE_TOLERANCE: f64 = 1e-4;

/// Integer affine form `Σ_i coefficients[i]·n_i + constant`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    pub coefficients: Vec<i64>,
    pub constant: i64,
}

impl LinearForm {
    pub fn new(coefficients: Vec<i64>, constant: i64) -> Self {
        Self {
            coefficients,
            constant,
        }
    }
}

/// Shape data of a sum `Σ_n Π_a (q)_{l_a(n)}^{ε_a} q^{Q(n) + L(n)}`.
///
/// Indices into `quadratic` are zero-based with `i ≤ j`.
#[derive(Debug, Clone, PartialEq)]
pub struct HypersumSpec {
    pub k: usize,
    pub epsilon: Vec<i8>,
    pub linear_forms: Vec<LinearForm>,
    /// Coefficients of the linear exponent `L`; kept for completeness, it
    /// does not enter the potential.
    pub linear_term: Vec<Rational64>,
    pub quadratic: Vec<(usize, usize, Rational64)>,
}

impl HypersumSpec {
    pub fn empty(k: usize) -> Self {
        Self {
            k,
            epsilon: Vec::new(),
            linear_forms: Vec::new(),
            linear_term: vec![Rational64::from_integer(0); k],
            quadratic: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.epsilon.len() != self.linear_forms.len() {
            return Err(Error::InvalidSpec(format!(
                "{} signs for {} linear forms",
                self.epsilon.len(),
                self.linear_forms.len()
            )));
        }
        if let Some(e) = self.epsilon.iter().find(|e| e.abs() != 1) {
            return Err(Error::InvalidSpec(format!("sign {e} is not ±1")));
        }
        if let Some(l) = self.linear_forms.iter().find(|l| l.coefficients.len() != self.k) {
            return Err(Error::InvalidSpec(format!(
                "linear form has {} coefficients, expected {}",
                l.coefficients.len(),
                self.k
            )));
        }
        if self.linear_term.len() != self.k {
            return Err(Error::InvalidSpec("linear term length differs from k".into()));
        }
        for &(i, j, _) in &self.quadratic {
            if i > j || j >= self.k {
                return Err(Error::InvalidSpec(format!(
                    "quadratic index ({i}, {j}) outside i ≤ j < {}",
                    self.k
                )));
            }
        }
        Ok(())
    }

    /// `r_ij` with duplicates summed; zero when absent.
    pub fn r(&self, i: usize, j: usize) -> Rational64 {
        let (i, j) = (i.min(j), i.max(j));
        self.quadratic
            .iter()
            .filter(|&&(a, b, _)| a == i && b == j)
            .map(|&(_, _, r)| r)
            .sum()
    }
}

/// Sum shape of the double sum for `p`-surgery on the figure-eight knot,
/// with `n₁ = n`, `n₂ = m`.
pub fn fig8_spec(p: i64) -> HypersumSpec {
    let r = |n: i64, d: i64| Rational64::new(n, d);
    HypersumSpec {
        k: 2,
        epsilon: vec![1, -1, 1, -1],
        linear_forms: vec![
            LinearForm::new(vec![1, 0], 0),
            LinearForm::new(vec![1, 0], -1),
            LinearForm::new(vec![1, 1], 0),
            LinearForm::new(vec![1, -1], -1),
        ],
        linear_term: vec![r(-1, 2), r(0, 1)],
        quadratic: vec![(0, 0, r(p, 4)), (0, 1, r(-1, 1)), (1, 1, r(0, 1))],
    }
}

#[derive(Debug, Clone, PartialEq)]
struct DilogTerm {
    weight: i64,
    exponents: Vec<i64>,
}

/// Evaluable potential `Ṽ` for a [`HypersumSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialFunction {
    spec: HypersumSpec,
    terms: Vec<DilogTerm>,
    r: Vec<Vec<f64>>,
    lattice_denominator: i64,
}

/// Correction vector `c` and the corrected value
/// `V = Ṽ + 2πi Σ_j c_j Log ζ_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchCorrection {
    pub c: Vec<Rational64>,
    pub value: Complex64,
    pub uncorrected: Complex64,
    /// `|−D_i/(2πi) − c_i|` per coordinate.
    pub rounding_residuals: Vec<f64>,
}

/// Potential of `spec`. Dilogarithm terms with the same degree-one part are
/// merged, so opposite signs cancel symbolically.
pub fn build_potential(spec: &HypersumSpec) -> Result<PotentialFunction> {
    spec.validate()?;
    let mut merged: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for (eps, form) in spec.epsilon.iter().zip(&spec.linear_forms) {
        *merged.entry(form.coefficients.clone()).or_default() += i64::from(*eps);
    }
    let terms = merged
        .into_iter()
        .filter(|(exp, w)| *w != 0 && exp.iter().any(|&e| e != 0))
        .map(|(exponents, weight)| DilogTerm { weight, exponents })
        .collect();

    let mut r = vec![vec![0.0; spec.k]; spec.k];
    let mut lattice_denominator = 1i64;
    for i in 0..spec.k {
        for j in i..spec.k {
            let rij = spec.r(i, j);
            r[i][j] = *rij.numer() as f64 / *rij.denom() as f64;
            // the gradient picks up 2·r_ii·Log z_i and r_ij·Log z_j
            let step = if i == j { rij * 2 } else { rij };
            lattice_denominator = lattice_denominator.lcm(step.denom());
        }
    }
    Ok(PotentialFunction {
        spec: spec.clone(),
        terms,
        r,
        lattice_denominator,
    })
}

/// Potential for `p`-surgery on the figure-eight knot:
/// `Ṽ(z, w) = -Li₂(zw) + Li₂(z/w) + (p/4) Log²z - Log z Log w`.
pub fn fig8_potential(p: i64) -> PotentialFunction {
    build_potential(&fig8_spec(p)).expect("figure-eight spec is valid")
}

impl PotentialFunction {
    pub fn spec(&self) -> &HypersumSpec {
        &self.spec
    }

    pub fn dimension(&self) -> usize {
        self.spec.k
    }

    /// Spacing of the correction lattice is `1 / lattice_denominator()`.
    pub fn lattice_denominator(&self) -> i64 {
        self.lattice_denominator
    }

    /// Number of dilogarithm terms left after merging.
    pub fn dilog_term_count(&self) -> usize {
        self.terms.len()
    }

    fn check_point(&self, point: &[Complex64]) -> Result<Vec<Complex64>> {
        if point.len() != self.spec.k {
            return Err(Error::Domain(format!(
                "point has {} coordinates, expected {}",
                point.len(),
                self.spec.k
            )));
        }
        if point.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite("potential"));
        }
        if let Some(i) = point.iter().position(|z| z.norm_sqr() == 0.0) {
            return Err(Error::SingularPoint(format!("coordinate {} is zero", i + 1)));
        }
        Ok(point.iter().map(|&z| principal_log(z)).collect())
    }

    fn monomial(term: &DilogTerm, point: &[Complex64]) -> Complex64 {
        term.exponents
            .iter()
            .zip(point)
            .fold(Complex64::new(1.0, 0.0), |acc, (&e, &z)| acc * z.powi(e as i32))
    }

    /// `x_a` for each merged dilogarithm term, in exponent order.
    pub fn arguments(&self, point: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_point(point)?;
        Ok(self.terms.iter().map(|t| Self::monomial(t, point)).collect())
    }

    fn quadratic(&self, logs: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.spec.k {
            for j in i..self.spec.k {
                if self.r[i][j] != 0.0 {
                    acc += self.r[i][j] * logs[i] * logs[j];
                }
            }
        }
        acc
    }
}

/// `Ṽ` at `point` under the principal-log convention. An argument `x_a = 1`
/// is regular (`Li₂(1) = π²/6`), so `Ṽ(1, …, 1) = 0`.
pub fn eval_potential(pf: &PotentialFunction, point: &[Complex64]) -> Result<Complex64> {
    let logs = pf.check_point(point)?;
    let mut acc = pf.quadratic(&logs);
    for term in &pf.terms {
        let x = PotentialFunction::monomial(term, point);
        acc -= term.weight as f64 * (dilog_unchecked(x) - PI2_OVER_6);
    }
    finite(acc)
}

/// Logarithmic gradient `D_i = z_i ∂Ṽ/∂z_i`, each a fixed sum of principal
/// logarithms:
///
/// ```text
/// D_i = Σ_a w_a l_{a,i} Log(1 - x_a) + 2 r_ii Log z_i + Σ_{j≠i} r_ij Log z_j
/// ```
///
/// For the figure-eight potential this is
/// `D_z = (p/2) Log z - Log w + Log(1-zw) - Log(1-z/w)` and
/// `D_w = Log(1-zw) + Log(1-z/w) - Log z`.
pub fn eval_log_gradient(pf: &PotentialFunction, point: &[Complex64]) -> Result<Vec<Complex64>> {
    let logs = pf.check_point(point)?;
    let k = pf.spec.k;
    let mut grad = vec![Complex64::new(0.0, 0.0); k];
    for term in &pf.terms {
        let x = PotentialFunction::monomial(term, point);
        let one_minus = Complex64::new(1.0, 0.0) - x;
        if one_minus.norm_sqr() == 0.0 {
            return Err(Error::SingularPoint(format!(
                "dilogarithm argument equals 1 at exponents {:?}",
                term.exponents
            )));
        }
        let l = principal_log(one_minus) * term.weight as f64;
        for (g, &e) in grad.iter_mut().zip(&term.exponents) {
            if e != 0 {
                *g += l * e as f64;
            }
        }
    }
    for i in 0..k {
        for j in i..k {
            let r = pf.r[i][j];
            if r == 0.0 {
                continue;
            }
            if i == j {
                grad[i] += 2.0 * r * logs[i];
            } else {
                grad[i] += r * logs[j];
                grad[j] += r * logs[i];
            }
        }
    }
    grad.into_iter().map(finite).collect()
}

/// Rounds `c_i = −D_i/(2πi)` to the correction lattice and returns the
/// corrected value `V = Ṽ + 2πi Σ c_i Log ζ_i`.
pub fn branch_correct(pf: &PotentialFunction, point: &[Complex64]) -> Result<BranchCorrection> {
    let grad = eval_log_gradient(pf, point)?;
    let uncorrected = eval_potential(pf, point)?;
    let den = pf.lattice_denominator;
    let mut c = Vec::with_capacity(grad.len());
    let mut rounding_residuals = Vec::with_capacity(grad.len());
    let mut value = uncorrected;
    for (index, (d, z)) in grad.iter().zip(point).enumerate() {
        let raw = -d / TWO_PI_I;
        let num = (raw.re * den as f64).round();
        let snapped = num / den as f64;
        let distance = (raw - snapped).norm();
        if !(distance < BRANCH_LATTICE_TOLERANCE) {
            return Err(Error::BranchInconsistency {
                index,
                raw: format!("{raw}"),
                distance,
            });
        }
        let ci = Rational64::new(num as i64, den);
        if num != 0.0 {
            value += TWO_PI_I * snapped * principal_log(*z);
        }
        c.push(ci);
        rounding_residuals.push(distance);
    }
    Ok(BranchCorrection {
        c,
        value,
        uncorrected,
        rounding_residuals,
    })
}

fn finite(z: Complex64) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite("potential"))
    }
}
