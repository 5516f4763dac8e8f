//! Critical points of the figure-eight potential for `p`-surgery.
//!
//! The critical-point equations are
//!
//! ```text
//! z^{p/2} (1 - zw) = w - z,      (1 - zw)(w - z) = zw.
//! ```
//!
//! Solutions are collected from two sources: the roots of the elimination
//! polynomial in `s = z^{1/2}` (or in `z` for even `p`), and damped Newton
//! runs from a polar grid of starts. The second path recovers solutions lost
//! when denominators are cleared, such as `z = -1` at `p = 4`.

mod eigen;
mod newton;
mod polynomial;

use std::cmp::Ordering;
use std::fmt;
use std::f64::consts::PI;

use num_complex::Complex64;

pub use eigen::polynomial_roots;
pub use newton::{newton_fig8, NewtonOutcome};
pub use polynomial::{
    fig8_cleared_polynomial, fig8_elimination_polynomial, EliminationPolynomial,
    EliminationVariable, LaurentPoly,
};

use crate::error::{Error, Result};
use crate::potential::{branch_correct, fig8_potential, BranchCorrection};
use crate::quantum_invariants::SurgeryCoefficient;
use crate::specfun::principal_log;

/// Largest scaled residual accepted for a returned point.
pub const ACCEPT_RESIDUAL: f64 = 1e-10;
/// Relative size below which a real or imaginary part is set to exactly 0.
pub const SNAP_TOLERANCE: f64 = 1e-13;
/// Tolerance for the unit-modulus and real labels.
pub const LABEL_TOLERANCE: f64 = 1e-9;
/// Minimal `Im V` for a geometric candidate.
pub const GEOMETRIC_MIN_IMAGINARY: f64 = 1e-8;
/// Largest supported `|p|`.
pub const MAX_FRAMING: i64 = 100_000;

const MIN_COORDINATE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub newton_tolerance: f64,
    pub max_iterations: usize,
    pub dedup_distance: f64,
    pub grid_density: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            newton_tolerance: 1e-13,
            max_iterations: 60,
            dedup_distance: 1e-9,
            grid_density: 24,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        let ok = self.newton_tolerance > 0.0
            && self.dedup_distance > 0.0
            && self.max_iterations > 0
            && self.grid_density > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::Domain("solver options must all be positive".into()))
        }
    }
}

/// Which determination of `z^{p/2}` satisfies the first equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sheet {
    /// `exp((p/2) Log z)`.
    Principal,
    /// `-exp((p/2) Log z)`, possible only for odd `p`.
    Opposite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    GeometricCandidate,
    Conjugate,
    UnitModulus,
    Real,
    Other,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::GeometricCandidate => "geometric-candidate",
            Self::Conjugate => "conjugate",
            Self::UnitModulus => "unit-modulus",
            Self::Real => "real",
            Self::Other => "other",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which solving paths produced a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Origin {
    pub elimination: bool,
    pub newton: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SaddlePoint {
    pub zeta: Complex64,
    pub omega: Complex64,
    pub residual: f64,
    pub sheet: Sheet,
    pub correction: BranchCorrection,
    pub label: Label,
    pub origin: Origin,
}

impl SaddlePoint {
    /// Corrected optimistic-limit value `V`.
    pub fn value(&self) -> Complex64 {
        self.correction.value
    }
}

/// Solutions together with what was discarded on the way.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub points: Vec<SaddlePoint>,
    /// One line per elimination root or accepted candidate that was dropped.
    pub diagnostics: Vec<String>,
    /// Elimination roots skipped because `1 + z^{p/2}·z` vanishes there.
    pub degenerate_roots: usize,
    pub grid_starts: usize,
    pub grid_failures: usize,
}

fn scaled_defect(lhs: Complex64, rhs: Complex64) -> f64 {
    (lhs - rhs).norm() / 1f64.max(lhs.norm()).max(rhs.norm())
}

fn defects(zp: Complex64, z: Complex64, w: Complex64) -> f64 {
    let u = 1.0 - z * w;
    let v = w - z;
    scaled_defect(zp * u, v).max(scaled_defect(u * v, z * w))
}

/// Residual of the critical-point equations, with `z^{p/2} = exp((p/2) Log z)`
/// and, for odd `p`, also its negative. Each defect is divided by
/// `max(1, |lhs|, |rhs|)`; returns the smaller sheet-wise residual and the
/// sheet attaining it.
pub fn residual_fig8_sheet(p: i64, zeta: Complex64, omega: Complex64) -> (f64, Sheet) {
    if zeta.norm_sqr() == 0.0 {
        return (f64::INFINITY, Sheet::Principal);
    }
    let zp = (p as f64 / 2.0 * principal_log(zeta)).exp();
    let principal = defects(zp, zeta, omega);
    if p % 2 != 0 {
        let opposite = defects(-zp, zeta, omega);
        if opposite < principal {
            return (opposite, Sheet::Opposite);
        }
    }
    (principal, Sheet::Principal)
}

pub fn residual_fig8(p: i64, zeta: Complex64, omega: Complex64) -> f64 {
    residual_fig8_sheet(p, zeta, omega).0
}

fn snap(z: Complex64) -> Complex64 {
    let mut out = z;
    if z.im.abs() <= SNAP_TOLERANCE * 1f64.max(z.re.abs()) {
        out.im = 0.0;
    }
    if z.re.abs() <= SNAP_TOLERANCE * 1f64.max(z.im.abs()) {
        out.re = 0.0;
    }
    out
}

fn distance(a: (Complex64, Complex64), b: (Complex64, Complex64)) -> f64 {
    (a.0 - b.0).norm().max((a.1 - b.1).norm())
}

/// `{(ζ,ω), (ζ̄,ω̄), (ζ⁻¹,ω), (ζ̄⁻¹,ω̄)}` with near-duplicates merged.
pub fn symmetry_orbit(
    zeta: Complex64,
    omega: Complex64,
    dedup_distance: f64,
) -> Vec<(Complex64, Complex64)> {
    let candidates = [
        (zeta, omega),
        (zeta.conj(), omega.conj()),
        (zeta.inv(), omega),
        (zeta.conj().inv(), omega.conj()),
    ];
    let mut out: Vec<(Complex64, Complex64)> = Vec::with_capacity(4);
    for c in candidates {
        if out.iter().all(|&o| distance(o, c) >= dedup_distance) {
            out.push(c);
        }
    }
    out
}

fn lexicographic(a: &SaddlePoint, b: &SaddlePoint) -> Ordering {
    a.zeta
        .re
        .total_cmp(&b.zeta.re)
        .then(a.zeta.im.total_cmp(&b.zeta.im))
        .then(a.omega.re.total_cmp(&b.omega.re))
        .then(a.omega.im.total_cmp(&b.omega.im))
}

/// Whether a point may be the geometric candidate. `ζ = 1` is excluded: for
/// odd `p` it solves the system on the opposite sheet with the
/// `p`-independent value `2i·Cl₂(π/3)` of the knot complement itself.
fn eligible(point: &SaddlePoint) -> bool {
    (point.zeta - 1.0).norm() > LABEL_TOLERANCE
}

/// Index of the eligible point with the largest positive `Im V`; values
/// within `1e-9` of the maximum tie and are resolved by smallest
/// `(Re ζ, Im ζ)`.
fn geometric_index(points: &[SaddlePoint]) -> Option<usize> {
    let best = points
        .iter()
        .filter(|p| eligible(p))
        .map(|p| p.value().im)
        .filter(|&v| v > GEOMETRIC_MIN_IMAGINARY)
        .fold(f64::NEG_INFINITY, f64::max);
    if !best.is_finite() {
        return None;
    }
    points
        .iter()
        .enumerate()
        .filter(|(_, p)| eligible(p) && p.value().im >= best - 1e-9)
        .min_by(|(_, a), (_, b)| lexicographic(a, b))
        .map(|(i, _)| i)
}

/// Fills labels and sorts by label, then by `(Re ζ, Im ζ, Re ω, Im ω)`.
///
/// The geometric candidate maximizes `Im V > 0`. Other members of its
/// symmetry orbit are `conjugate`; remaining points are `unit-modulus`,
/// `real` or `other`, in that order of precedence.
pub fn classify(mut points: Vec<SaddlePoint>) -> Vec<SaddlePoint> {
    let geo = geometric_index(&points);
    let orbit = geo
        .map(|i| symmetry_orbit(points[i].zeta, points[i].omega, LABEL_TOLERANCE))
        .unwrap_or_default();
    for (i, point) in points.iter_mut().enumerate() {
        let coords = (point.zeta, point.omega);
        point.label = if Some(i) == geo {
            Label::GeometricCandidate
        } else if (point.zeta.norm() - 1.0).abs() < LABEL_TOLERANCE {
            Label::UnitModulus
        } else if point.zeta.im.abs() < LABEL_TOLERANCE && point.omega.im.abs() < LABEL_TOLERANCE {
            Label::Real
        } else if orbit
            .iter()
            .any(|&o| distance(o, coords) < 1e3 * LABEL_TOLERANCE)
        {
            Label::Conjugate
        } else {
            Label::Other
        };
    }
    points.sort_by(|a, b| a.label.cmp(&b.label).then_with(|| lexicographic(a, b)));
    points
}

/// The geometric candidate of a classified list, if any.
pub fn geometric_candidate(points: &[SaddlePoint]) -> Option<&SaddlePoint> {
    points.iter().find(|p| p.label == Label::GeometricCandidate)
}

struct Candidate {
    z: Complex64,
    w: Complex64,
    origin: Origin,
}

struct Collector {
    p: i64,
    dedup: f64,
    found: Vec<Candidate>,
}

impl Collector {
    /// Returns the residual when rejected.
    fn offer(&mut self, s: Complex64, w: Complex64, from_elimination: bool) -> std::result::Result<(), f64> {
        if s.norm() < MIN_COORDINATE || w.norm() < MIN_COORDINATE {
            return Err(f64::NAN);
        }
        let z = snap(s * s);
        let w = snap(w);
        let residual = residual_fig8(self.p, z, w);
        if !(residual < ACCEPT_RESIDUAL) {
            return Err(residual);
        }
        let mark = |o: &mut Origin| {
            if from_elimination {
                o.elimination = true;
            } else {
                o.newton = true;
            }
        };
        if let Some(existing) = self
            .found
            .iter_mut()
            .find(|c| distance((c.z, c.w), (z, w)) < self.dedup)
        {
            mark(&mut existing.origin);
        } else {
            let mut origin = Origin::default();
            mark(&mut origin);
            self.found.push(Candidate { z, w, origin });
        }
        Ok(())
    }
}

/// Polar grid of `density²` starting values for `s`, radii geometric in
/// `[1/4, 4]`, angles offset by half a step.
fn grid_starts(density: usize) -> impl Iterator<Item = Complex64> {
    let g = density as f64;
    (0..density).flat_map(move |i| {
        let r = 0.25 * 16f64.powf((i as f64 + 0.5) / g);
        (0..density).map(move |j| Complex64::from_polar(r, 2.0 * PI * (j as f64 + 0.5) / g))
    })
}

/// Both roots `w` of `z w² - (1 - z + z²) w + z = 0`.
fn quadratic_w(z: Complex64) -> [Complex64; 2] {
    let c = 1.0 - z + z * z;
    let disc = (c * c - 4.0 * z * z).sqrt();
    [(c + disc) / (2.0 * z), (c - disc) / (2.0 * z)]
}

/// All critical points for `p`, classified and sorted.
pub fn solve_fig8(p: impl Into<SurgeryCoefficient>, opts: &SolverOptions) -> Result<Vec<SaddlePoint>> {
    Ok(solve_fig8_report(p, opts)?.points)
}

pub fn solve_fig8_report(
    p: impl Into<SurgeryCoefficient>,
    opts: &SolverOptions,
) -> Result<SolveReport> {
    opts.validate()?;
    let p = p.into().finite()?;
    if p.abs() > MAX_FRAMING {
        return Err(Error::Domain(format!("|p| = {} exceeds {MAX_FRAMING}", p.abs())));
    }
    let pi = p as i32;
    let mut collector = Collector {
        p,
        dedup: opts.dedup_distance,
        found: Vec::new(),
    };
    let mut diagnostics = Vec::new();
    let mut degenerate_roots = 0;

    let elim = fig8_elimination_polynomial(p);
    match polynomial_roots(&elim.coefficients) {
        Ok(roots) => {
            for root in roots {
                let s = match elim.variable {
                    EliminationVariable::Z => root.sqrt(),
                    EliminationVariable::S => root,
                };
                let z = s * s;
                let sp = s.powi(pi);
                let a = z + sp;
                let b = 1.0 + sp * z;
                if b.norm() <= 1e-6 * (1.0 + a.norm()) {
                    degenerate_roots += 1;
                    continue;
                }
                let outcome = newton_fig8(pi, s, a / b, opts.newton_tolerance, opts.max_iterations);
                let rejected = match outcome {
                    Some(o) => collector.offer(o.s, o.w, true).err(),
                    None => Some(f64::NAN),
                };
                if let Some(r) = rejected {
                    if s.norm() >= MIN_COORDINATE && (a / b).norm() >= MIN_COORDINATE {
                        diagnostics.push(format!(
                            "elimination root s = {s} dropped after polishing (residual {r:.3e})"
                        ));
                    }
                }
            }
        }
        Err(e) => diagnostics.push(format!("elimination root finder failed: {e}")),
    }

    let mut grid_count = 0;
    let mut grid_failures = 0;
    for s in grid_starts(opts.grid_density) {
        for w in quadratic_w(s * s) {
            grid_count += 1;
            let accepted = newton_fig8(pi, s, w, opts.newton_tolerance, opts.max_iterations)
                .is_some_and(|o| collector.offer(o.s, o.w, false).is_ok());
            if !accepted {
                grid_failures += 1;
            }
        }
    }

    let pf = fig8_potential(p);
    let mut points = Vec::with_capacity(collector.found.len());
    for cand in collector.found {
        let (residual, sheet) = residual_fig8_sheet(p, cand.z, cand.w);
        match branch_correct(&pf, &[cand.z, cand.w]) {
            Ok(correction) => points.push(SaddlePoint {
                zeta: cand.z,
                omega: cand.w,
                residual,
                sheet,
                correction,
                label: Label::Other,
                origin: cand.origin,
            }),
            Err(e) => diagnostics.push(format!(
                "point ({}, {}) dropped: {e}",
                cand.z, cand.w
            )),
        }
    }
    Ok(SolveReport {
        points: classify(points),
        diagnostics,
        degenerate_roots,
        grid_starts: grid_count,
        grid_failures,
    })
}
