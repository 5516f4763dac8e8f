//! Damped Newton iteration on the figure-eight system in `(s, w)`, `z = s²`:
//!
//! ```text
//! F1 = s^p (1 - s²w) - (w - s²)
//! F2 = (1 - s²w)(w - s²) - s²w
//! ```
//!
//! Each row is scaled by the magnitude of its largest term so that the merit
//! function stays meaningful far from the unit circle.

use num_complex::Complex64;

const MAX_HALVINGS: usize = 20;

#[derive(Debug, Clone, Copy)]
struct Eval {
    f: [Complex64; 2],
    scale: [f64; 2],
}

impl Eval {
    fn merit(&self) -> f64 {
        (self.f[0].norm() / self.scale[0]).max(self.f[1].norm() / self.scale[1])
    }
}

fn evaluate(p: i32, s: Complex64, w: Complex64) -> Eval {
    let s2 = s * s;
    let sp = s.powi(p);
    let u = 1.0 - s2 * w;
    let v = w - s2;
    let t1 = sp * u;
    let t2 = u * v;
    let t3 = s2 * w;
    Eval {
        f: [t1 - v, t2 - t3],
        scale: [
            1f64.max(t1.norm()).max(v.norm()),
            1f64.max(t2.norm()).max(t3.norm()),
        ],
    }
}

fn jacobian(p: i32, s: Complex64, w: Complex64) -> [[Complex64; 2]; 2] {
    let s2 = s * s;
    let sp = s.powi(p);
    let spm1 = s.powi(p - 1);
    let u = 1.0 - s2 * w;
    let v = w - s2;
    [
        [
            f64::from(p) * spm1 * u - 2.0 * sp * s * w + 2.0 * s,
            -sp * s2 - 1.0,
        ],
        [
            -2.0 * s * w * v - 2.0 * s * u - 2.0 * s * w,
            -s2 * v + u - s2,
        ],
    ]
}

/// Result of a Newton run.
#[derive(Debug, Clone, Copy)]
pub struct NewtonOutcome {
    pub s: Complex64,
    pub w: Complex64,
    pub merit: f64,
    pub iterations: usize,
}

/// Damped Newton from `(s, w)`; returns the final iterate whatever its
/// merit, or `None` on a singular Jacobian or a non-finite iterate.
pub fn newton_fig8(
    p: i32,
    mut s: Complex64,
    mut w: Complex64,
    tolerance: f64,
    max_iterations: usize,
) -> Option<NewtonOutcome> {
    let mut current = evaluate(p, s, w);
    let mut iterations = 0;
    while iterations < max_iterations {
        let merit = current.merit();
        if !merit.is_finite() {
            return None;
        }
        if merit == 0.0 {
            break;
        }
        iterations += 1;
        let j = jacobian(p, s, w);
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.norm_sqr() == 0.0 || !det.norm_sqr().is_finite() {
            return None;
        }
        let [f1, f2] = current.f;
        let ds = (f1 * j[1][1] - f2 * j[0][1]) / det;
        let dw = (j[0][0] * f2 - j[1][0] * f1) / det;

        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..=MAX_HALVINGS {
            let (ns, nw) = (s - t * ds, w - t * dw);
            let next = evaluate(p, ns, nw);
            if next.merit() < merit {
                accepted = Some((ns, nw, next));
                break;
            }
            t *= 0.5;
        }
        let Some((ns, nw, next)) = accepted else {
            break;
        };
        let step = (ns - s).norm().max((nw - w).norm());
        s = ns;
        w = nw;
        current = next;
        if current.merit() < tolerance
            && step <= 1e-15 * (1.0 + s.norm().max(w.norm()))
        {
            break;
        }
    }
    if !(s.re.is_finite() && s.im.is_finite() && w.re.is_finite() && w.im.is_finite()) {
        return None;
    }
    Some(NewtonOutcome {
        s,
        w,
        merit: current.merit(),
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobian_matches_finite_differences() {
        for p in [-2, 0, 3, 6, 11] {
            let (s, w) = (Complex64::new(0.6, -0.3), Complex64::new(0.2, 0.9));
            let j = jacobian(p, s, w);
            let h = 1e-7;
            let ds = evaluate(p, s + h, w).f;
            let ds_m = evaluate(p, s - h, w).f;
            let dw = evaluate(p, s, w + h).f;
            let dw_m = evaluate(p, s, w - h).f;
            for r in 0..2 {
                let fs = (ds[r] - ds_m[r]) / (2.0 * h);
                let fw = (dw[r] - dw_m[r]) / (2.0 * h);
                assert!((fs - j[r][0]).norm() < 1e-6, "p={p} row {r}");
                assert!((fw - j[r][1]).norm() < 1e-6, "p={p} row {r}");
            }
        }
    }

    #[test]
    fn converges_to_p0_solution() {
        // z = (3-√5)/2, w = 1
        let s0 = ((3.0 - 5f64.sqrt()) / 2.0).sqrt();
        let out = newton_fig8(0, Complex64::new(s0 + 0.01, 0.02), Complex64::new(0.98, -0.01), 1e-13, 60)
            .unwrap();
        assert!(out.merit < 1e-13);
        assert!((out.w - 1.0).norm() < 1e-12);
        assert!((out.s * out.s - s0 * s0).norm() < 1e-12);
    }
}
