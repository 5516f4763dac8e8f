//! Command-line front end. [`run`] parses arguments and returns the exit
//! status with the text destined for stdout and stderr, so it can be driven
//! from tests without spawning a process.

mod output;

use std::ffi::OsString;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;

pub use output::{emit_csv, format_half_integer, format_real, Cell};

use crate::error::{Error, Result};
use crate::geometry_reference::{
    builtin_references, compare, limit_infinity, load_references, lookup, FIGURE_EIGHT_VOLUME,
};
use crate::quantum_invariants::{
    colored_jones_fig8, growth_profile, relative_discrepancy, wrt_direct, wrt_double_sum,
    RootOfUnityContext, SurgeryCoefficient,
};
use crate::saddle_solver::{geometric_candidate, solve_fig8, SaddlePoint, SolverOptions};
use crate::specfun::{bernoulli2_periodic, clausen2, dilog};

/// Environment variable capping the worker threads of `sweep` and `growth`.
pub const THREADS_ENV: &str = "OLIM_WRT_THREADS";

pub const POINT_SCHEMA: [&str; 11] = [
    "p", "re_zeta", "im_zeta", "re_omega", "im_omega", "c1", "c2", "re_V", "im_V", "residual",
    "label",
];

pub const OLIM_SCHEMA: [&str; 12] = [
    "p", "re_zeta", "im_zeta", "re_omega", "im_omega", "re_V", "im_V", "re_target", "im_target",
    "abs_error", "matched", "label",
];

#[derive(Debug, Parser)]
#[command(
    name = "olim-wrt",
    version,
    about = "WRT invariants of surgeries on the figure-eight knot and their optimistic limits"
)]
struct Cli {
    /// Write the CSV to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Form {
    Direct,
    Double,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpecialFn {
    Li2,
    Cl2,
    B2,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Colored Jones polynomial J_n(4_1; q) at q = exp(2πi/N).
    Jones {
        #[arg(long = "N")]
        big_n: u32,
        #[arg(long)]
        n: i64,
    },
    /// WRT invariant τ_N(M_p).
    Wrt {
        #[arg(long = "N")]
        big_n: u32,
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long, value_enum, default_value = "direct")]
        form: Form,
    },
    /// All critical points of the potential for p-surgery.
    Saddle {
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
    },
    /// Optimistic limits compared with CS + i·Vol.
    Olim {
        #[arg(long, allow_negative_numbers = true)]
        p: SurgeryCoefficient,
        /// Reference CSV with header p,vol,cs (cs in units of 2π²).
        #[arg(long, value_name = "FILE")]
        refs: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Geometric candidate for p = start, start+step, ...
    Sweep {
        #[arg(long, default_value_t = 6, allow_negative_numbers = true)]
        start: i64,
        #[arg(long, default_value_t = 4, allow_negative_numbers = true)]
        step: i64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// log|τ_N(M_p)| over a list of N.
    Growth {
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long = "N-list", value_delimiter = ',', num_args = 1..)]
        n_list: Vec<u32>,
    },
    /// Li₂, Cl₂ or the periodic Bernoulli polynomial B̄₂ at one argument.
    Special {
        #[arg(long = "fn", value_enum)]
        function: SpecialFn,
        #[arg(long, allow_hyphen_values = true)]
        arg: String,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A command failure, carrying any CSV already produced.
struct Failure {
    partial: String,
    error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Self {
            partial: String::new(),
            error,
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };

    let (code, text, stderr) = match execute(&cli.command) {
        Ok(text) => (0, text, String::new()),
        Err(Failure { partial, error }) => {
            let mut text = partial;
            if !text.is_empty() {
                text.push_str(&format!("# error: {error}\r\n"));
            }
            (1, text, format!("error: {error}\n"))
        }
    };

    match &cli.output {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr,
            },
            Err(e) => Outcome {
                code: 1,
                stdout: String::new(),
                stderr: format!("{stderr}error: writing {}: {e}\n", path.display()),
            },
        },
        None => Outcome {
            code,
            stdout: text,
            stderr,
        },
    }
}

fn execute(command: &Command) -> std::result::Result<String, Failure> {
    match *command {
        Command::Jones { big_n, n } => {
            let ctx = RootOfUnityContext::new(big_n)?;
            let j = colored_jones_fig8(&ctx, n)?;
            Ok(emit_csv(
                &["N", "n", "re_J", "im_J"],
                &[vec![big_n.into(), n.into(), j.re.into(), j.im.into()]],
            )?)
        }
        Command::Wrt { big_n, p, form } => wrt(big_n, p, form),
        Command::Saddle { p } => {
            let points = solve_fig8(p, &SolverOptions::default())?;
            let rows: Vec<_> = points.iter().map(|pt| point_row(p, pt)).collect();
            Ok(emit_csv(&POINT_SCHEMA, &rows)?)
        }
        Command::Olim { p, ref refs, tol } => olim(p, refs.as_deref(), tol),
        Command::Sweep { start, step, count } => sweep(start, step, count),
        Command::Growth { p, ref n_list } => {
            if p <= 0 {
                return Err(Error::UnsupportedFraming(p).into());
            }
            if let Some(&n) = n_list.iter().find(|&&n| n < 3) {
                return Err(Error::Domain(format!("N must be at least 3, got {n}")).into());
            }
            let rows = with_pool(|| growth_profile(p, n_list))??;
            let rows: Vec<_> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.into(),
                        r.log_abs_tau.into(),
                        r.log_abs_tau_over_n.into(),
                        r.log_abs_tau_over_log_n.into(),
                    ]
                })
                .collect();
            Ok(emit_csv(
                &["N", "log_abs_tau", "log_abs_tau_over_N", "log_abs_tau_over_log_N"],
                &rows,
            )?)
        }
        Command::Special { function, ref arg } => special(function, arg),
    }
}

fn wrt(big_n: u32, p: i64, form: Form) -> std::result::Result<String, Failure> {
    let ctx = RootOfUnityContext::new(big_n)?;
    match form {
        Form::Both => {
            let a = wrt_direct(&ctx, p)?;
            let b = wrt_double_sum(&ctx, p)?;
            Ok(emit_csv(
                &["N", "p", "re_direct", "im_direct", "re_double", "im_double", "rel_discrepancy"],
                &[vec![
                    big_n.into(),
                    p.into(),
                    a.re.into(),
                    a.im.into(),
                    b.re.into(),
                    b.im.into(),
                    relative_discrepancy(a, b).into(),
                ]],
            )?)
        }
        Form::Direct | Form::Double => {
            let (tau, name) = if form == Form::Direct {
                (wrt_direct(&ctx, p)?, "direct")
            } else {
                (wrt_double_sum(&ctx, p)?, "double")
            };
            Ok(emit_csv(
                &["N", "p", "form", "re_tau", "im_tau"],
                &[vec![big_n.into(), p.into(), name.into(), tau.re.into(), tau.im.into()]],
            )?)
        }
    }
}

fn point_row(p: i64, pt: &SaddlePoint) -> Vec<Cell> {
    let c = &pt.correction.c;
    let ratio = |i: usize| *c[i].numer() as f64 / *c[i].denom() as f64;
    let v = pt.value();
    vec![
        p.into(),
        pt.zeta.re.into(),
        pt.zeta.im.into(),
        pt.omega.re.into(),
        pt.omega.im.into(),
        format_half_integer(ratio(0)).into(),
        format_half_integer(ratio(1)).into(),
        v.re.into(),
        v.im.into(),
        pt.residual.into(),
        pt.label.as_str().into(),
    ]
}

fn olim(
    p: SurgeryCoefficient,
    refs: Option<&std::path::Path>,
    tol: f64,
) -> std::result::Result<String, Failure> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")).into());
    }
    let p = match p {
        SurgeryCoefficient::Infinity => {
            let v = limit_infinity();
            let target = Complex64::new(0.0, FIGURE_EIGHT_VOLUME);
            let err = (v - target).norm();
            let omega = Complex64::from_polar(1.0, -std::f64::consts::PI / 3.0);
            let row: Vec<Cell> = vec![
                "inf".into(),
                1.0.into(),
                0.0.into(),
                omega.re.into(),
                omega.im.into(),
                v.re.into(),
                v.im.into(),
                target.re.into(),
                target.im.into(),
                err.into(),
                (err < tol).into(),
                "limit".into(),
            ];
            return Ok(emit_csv(&OLIM_SCHEMA, &[row])?);
        }
        SurgeryCoefficient::Finite(p) => p,
    };
    let table = match refs {
        Some(path) => load_references(path)?,
        None => builtin_references(),
    };
    let reference = lookup(&table, p).ok_or_else(|| {
        Error::Domain(format!("no reference values for p = {p}; supply them with --refs"))
    })?;
    let points = solve_fig8(p, &SolverOptions::default())?;
    let mut rows = Vec::with_capacity(points.len());
    for pt in &points {
        let report = compare(pt.value(), reference, tol)?;
        rows.push(vec![
            p.into(),
            pt.zeta.re.into(),
            pt.zeta.im.into(),
            pt.omega.re.into(),
            pt.omega.im.into(),
            report.value.re.into(),
            report.value.im.into(),
            report.target.re.into(),
            report.target.im.into(),
            report.abs_error.into(),
            report.matched.into(),
            pt.label.as_str().into(),
        ]);
    }
    Ok(emit_csv(&OLIM_SCHEMA, &rows)?)
}

/// Geometric candidate of each `p` in the progression, in order.
pub fn sweep_points(start: i64, step: i64, count: usize) -> Vec<(i64, Result<SaddlePoint>)> {
    let ps: Vec<i64> = (0..count as i64).map(|k| start + k * step).collect();
    let opts = SolverOptions::default();
    ps.par_iter()
        .map(|&p| {
            let result = solve_fig8(p, &opts).and_then(|points| {
                geometric_candidate(&points)
                    .cloned()
                    .ok_or_else(|| Error::Domain(format!("no geometric candidate for p = {p}")))
            });
            (p, result)
        })
        .collect()
}

fn sweep(start: i64, step: i64, count: usize) -> std::result::Result<String, Failure> {
    let results = with_pool(|| sweep_points(start, step, count))?;
    let mut rows = Vec::with_capacity(results.len());
    let mut first_error = None;
    for (p, r) in results {
        match r {
            Ok(pt) => rows.push(point_row(p, &pt)),
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    let text = emit_csv(&POINT_SCHEMA, &rows)?;
    match first_error {
        None => Ok(text),
        Some(error) => Err(Failure {
            partial: text,
            error,
        }),
    }
}

fn special(function: SpecialFn, arg: &str) -> std::result::Result<String, Failure> {
    let parse_real = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::Domain(format!("argument '{s}' is not a real number")))
    };
    let (name, z, value) = match function {
        SpecialFn::Li2 => {
            let z = Complex64::from_str(arg.trim())
                .map_err(|_| Error::Domain(format!("argument '{arg}' is not a complex number")))?;
            ("li2", z, dilog(z)?)
        }
        SpecialFn::Cl2 => {
            let x = parse_real(arg)?;
            ("cl2", Complex64::new(x, 0.0), Complex64::new(clausen2(x)?, 0.0))
        }
        SpecialFn::B2 => {
            let x = parse_real(arg)?;
            if !x.is_finite() {
                return Err(Error::NonFinite("bernoulli2_periodic").into());
            }
            ("b2", Complex64::new(x, 0.0), Complex64::new(bernoulli2_periodic(x), 0.0))
        }
    };
    Ok(emit_csv(
        &["fn", "re_arg", "im_arg", "re_value", "im_value"],
        &[vec![name.into(), z.re.into(), z.im.into(), value.re.into(), value.im.into()]],
    )?)
}

/// Runs `f` on a pool sized by [`THREADS_ENV`] when set, else on the global
/// pool.
fn with_pool<R: Send>(f: impl FnOnce() -> R + Send) -> Result<R> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => {
            let threads: usize = v
                .trim()
                .parse()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| Error::Domain(format!("{THREADS_ENV}='{v}' is not a positive integer")))?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
        Err(_) => Ok(f()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("olim-wrt").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&[]).code, 2);
        assert_eq!(run_args(&["jones", "--N", "5"]).code, 2);
        assert_eq!(run_args(&["jones", "--N", "5", "--n", "1", "--bogus"]).code, 2);
        assert_eq!(run_args(&["wrt", "--N", "x", "--p", "1"]).code, 2);
    }

    #[test]
    fn help_exits_0() {
        let out = run_args(&["--help"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("sweep"));
    }

    #[test]
    fn domain_error_exit_1() {
        let out = run_args(&["jones", "--N", "5", "--n", "9"]);
        assert_eq!(out.code, 1);
        assert!(out.stdout.is_empty());
        assert_eq!(out.stderr.lines().count(), 1);
        assert_eq!(run_args(&["wrt", "--N", "5", "--p", "0"]).code, 1);
        assert_eq!(run_args(&["olim", "--p", "13"]).code, 1);
    }

    #[test]
    fn jones_row() {
        let out = run_args(&["jones", "--N", "7", "--n", "1"]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "N,n,re_J,im_J\r\n7,1,1.00000000000,0\r\n");
    }

    #[test]
    fn special_values() {
        let out = run_args(&["special", "--fn", "b2", "--arg", "0.5"]);
        assert!(out.stdout.contains("b2,0.500000000000,0,-0.0833333333333,0"), "{}", out.stdout);
        let out = run_args(&["special", "--fn", "li2", "--arg", "-1"]);
        assert!(out.stdout.contains("-0.822467033424"), "{}", out.stdout);
        assert_eq!(run_args(&["special", "--fn", "cl2", "--arg", "abc"]).code, 1);
    }

    #[test]
    fn olim_infinity() {
        let out = run_args(&["olim", "--p", "inf"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("inf,1.00000000000,0"), "{}", out.stdout);
        assert!(out.stdout.contains(",true,limit"));
    }
}
