//! Command-line front end.
//!
//! Subcommands: `integrate`, `sweep`, `compare`, `bounds`. All tabular output
//! is CSV (UTF-8, LF) with floating-point fields printed to 17 significant
//! digits.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bench::{
    builtin_problem, evaluation_points, first_below, sweep, ConvergenceRecord, EvalOptions,
    FormulaId, Problem, DEFAULT_POINTS,
};
use crate::bounds::{discretization_bound, lambda_bound_de, rate_curve};
use crate::error::{Error, Result};
use crate::matrix_form::LeftBoundary;
use crate::transform::Family;

/// Header of the sweep CSV.
pub const SWEEP_HEADER: &str = "formula,problem,n,h,M,N,max_error,elapsed_seconds";

#[derive(Debug, Parser)]
#[command(name = "sinc-indef", version, about = "Sinc indefinite integration on (-1, 1)")]
pub struct Cli {
    /// Accepted for scripting; the pipeline never uses randomness.
    #[arg(long, global = true)]
    pub seedless: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one formula on one built-in problem.
    Integrate(IntegrateArgs),
    /// Max error and timing over a range of n; writes CSV.
    Sweep(SweepArgs),
    /// Smallest n at which each formula reaches a target accuracy.
    Compare(CompareArgs),
    /// Theoretical rate curves and discretization bounds.
    Bounds(BoundsArgs),
}

#[derive(Debug, Args)]
pub struct FormulaOpts {
    /// Left boundary basis for se3/de3.
    #[arg(long, value_parser = parse_left_boundary, default_value = "corrected")]
    pub left_boundary: LeftBoundary,

    /// Repeated-integration order (se3/de3 only).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub order: u32,
}

impl FormulaOpts {
    fn eval_options(&self) -> EvalOptions {
        EvalOptions {
            order: self.order as usize,
            left_boundary: self.left_boundary,
        }
    }
}

#[derive(Debug, Args)]
pub struct IntegrateArgs {
    #[arg(long, value_parser = parse_formula)]
    pub formula: FormulaId,

    #[arg(long, value_parser = parse_problem)]
    pub problem: u32,

    #[arg(long)]
    pub n: usize,

    /// Evaluation point(s); defaults to the equispaced interior grid.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Vec<f64>,

    /// Number of equispaced interior points when no --x is given.
    #[arg(long, default_value_t = DEFAULT_POINTS, value_parser = parse_points)]
    pub points: usize,

    #[command(flatten)]
    pub formula_opts: FormulaOpts,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Formula(s) to sweep; repeatable.
    #[arg(long = "formula", value_parser = parse_formula, required = true)]
    pub formulas: Vec<FormulaId>,

    #[arg(long, value_parser = parse_problem)]
    pub problem: u32,

    /// Single n, or use --n-list.
    #[arg(long, conflicts_with = "n_list")]
    pub n: Option<usize>,

    /// `a:b:step` or a comma-separated list, strictly increasing.
    #[arg(long, value_parser = parse_n_list)]
    pub n_list: Option<NList>,

    #[arg(long, default_value_t = DEFAULT_POINTS, value_parser = parse_points)]
    pub points: usize,

    /// CSV destination; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Append a `rate_curve` column with the theoretical exponential rate.
    #[arg(long)]
    pub bounds_overlay: bool,

    /// Also write a gnuplot script plotting the CSV (requires --output).
    #[arg(long, requires = "output")]
    pub plot_script: Option<PathBuf>,

    #[command(flatten)]
    pub formula_opts: FormulaOpts,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Formula(s); all six when omitted.
    #[arg(long = "formula", value_parser = parse_formula)]
    pub formulas: Vec<FormulaId>,

    /// Problem(s); all four when omitted.
    #[arg(long = "problem", value_parser = parse_problem)]
    pub problems: Vec<u32>,

    #[arg(long, value_parser = parse_n_list, default_value = "5:150:5")]
    pub n_list: NList,

    /// Target maximum error.
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,

    #[arg(long, default_value_t = DEFAULT_POINTS, value_parser = parse_points)]
    pub points: usize,

    #[arg(long)]
    pub output: Option<PathBuf>,

    #[command(flatten)]
    pub formula_opts: FormulaOpts,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long = "formula", value_parser = parse_formula, required = true)]
    pub formulas: Vec<FormulaId>,

    #[arg(long, value_parser = parse_problem)]
    pub problem: u32,

    #[arg(long, value_parser = parse_n_list, default_value = "5:50:5")]
    pub n_list: NList,

    /// Λ(f, d) for the discretization bound; DE formulas fall back to the
    /// closed-form bound with constant --k.
    #[arg(long)]
    pub lambda: Option<f64>,

    #[arg(long, default_value_t = 1.0)]
    pub k: f64,

    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Strictly increasing list of `n` values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NList(pub Vec<usize>);

fn parse_formula(s: &str) -> std::result::Result<FormulaId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_problem(s: &str) -> std::result::Result<u32, String> {
    match s.parse::<u32>() {
        Ok(id @ 1..=4) => Ok(id),
        _ => Err(format!("unknown problem {s:?} (expected 1, 2, 3 or 4)")),
    }
}

fn parse_left_boundary(s: &str) -> std::result::Result<LeftBoundary, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_points(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(p) if p >= 1 => Ok(p),
        _ => Err(format!("point count must be a positive integer, got {s:?}")),
    }
}

/// Parses `a:b:step` (inclusive of `b` when reached) or `a,b,c`.
pub fn parse_n_list(s: &str) -> std::result::Result<NList, String> {
    let values: Vec<usize> = if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, step] = parts[..] else {
            return Err(format!("expected a:b:step, got {s:?}"));
        };
        let parse = |v: &str| {
            v.trim()
                .parse::<usize>()
                .map_err(|_| format!("invalid integer {v:?} in {s:?}"))
        };
        let (a, b, step) = (parse(a)?, parse(b)?, parse(step)?);
        if step == 0 || a > b {
            return Err(format!("need a <= b and step > 0 in {s:?}"));
        }
        (a..=b).step_by(step).collect()
    } else {
        s.split(',')
            .map(|v| {
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| format!("invalid integer {v:?} in {s:?}"))
            })
            .collect::<std::result::Result<_, _>>()?
    };
    if values.is_empty() || values[0] == 0 {
        return Err("n values must be positive".into());
    }
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(format!("n list {s:?} is not strictly increasing"));
    }
    Ok(NList(values))
}

/// Float formatting shared by all CSV output: 17 significant digits.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn sweep_row(rec: &ConvergenceRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        rec.formula,
        rec.problem,
        rec.n,
        fmt_float(rec.h),
        rec.left,
        rec.right,
        fmt_float(rec.max_error),
        fmt_float(rec.elapsed_seconds)
    )
}

/// Runs the CLI on `args` (including the program name); returns the exit
/// code. Usage errors exit with 2, runtime failures with 1.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Numeric(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

type CliResult<T> = std::result::Result<T, CliError>;

fn dispatch(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Integrate(a) => cmd_integrate(&a, out),
        Command::Sweep(a) => cmd_sweep(&a, out),
        Command::Compare(a) => cmd_compare(&a, out),
        Command::Bounds(a) => cmd_bounds(&a, out),
    }
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn problem(id: u32) -> Result<Problem> {
    builtin_problem(id)
}

fn cmd_integrate(args: &IntegrateArgs, out: &mut dyn Write) -> CliResult<()> {
    let p = problem(args.problem)?;
    let opts = args.formula_opts.eval_options();
    let xs = if args.x.is_empty() {
        evaluation_points(args.points)
    } else {
        args.x.clone()
    };
    if let Some(x) = xs.iter().find(|x| !(x.abs() < 1.0)) {
        return Err(CliError::Usage(format!(
            "x = {x} is outside the open interval (-1, 1)"
        )));
    }
    let approx = args.formula.build(&p, args.n, &opts)?;
    let mut text = String::from("x,approx,exact,abs_error\n");
    for &x in &xs {
        let v = approx.eval(x)?;
        if opts.order == 1 {
            let e = p.exact(x);
            let _ = writeln!(
                text,
                "{},{},{},{}",
                fmt_float(x),
                fmt_float(v),
                fmt_float(e),
                fmt_float((v - e).abs())
            );
        } else {
            let _ = writeln!(text, "{},{},,", fmt_float(x), fmt_float(v));
        }
    }
    emit(&text, None, out)
}

fn n_values(n: Option<usize>, list: &Option<NList>) -> CliResult<Vec<usize>> {
    match (n, list) {
        (Some(n), None) if n > 0 => Ok(vec![n]),
        (None, Some(l)) => Ok(l.0.clone()),
        _ => Err(CliError::Usage("give exactly one of --n or --n-list".into())),
    }
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> CliResult<()> {
    let p = problem(args.problem)?;
    let ns = n_values(args.n, &args.n_list)?;
    let opts = args.formula_opts.eval_options();
    let mut text = String::from(SWEEP_HEADER);
    if args.bounds_overlay {
        text.push_str(",rate_curve");
    }
    text.push('\n');
    for &f in &args.formulas {
        for rec in sweep(f, &p, &ns, &opts, args.points)? {
            text.push_str(&sweep_row(&rec));
            if args.bounds_overlay {
                let r = rate_curve(f.family(), &p.params(f.family()), rec.n)?;
                text.push(',');
                text.push_str(&fmt_float(r));
            }
            text.push('\n');
        }
    }
    emit(&text, args.output.as_deref(), out)?;
    if let (Some(script), Some(csv)) = (&args.plot_script, &args.output) {
        let body = plot_script(csv, &args.formulas, args.problem);
        emit(&body, Some(script), out)?;
    }
    Ok(())
}

/// A gnuplot script drawing error-vs-n and error-vs-time from a sweep CSV.
pub fn plot_script(csv: &Path, formulas: &[FormulaId], problem: u32) -> String {
    let names: Vec<&str> = formulas.iter().map(|f| f.as_str()).collect();
    let csv = csv.display();
    let stem = format!("problem{problem}");
    format!(
        "# generated by sinc-indef sweep\n\
         set datafile separator ','\n\
         set logscale y\n\
         set format y '10^{{%L}}'\n\
         set ylabel 'maximum error'\n\
         set key top right\n\
         set terminal pngcairo size 900,600\n\
         formulas = \"{names}\"\n\
         set output '{stem}_error.png'\n\
         set xlabel 'n'\n\
         plot for [f in formulas] '{csv}' using (strcol(1) eq f ? $3 : 1/0):7 with linespoints title f\n\
         set output '{stem}_time.png'\n\
         set xlabel 'computation time [s]'\n\
         set logscale x\n\
         plot for [f in formulas] '{csv}' using (strcol(1) eq f ? $8 : 1/0):7 with linespoints title f\n",
        names = names.join(" ")
    )
}

fn cmd_compare(args: &CompareArgs, out: &mut dyn Write) -> CliResult<()> {
    if !(args.tolerance > 0.0) {
        return Err(CliError::Usage("--tolerance must be positive".into()));
    }
    let formulas = if args.formulas.is_empty() {
        FormulaId::ALL.to_vec()
    } else {
        args.formulas.clone()
    };
    let problems = if args.problems.is_empty() {
        vec![1, 2, 3, 4]
    } else {
        args.problems.clone()
    };
    let opts = args.formula_opts.eval_options();
    let mut text = String::from("problem,formula,n,max_error,elapsed_seconds\n");
    for &id in &problems {
        let p = problem(id)?;
        for &f in &formulas {
            match first_below(f, &p, &args.n_list.0, args.tolerance, &opts, args.points)? {
                Some(rec) => {
                    let _ = writeln!(
                        text,
                        "{id},{f},{},{},{}",
                        rec.n,
                        fmt_float(rec.max_error),
                        fmt_float(rec.elapsed_seconds)
                    );
                }
                None => {
                    let _ = writeln!(text, "{id},{f},,,");
                }
            }
        }
    }
    emit(&text, args.output.as_deref(), out)
}

fn cmd_bounds(args: &BoundsArgs, out: &mut dyn Write) -> CliResult<()> {
    let p = problem(args.problem)?;
    let mut text = String::from("formula,problem,n,h,rate_curve,discretization_bound\n");
    for &f in &args.formulas {
        let family = f.family();
        let ap = p.params(family);
        let lambda = match (args.lambda, family) {
            (Some(l), _) => Some(l),
            (None, Family::De) => Some(lambda_bound_de(&ap.with_k(args.k)?)?),
            (None, Family::Se) => None,
        };
        for &n in &args.n_list.0 {
            let grid = f.grid(&ap, n)?;
            let rate = rate_curve(family, &ap, n)?;
            let disc = match lambda {
                Some(l) => fmt_float(discretization_bound(grid.h, ap.d(), l)?),
                None => String::new(),
            };
            let _ = writeln!(
                text,
                "{f},{},{n},{},{},{disc}",
                p.id,
                fmt_float(grid.h),
                fmt_float(rate)
            );
        }
    }
    emit(&text, args.output.as_deref(), out)
}
