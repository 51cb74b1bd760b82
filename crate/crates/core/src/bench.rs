//! Benchmark problems, the max-error protocol and the timing harness.

use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::matrix_form::{LeftBoundary, MatrixFormula};
use crate::params::{make_grid, AnalyticityParams, GridParams, Truncation};
use crate::pointwise::{indef_basis, indef_basis_at, DoubleSum, Integrand, SampledIntegrand};
use crate::transform::{Family, Point, Transform};

/// Default number of evaluation points.
pub const DEFAULT_POINTS: usize = 1000;

/// Timing repetitions per measurement; the median is reported.
pub const TIMING_REPEATS: usize = 21;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormulaId {
    Se1,
    Se2,
    Se3,
    De1,
    De2,
    De3,
}

/// Structural kind shared by the SE and DE variant of a formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaKind {
    Basis,
    DoubleSum,
    Matrix,
}

impl FormulaId {
    pub const ALL: [FormulaId; 6] = [
        FormulaId::Se1,
        FormulaId::Se2,
        FormulaId::Se3,
        FormulaId::De1,
        FormulaId::De2,
        FormulaId::De3,
    ];

    pub fn family(self) -> Family {
        match self {
            FormulaId::Se1 | FormulaId::Se2 | FormulaId::Se3 => Family::Se,
            FormulaId::De1 | FormulaId::De2 | FormulaId::De3 => Family::De,
        }
    }

    pub fn kind(self) -> FormulaKind {
        match self {
            FormulaId::Se1 | FormulaId::De1 => FormulaKind::Basis,
            FormulaId::Se2 | FormulaId::De2 => FormulaKind::DoubleSum,
            FormulaId::Se3 | FormulaId::De3 => FormulaKind::Matrix,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FormulaId::Se1 => "se1",
            FormulaId::Se2 => "se2",
            FormulaId::Se3 => "se3",
            FormulaId::De1 => "de1",
            FormulaId::De2 => "de2",
            FormulaId::De3 => "de3",
        }
    }

    /// The double-sum formulas are only defined on symmetric grids.
    pub fn truncation(self) -> Truncation {
        match self.kind() {
            FormulaKind::DoubleSum => Truncation::Symmetric,
            _ => Truncation::Theorem,
        }
    }

    pub fn grid(self, ap: &AnalyticityParams, n: usize) -> Result<GridParams> {
        make_grid(self.family(), ap, n, self.truncation())
    }

    /// Prepares the formula for `problem` with its parameters for this family.
    pub fn build(self, problem: &Problem, n: usize, opts: &EvalOptions) -> Result<Approximation> {
        self.build_for(problem, &problem.params(self.family()), n, opts)
    }

    /// Prepares the formula for an arbitrary integrand.
    pub fn build_for<I: Integrand + ?Sized>(
        self,
        f: &I,
        ap: &AnalyticityParams,
        n: usize,
        opts: &EvalOptions,
    ) -> Result<Approximation> {
        if opts.order == 0 {
            return Err(Error::Contract("integration order must be at least 1".into()));
        }
        if opts.order > 1 && self.kind() != FormulaKind::Matrix {
            return Err(Error::Contract(format!(
                "order {} integration is only available for the matrix formulas (se3, de3)",
                opts.order
            )));
        }
        let grid = self.grid(ap, n)?;
        let transform = Transform::new(self.family());
        let sampled = SampledIntegrand::sample(f, transform, grid)?;
        let inner = match self.kind() {
            FormulaKind::Basis => Inner::Basis(sampled),
            FormulaKind::DoubleSum => Inner::DoubleSum(DoubleSum::new(&sampled)?),
            FormulaKind::Matrix => {
                Inner::Matrix(MatrixFormula::new(&sampled, opts.order, opts.left_boundary)?)
            }
        };
        Ok(Approximation {
            formula: self,
            grid,
            inner,
        })
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FormulaId::ALL
            .into_iter()
            .find(|f| f.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::Parameter(format!(
                    "unknown formula {s:?} (expected one of se1, se2, se3, de1, de2, de3)"
                ))
            })
    }
}

/// Evaluation options beyond the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    /// Repeated-integration order; only the matrix formulas accept > 1.
    pub order: usize,
    pub left_boundary: LeftBoundary,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            order: 1,
            left_boundary: LeftBoundary::Corrected,
        }
    }
}

#[derive(Debug, Clone)]
enum Inner {
    Basis(SampledIntegrand),
    DoubleSum(DoubleSum),
    Matrix(MatrixFormula),
}

/// A formula ready for evaluation at arbitrary `x ∈ (-1, 1)`.
#[derive(Debug, Clone)]
pub struct Approximation {
    formula: FormulaId,
    grid: GridParams,
    inner: Inner,
}

impl Approximation {
    pub fn formula(&self) -> FormulaId {
        self.formula
    }

    pub fn grid(&self) -> &GridParams {
        &self.grid
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        match &self.inner {
            Inner::Basis(s) => indef_basis(s, x),
            Inner::DoubleSum(d) => d.eval(x),
            Inner::Matrix(m) => m.eval(x),
        }
    }

    /// Evaluation at `x = T(t)` in the transformed variable.
    pub fn eval_at(&self, t: f64) -> f64 {
        match &self.inner {
            Inner::Basis(s) => indef_basis_at(s, t),
            Inner::DoubleSum(d) => d.eval_at(t),
            Inner::Matrix(m) => m.eval_at(t),
        }
    }
}

/// A benchmark integrand on `(-1, 1)` with its exact indefinite integral
/// from `-1`.
#[derive(Debug, Clone, Copy)]
pub struct Problem {
    pub id: u32,
    pub description: &'static str,
    integrand: fn(&Point) -> f64,
    exact: fn(f64) -> f64,
    pub ap_se: AnalyticityParams,
    pub ap_de: AnalyticityParams,
}

impl Problem {
    pub fn integrand(&self, x: f64) -> f64 {
        (self.integrand)(&Point::from_x(x))
    }

    /// `∫_{-1}^x f(s) ds`.
    pub fn exact(&self, x: f64) -> f64 {
        (self.exact)(x)
    }

    pub fn params(&self, family: Family) -> AnalyticityParams {
        match family {
            Family::Se => self.ap_se,
            Family::De => self.ap_de,
        }
    }
}

impl Integrand for Problem {
    fn eval(&self, x: f64) -> f64 {
        self.integrand(x)
    }

    fn eval_point(&self, p: &Point) -> f64 {
        (self.integrand)(p)
    }
}

/// A value slightly below π, as used for the strip widths.
const PI_MINUS: f64 = 3.14;
const ONE_MINUS: f64 = 0.99;

fn params(mu: f64, d: f64) -> AnalyticityParams {
    AnalyticityParams::new(mu, mu, d).expect("built-in parameters are valid")
}

/// `t log t` with the limit `0 log 0 = 0`.
fn xlogx(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t * t.ln()
    }
}

fn arcsine_density(p: &Point) -> f64 {
    1.0 / (PI * (p.one_plus_x * p.one_minus_x).sqrt())
}

fn arcsine_exact(x: f64) -> f64 {
    (x.asin() + PI / 2.0) / PI
}

fn log_ratio(p: &Point) -> f64 {
    (p.one_plus_x.ln() - p.one_minus_x.ln()) / (4.0 * LN_2)
}

fn log_ratio_exact(x: f64) -> f64 {
    (xlogx(1.0 + x) + xlogx(1.0 - x) - 2.0 * LN_2) / (4.0 * LN_2)
}

fn lorentz(p: &Point) -> f64 {
    2.0 / (PI * (1.0 + p.x * p.x))
}

fn lorentz_exact(x: f64) -> f64 {
    0.5 + 2.0 / PI * x.atan()
}

/// Integrand whose DE image is not analytic in any strip of the required
/// width.
fn oscillatory(p: &Point) -> f64 {
    // 4 artanh x = 2 log((1+x)/(1-x))
    let a = 2.0 * (p.one_plus_x.ln() - p.one_minus_x.ln());
    let c = a.cos() + PI.cosh();
    -2.0 * (p.x * c + a.sin()) / c.sqrt()
}

fn oscillatory_exact(x: f64) -> f64 {
    let w = (1.0 - x) * (1.0 + x);
    if w == 0.0 {
        return 0.0;
    }
    w * ((4.0 * x.atanh()).cos() + PI.cosh()).sqrt()
}

pub fn builtin_problem(id: u32) -> Result<Problem> {
    let p = match id {
        1 => Problem {
            id,
            description: "1/(pi sqrt(1-s^2))",
            integrand: arcsine_density,
            exact: arcsine_exact,
            ap_se: params(0.5, PI_MINUS),
            ap_de: params(0.5, PI_MINUS / 2.0),
        },
        2 => Problem {
            id,
            description: "log((1+s)/(1-s))/(4 log 2)",
            integrand: log_ratio,
            exact: log_ratio_exact,
            ap_se: params(ONE_MINUS, PI_MINUS),
            ap_de: params(ONE_MINUS, PI_MINUS / 2.0),
        },
        3 => Problem {
            id,
            description: "2/(pi(1+s^2))",
            integrand: lorentz,
            exact: lorentz_exact,
            ap_se: params(1.0, PI_MINUS / 2.0),
            ap_de: params(1.0, PI_MINUS / 6.0),
        },
        4 => Problem {
            id,
            description: "-2[s(cos(4 artanh s)+cosh pi)+sin(4 artanh s)]/sqrt(cos(4 artanh s)+cosh pi)",
            integrand: oscillatory,
            exact: oscillatory_exact,
            ap_se: params(1.0, PI_MINUS / 2.0),
            ap_de: params(1.0, PI_MINUS / 6.0),
        },
        _ => return Err(Error::UnknownProblem(id)),
    };
    Ok(p)
}

/// `x_k = (2k - (count+1)) / (count+1)` for `k = 1..=count`: equispaced,
/// strictly inside `(-1, 1)` and exactly symmetric about 0.
pub fn evaluation_points(count: usize) -> Vec<f64> {
    let denom = (count + 1) as f64;
    (1..=count)
        .map(|k| (2 * k) as f64 - denom)
        .map(|num| num / denom)
        .collect()
}

/// One measurement of one formula on one problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRecord {
    pub formula: FormulaId,
    pub problem: u32,
    pub n: usize,
    pub h: f64,
    pub left: usize,
    pub right: usize,
    pub max_error: f64,
    pub elapsed_seconds: f64,
}

fn max_error_of(approx: &Approximation, problem: &Problem, points: &[f64]) -> Result<f64> {
    let mut worst = 0.0f64;
    for &x in points {
        let err = (approx.eval(x)? - problem.exact(x)).abs();
        if err.is_nan() {
            return Ok(f64::NAN);
        }
        worst = worst.max(err);
    }
    Ok(worst)
}

/// Maximum error over the default 1000 interior points.
pub fn max_error(formula: FormulaId, problem: &Problem, n: usize) -> Result<f64> {
    max_error_with(formula, problem, n, &EvalOptions::default(), DEFAULT_POINTS)
}

pub fn max_error_with(
    formula: FormulaId,
    problem: &Problem,
    n: usize,
    opts: &EvalOptions,
    points: usize,
) -> Result<f64> {
    let approx = formula.build(problem, n, opts)?;
    max_error_of(&approx, problem, &evaluation_points(points))
}

/// Max error plus the median wall time of building and evaluating the
/// formula (grid, samples, precomputation, all evaluation points).
pub fn measure(
    formula: FormulaId,
    problem: &Problem,
    n: usize,
    opts: &EvalOptions,
    points: usize,
) -> Result<ConvergenceRecord> {
    let xs = evaluation_points(points);
    let mut times = Vec::with_capacity(TIMING_REPEATS);
    let mut values = vec![0.0; xs.len()];
    let mut approx = None;
    for _ in 0..TIMING_REPEATS {
        let start = Instant::now();
        let a = formula.build(problem, n, opts)?;
        for (v, &x) in values.iter_mut().zip(&xs) {
            *v = a.eval(x)?;
        }
        times.push(start.elapsed().as_secs_f64());
        std::hint::black_box(&values);
        approx = Some(a);
    }
    times.sort_by(f64::total_cmp);
    let approx = approx.expect("at least one repetition");
    let max_error = max_error_of(&approx, problem, &xs)?;
    let grid = *approx.grid();
    Ok(ConvergenceRecord {
        formula,
        problem: problem.id,
        n,
        h: grid.h,
        left: grid.left,
        right: grid.right,
        max_error,
        elapsed_seconds: times[times.len() / 2].max(1e-9),
    })
}

fn check_increasing(n_list: &[usize]) -> Result<()> {
    if n_list.is_empty() {
        return Err(Error::Parameter("n list is empty".into()));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter("n list must be strictly increasing".into()));
    }
    Ok(())
}

/// One record per `n`.
pub fn sweep(
    formula: FormulaId,
    problem: &Problem,
    n_list: &[usize],
    opts: &EvalOptions,
    points: usize,
) -> Result<Vec<ConvergenceRecord>> {
    check_increasing(n_list)?;
    n_list
        .iter()
        .map(|&n| measure(formula, problem, n, opts, points))
        .collect()
}

/// The first record in `n_list` whose max error is at or below `tolerance`.
pub fn first_below(
    formula: FormulaId,
    problem: &Problem,
    n_list: &[usize],
    tolerance: f64,
    opts: &EvalOptions,
    points: usize,
) -> Result<Option<ConvergenceRecord>> {
    check_increasing(n_list)?;
    for &n in n_list {
        let rec = measure(formula, problem, n, opts, points)?;
        if rec.max_error <= tolerance {
            return Ok(Some(rec));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn problem_exact_values() {
        let p1 = builtin_problem(1).unwrap();
        assert!((p1.exact(0.0) - 0.5).abs() < 1e-16);
        let p3 = builtin_problem(3).unwrap();
        assert!((p3.exact(1.0) - 1.0).abs() < 1e-16);
        let p4 = builtin_problem(4).unwrap();
        assert!((p4.exact(0.0) - 3.548_514_234_932_913_5).abs() < 1e-14);
        for id in 1..=4 {
            let p = builtin_problem(id).unwrap();
            assert_eq!(p.exact(-1.0), 0.0, "problem {id}");
            assert_eq!(p.id, id);
        }
        assert!(matches!(builtin_problem(5), Err(Error::UnknownProblem(5))));
        assert!(builtin_problem(0).is_err());
    }

    #[test]
    fn exact_is_antiderivative() {
        // central differences of the exact solution against the integrand
        let eps = 1e-5;
        for id in 1..=4 {
            let p = builtin_problem(id).unwrap();
            for &x in &[-0.9, -0.5, -0.1, 0.0, 0.3, 0.7, 0.95] {
                let fd = (p.exact(x + eps) - p.exact(x - eps)) / (2.0 * eps);
                let f = p.integrand(x);
                assert!((fd - f).abs() < 1e-7 * f.abs().max(1.0), "problem {id} x={x}: {fd} vs {f}");
            }
        }
    }

    #[test]
    fn problem_parameters() {
        let p = builtin_problem(1).unwrap();
        assert_eq!((p.ap_se.alpha(), p.ap_se.d()), (0.5, 3.14));
        assert_eq!((p.ap_de.beta(), p.ap_de.d()), (0.5, 1.57));
        let p = builtin_problem(2).unwrap();
        assert_eq!(p.ap_de.mu(), 0.99);
        for id in [3, 4] {
            let p = builtin_problem(id).unwrap();
            assert_eq!(p.ap_se.d(), 1.57);
            assert_eq!(p.ap_de.d(), 3.14 / 6.0);
        }
    }

    #[test]
    fn evaluation_points_are_interior_and_symmetric() {
        let xs = evaluation_points(1000);
        assert_eq!(xs.len(), 1000);
        assert!(xs.iter().all(|x| x.abs() < 1.0));
        for k in 0..1000 {
            assert_eq!(xs[k] + xs[999 - k], 0.0);
        }
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
        assert!((xs[0] - (-1.0 + 2.0 / 1001.0)).abs() < 1e-16);
        assert_eq!(evaluation_points(1), vec![0.0]);
    }

    #[test]
    fn formula_parse_and_metadata() {
        assert_eq!("DE3".parse::<FormulaId>().unwrap(), FormulaId::De3);
        assert!("se9".parse::<FormulaId>().is_err());
        for f in FormulaId::ALL {
            assert_eq!(f.as_str().parse::<FormulaId>().unwrap(), f);
        }
        assert_eq!(FormulaId::Se2.truncation(), Truncation::Symmetric);
        assert_eq!(FormulaId::De1.family(), Family::De);
    }

    #[test]
    fn zero_integrand_has_zero_error() {
        let zero = Problem {
            id: 0,
            description: "0",
            integrand: |_| 0.0,
            exact: |_| 0.0,
            ap_se: params(1.0, 1.0),
            ap_de: params(1.0, 0.5),
        };
        for f in FormulaId::ALL {
            assert_eq!(max_error(f, &zero, 6).unwrap(), 0.0);
        }
    }

    #[test]
    fn order_two_requires_matrix_formula() {
        let p = builtin_problem(3).unwrap();
        let opts = EvalOptions {
            order: 2,
            ..Default::default()
        };
        assert!(FormulaId::De2.build(&p, 10, &opts).is_err());
        assert!(FormulaId::De3.build(&p, 10, &opts).is_ok());
        let zero = EvalOptions {
            order: 0,
            ..Default::default()
        };
        assert!(FormulaId::Se3.build(&p, 10, &zero).is_err());
    }

    #[test]
    fn de2_problem_one_accuracy() {
        let p = builtin_problem(1).unwrap();
        let de2 = max_error(FormulaId::De2, &p, 40).unwrap();
        assert!(de2 < 1e-9, "{de2}");
        let se1 = max_error(FormulaId::Se1, &p, 40).unwrap();
        assert!(se1 > 1e3 * de2, "se1 {se1} de2 {de2}");
    }

    #[test]
    fn sweep_records() {
        let p = builtin_problem(3).unwrap();
        let opts = EvalOptions::default();
        let recs = sweep(FormulaId::De2, &p, &[8], &opts, 50).unwrap();
        assert_eq!(recs.len(), 1);
        assert!(recs[0].elapsed_seconds > 0.0 && recs[0].max_error >= 0.0);
        assert_eq!((recs[0].left, recs[0].right), (8, 8));
        assert!(sweep(FormulaId::De2, &p, &[8, 8], &opts, 50).is_err());
        assert!(sweep(FormulaId::De2, &p, &[], &opts, 50).is_err());
    }

    #[test]
    fn max_error_is_deterministic() {
        let p = builtin_problem(2).unwrap();
        for f in [FormulaId::Se1, FormulaId::De2, FormulaId::De3] {
            let a = max_error(f, &p, 12).unwrap();
            let b = max_error(f, &p, 12).unwrap();
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }
}
