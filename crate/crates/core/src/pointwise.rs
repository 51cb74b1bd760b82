//! Basis-function formulas (SE1/DE1) and double-sum formulas (SE2/DE2).
//!
//! Both work from the transformed samples `F_j = f(T(jh)) T'(jh)`.

use crate::error::{domain, Error, Result};
use crate::matrix_form::IndefMatrix;
use crate::params::GridParams;
use crate::special::{alternating, si, sinc_scale, ShiftedSinc};
use crate::transform::{eta, Point, Transform};

/// An integrand on `(-1, 1)`.
///
/// Closures `Fn(f64) -> f64` implement this directly. Integrands with endpoint
/// singularities should override [`Integrand::eval_point`] and use the
/// complements `1 ± x`, which remain accurate at nodes where `x` has rounded
/// to `±1`.
pub trait Integrand {
    fn eval(&self, x: f64) -> f64;

    fn eval_point(&self, p: &Point) -> f64 {
        self.eval(p.x)
    }
}

impl<F: Fn(f64) -> f64> Integrand for F {
    fn eval(&self, x: f64) -> f64 {
        self(x)
    }
}

/// Node data shared by all six formulas.
#[derive(Debug, Clone)]
pub struct SampledIntegrand {
    transform: Transform,
    grid: GridParams,
    values: Vec<f64>,
    derivatives: Vec<f64>,
}

impl SampledIntegrand {
    /// Tabulates `F_j = f(T(jh)) T'(jh)` for `j = -M..=N`.
    ///
    /// Nodes so far out that `T'(jh)` or an endpoint complement underflows to
    /// zero contribute `F_j = 0` without evaluating `f`.
    pub fn sample<I: Integrand + ?Sized>(
        f: &I,
        transform: Transform,
        grid: GridParams,
    ) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.order());
        let mut derivatives = Vec::with_capacity(grid.order());
        for j in grid.indices() {
            let u = grid.node(j);
            let w = transform.derivative(u);
            let p = transform.point(u);
            let v = if w == 0.0 || p.at_endpoint() {
                0.0
            } else {
                f.eval_point(&p) * w
            };
            if !v.is_finite() {
                return Err(Error::Sampling { index: j, value: v });
            }
            values.push(v);
            derivatives.push(w);
        }
        Ok(Self {
            transform,
            grid,
            values,
            derivatives,
        })
    }

    pub fn transform(&self) -> Transform {
        self.transform
    }

    pub fn grid(&self) -> &GridParams {
        &self.grid
    }

    /// `F_j` ordered by `j = -M..=N`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `T'(jh)` ordered by `j = -M..=N`.
    pub fn derivatives(&self) -> &[f64] {
        &self.derivatives
    }
}

pub fn sample<I: Integrand + ?Sized>(
    f: &I,
    transform: Transform,
    grid: GridParams,
) -> Result<SampledIntegrand> {
    SampledIntegrand::sample(f, transform, grid)
}

fn check_open_interval(op: &'static str, x: f64) -> Result<()> {
    if x.abs() < 1.0 {
        Ok(())
    } else {
        Err(domain(op, format!("x = {x} is outside the open interval (-1, 1)")))
    }
}

/// `Σ_j F_j J(j,h)(T⁻¹(x))`: formula SE1 or DE1 depending on the transform.
pub fn indef_basis(s: &SampledIntegrand, x: f64) -> Result<f64> {
    check_open_interval("indef_basis", x)?;
    let t = s.transform.inverse(x)?;
    Ok(indef_basis_at(s, t))
}

/// [`indef_basis`] in the transformed variable `t = T⁻¹(x)`.
pub fn indef_basis_at(s: &SampledIntegrand, t: f64) -> f64 {
    let h = s.grid.h;
    let q = t / h;
    let pi = std::f64::consts::PI;
    let mut acc = 0.0;
    for (j, &fj) in s.grid.indices().zip(&s.values) {
        if fj != 0.0 {
            acc += fj * (0.5 + si(pi * (q - j as f64)) / pi);
        }
    }
    h * acc
}

/// `h Σ F_j`, the trapezoidal approximation of `∫_{-1}^{1} f`.
pub fn trapezoid_total(s: &SampledIntegrand) -> Result<f64> {
    if !s.grid.is_symmetric() {
        return Err(Error::Contract(format!(
            "trapezoid_total needs a symmetric grid, got M = {}, N = {}",
            s.grid.left, s.grid.right
        )));
    }
    Ok(s.grid.h * s.values.iter().sum::<f64>())
}

/// Formula SE2/DE2 with the inner `j`-sums precomputed.
///
/// `coefficients[i] = h Σ_j δ⁽⁻¹⁾_{ij} (F_j - I* T'(jh)/2)`; evaluation is then
/// `Σ_i coefficients[i] sinc(T⁻¹(x)/h - i) + I* η(x)`.
#[derive(Debug, Clone)]
pub struct DoubleSum {
    transform: Transform,
    grid: GridParams,
    coefficients: Vec<f64>,
    /// `coefficients[p] (-1)^{i_p}` for the factored kernel.
    signed: Vec<f64>,
    total: f64,
}

impl DoubleSum {
    pub fn new(s: &SampledIntegrand) -> Result<Self> {
        Self::with_matrix(s, &IndefMatrix::build(s.grid.order()))
    }

    /// Reuses an already built `I⁽⁻¹⁾` of matching order.
    pub fn with_matrix(s: &SampledIntegrand, iminus: &IndefMatrix) -> Result<Self> {
        let total = trapezoid_total(s).map_err(|_| {
            Error::Contract(format!(
                "double-sum formula needs a symmetric grid, got M = {}, N = {}",
                s.grid.left, s.grid.right
            ))
        })?;
        if iminus.order() != s.grid.order() {
            return Err(Error::Contract(format!(
                "matrix order {} does not match grid order {}",
                iminus.order(),
                s.grid.order()
            )));
        }
        let shifted: Vec<f64> = s
            .values
            .iter()
            .zip(&s.derivatives)
            .map(|(&fj, &wj)| fj - 0.5 * total * wj)
            .collect();
        let h = s.grid.h;
        let coefficients: Vec<f64> = iminus.matvec(&shifted).into_iter().map(|v| h * v).collect();
        Ok(Self {
            transform: s.transform,
            grid: s.grid,
            signed: alternating(s.grid.first_index(), &coefficients),
            coefficients,
            total,
        })
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// `I*`, the trapezoidal total.
    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        check_open_interval("indef_doublesum", x)?;
        let t = self.transform.inverse(x)?;
        Ok(self.sinc_part(t) + self.total * eta(x))
    }

    /// Evaluation in the transformed variable `t = T⁻¹(x)`.
    pub fn eval_at(&self, t: f64) -> f64 {
        let p = self.transform.point(t);
        self.sinc_part(t) + self.total * 0.5 * p.one_plus_x
    }

    fn sinc_part(&self, t: f64) -> f64 {
        let q = t / self.grid.h;
        match sinc_scale(q) {
            Some(scale) => {
                let acc: f64 = self
                    .grid
                    .indices()
                    .zip(&self.signed)
                    .map(|(i, &c)| c / (q - i as f64))
                    .sum();
                scale * acc
            }
            None => {
                let row = ShiftedSinc::new(q);
                self.grid
                    .indices()
                    .zip(&self.coefficients)
                    .map(|(i, &c)| c * row.at(i))
                    .sum()
            }
        }
    }
}

/// One-shot SE2/DE2 evaluation; builds the coefficient cache on every call.
pub fn indef_doublesum(s: &SampledIntegrand, x: f64) -> Result<f64> {
    DoubleSum::new(s)?.eval(x)
}
