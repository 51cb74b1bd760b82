//! Matrix–vector formulas SE3/DE3.
//!
//! `∫_{-1}^x f ≈ ω_m(x) · A_m f_m` with `A_m = h I⁽⁻¹⁾_m D_m`, where
//! `I⁽⁻¹⁾_m` is the Toeplitz matrix of `δ⁽⁻¹⁾_{ij} = 1/2 + σ_{i-j}` and
//! `D_m = diag[T'(jh)]`. Powers of `A_m` give repeated integrals.
//!
//! Logical indices `j ∈ [-M, N]` map to storage index `j + M`.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::params::GridParams;
use crate::pointwise::{Integrand, SampledIntegrand};
use crate::special::{alternating, sinc_row, sinc_scale, ShiftedSinc, SigmaTable};
use crate::transform::Transform;

/// Dense row-major `I⁽⁻¹⁾_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct IndefMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl IndefMatrix {
    /// Builds the order-`m` matrix from `σ_0, …, σ_{m-1}`.
    ///
    /// Each diagonal holds one value; the mirrored diagonal is `1 - value`,
    /// so `entry(i,j) + entry(j,i) = 1` holds exactly.
    pub fn build(order: usize) -> Self {
        let sigma = SigmaTable::new(order.max(1));
        let below: Vec<f64> = (0..order as i64).map(|k| 0.5 + sigma.get(k)).collect();
        let mut entries = vec![0.0; order * order];
        for i in 0..order {
            for j in 0..order {
                entries[i * order + j] = if i >= j {
                    below[i - j]
                } else {
                    1.0 - below[j - i]
                };
            }
        }
        Self { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Entry at storage indices `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.order + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.entries[row * self.order..(row + 1) * self.order]
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.order, "vector length must match matrix order");
        (0..self.order)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

pub fn build_iminus(grid: &GridParams) -> IndefMatrix {
    IndefMatrix::build(grid.order())
}

/// Values of a function at the transformed nodes, ordered `j = -M..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeVector {
    values: Vec<f64>,
}

impl NodeVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(p) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Contract(format!(
                "node vector entry {p} is not finite ({})",
                values[p]
            )));
        }
        Ok(Self { values })
    }

    /// `f(T(jh))` at every node. Nodes where `T'(jh)` or an endpoint
    /// complement underflows store 0; `D_m` annihilates them anyway.
    pub fn sample<I: Integrand + ?Sized>(
        f: &I,
        transform: Transform,
        grid: &GridParams,
    ) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.order());
        for j in grid.indices() {
            let u = grid.node(j);
            let p = transform.point(u);
            let v = if transform.derivative(u) == 0.0 || p.at_endpoint() {
                0.0
            } else {
                f.eval_point(&p)
            };
            if !v.is_finite() {
                return Err(Error::Sampling { index: j, value: v });
            }
            values.push(v);
        }
        Ok(Self { values })
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            values: vec![0.0; len],
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Treatment of the leftmost basis function `ω_{-M}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LeftBoundary {
    /// The η-corrected boundary function.
    #[default]
    Corrected,
    /// Plain `sinc(T⁻¹(x)/h + M)`; the indefinite integral vanishes at -1.
    PlainSinc,
}

impl fmt::Display for LeftBoundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LeftBoundary::Corrected => "corrected",
            LeftBoundary::PlainSinc => "plain-sinc",
        })
    }
}

impl FromStr for LeftBoundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corrected" => Ok(LeftBoundary::Corrected),
            "plain-sinc" | "plain_sinc" => Ok(LeftBoundary::PlainSinc),
            _ => Err(Error::Parameter(format!("unknown left-boundary variant {s:?}"))),
        }
    }
}

/// `A_m = h I⁽⁻¹⁾_m D_m`, kept in factored form.
#[derive(Debug, Clone)]
pub struct IntegrationOperator {
    transform: Transform,
    grid: GridParams,
    iminus: IndefMatrix,
    diag: Vec<f64>,
}

impl IntegrationOperator {
    pub fn new(transform: Transform, grid: GridParams) -> Self {
        Self::with_matrix(transform, grid, build_iminus(&grid))
    }

    pub(crate) fn with_matrix(transform: Transform, grid: GridParams, iminus: IndefMatrix) -> Self {
        let diag = grid.indices().map(|j| transform.derivative(grid.node(j))).collect();
        Self {
            transform,
            grid,
            iminus,
            diag,
        }
    }

    pub fn transform(&self) -> Transform {
        self.transform
    }

    pub fn grid(&self) -> &GridParams {
        &self.grid
    }

    pub fn iminus(&self) -> &IndefMatrix {
        &self.iminus
    }

    /// `T'(jh)` for `j = -M..=N`.
    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    /// `h I⁽⁻¹⁾ (D v)`.
    fn step(&self, v: &[f64]) -> Vec<f64> {
        let scaled: Vec<f64> = v.iter().zip(&self.diag).map(|(a, w)| a * w).collect();
        self.integrate_scaled(&scaled)
    }

    /// `h I⁽⁻¹⁾ w` for an already `D`-scaled vector.
    fn integrate_scaled(&self, w: &[f64]) -> Vec<f64> {
        let h = self.grid.h;
        self.iminus.matvec(w).into_iter().map(|x| h * x).collect()
    }

    /// `A^order v` by repeated matrix–vector products.
    pub fn apply(&self, v: &NodeVector, order: usize) -> Result<NodeVector> {
        if v.len() != self.grid.order() {
            return Err(Error::Contract(format!(
                "node vector has length {}, operator order is {}",
                v.len(),
                self.grid.order()
            )));
        }
        if order == 0 {
            return Err(Error::Contract("integration order must be at least 1".into()));
        }
        let mut cur = v.values.clone();
        for _ in 0..order {
            cur = self.step(&cur);
        }
        Ok(NodeVector { values: cur })
    }

    /// `A^order f_m` starting from the transformed samples `F = D f_m`.
    pub fn apply_sampled(&self, s: &SampledIntegrand, order: usize) -> Result<Vec<f64>> {
        if s.grid() != &self.grid || s.transform() != self.transform {
            return Err(Error::Contract(
                "sampled integrand was built on a different grid or transform".into(),
            ));
        }
        if order == 0 {
            return Err(Error::Contract("integration order must be at least 1".into()));
        }
        let mut cur = self.integrate_scaled(s.values());
        for _ in 1..order {
            cur = self.step(&cur);
        }
        Ok(cur)
    }
}

pub fn build_operator(transform: Transform, grid: GridParams) -> IntegrationOperator {
    IntegrationOperator::new(transform, grid)
}

/// `η(T(kh))` and `1 - η(T(kh))` at every node, from accurate complements.
#[derive(Debug, Clone)]
struct BoundaryNodes {
    eta: Vec<f64>,
    co_eta: Vec<f64>,
}

impl BoundaryNodes {
    fn new(transform: Transform, grid: &GridParams) -> Self {
        let (eta, co_eta) = grid
            .indices()
            .map(|k| {
                let p = transform.point(grid.node(k));
                (0.5 * p.one_plus_x, 0.5 * p.one_minus_x)
            })
            .unzip();
        Self { eta, co_eta }
    }
}

/// Overwrites the two boundary entries of a sinc row with `ω_{-M}`, `ω_N`.
fn correct_boundaries(
    row: &mut [f64],
    nodes: &BoundaryNodes,
    eta_x: f64,
    co_eta_x: f64,
    left: LeftBoundary,
) {
    let last = row.len() - 1;
    let right_sum: f64 = row[..last].iter().zip(&nodes.eta[..last]).map(|(s, e)| s * e).sum();
    let left_sum: f64 = row[1..].iter().zip(&nodes.co_eta[1..]).map(|(s, e)| s * e).sum();
    row[last] = (eta_x - right_sum) / nodes.eta[last];
    if left == LeftBoundary::Corrected {
        row[0] = (co_eta_x - left_sum) / nodes.co_eta[0];
    }
}

/// The basis `ω_{-M}(x), …, ω_N(x)`.
pub fn omega_weights(
    transform: Transform,
    grid: &GridParams,
    x: f64,
    left: LeftBoundary,
) -> Result<Vec<f64>> {
    if !(x.abs() < 1.0) {
        return Err(domain(
            "omega_weights",
            format!("x = {x} is outside the open interval (-1, 1)"),
        ));
    }
    let t = transform.inverse(x)?;
    let mut row = vec![0.0; grid.order()];
    sinc_row(t / grid.h, grid.first_index(), &mut row);
    let nodes = BoundaryNodes::new(transform, grid);
    correct_boundaries(&mut row, &nodes, 0.5 * (1.0 + x), 0.5 * (1.0 - x), left);
    Ok(row)
}

/// [`omega_weights`] at `x = T(t)`, given the transformed variable `t`.
///
/// Usable at nodes whose image has rounded to `±1`.
pub fn omega_weights_at(
    transform: Transform,
    grid: &GridParams,
    t: f64,
    left: LeftBoundary,
) -> Vec<f64> {
    let mut row = vec![0.0; grid.order()];
    sinc_row(t / grid.h, grid.first_index(), &mut row);
    let nodes = BoundaryNodes::new(transform, grid);
    let p = transform.point(t);
    correct_boundaries(&mut row, &nodes, 0.5 * p.one_plus_x, 0.5 * p.one_minus_x, left);
    row
}

/// Formula SE3/DE3 with the coefficient vector `A^order f_m` cached.
#[derive(Debug, Clone)]
pub struct MatrixFormula {
    transform: Transform,
    grid: GridParams,
    coefficients: Vec<f64>,
    nodes: BoundaryNodes,
    left: LeftBoundary,
    /// Coefficients, `η` and `1 - η` node values times `(-1)^i`.
    signed: [Vec<f64>; 3],
}

impl MatrixFormula {
    pub fn new(s: &SampledIntegrand, order: usize, left: LeftBoundary) -> Result<Self> {
        let op = IntegrationOperator::new(s.transform(), *s.grid());
        Self::with_operator(&op, s, order, left)
    }

    pub fn with_operator(
        op: &IntegrationOperator,
        s: &SampledIntegrand,
        order: usize,
        left: LeftBoundary,
    ) -> Result<Self> {
        let coefficients = op.apply_sampled(s, order)?;
        Ok(Self::from_coefficients(op.transform, op.grid, coefficients, left))
    }

    /// Wraps a precomputed coefficient vector (e.g. from [`IntegrationOperator::apply`]).
    pub fn from_coefficients(
        transform: Transform,
        grid: GridParams,
        coefficients: Vec<f64>,
        left: LeftBoundary,
    ) -> Self {
        assert_eq!(coefficients.len(), grid.order());
        let nodes = BoundaryNodes::new(transform, &grid);
        let first = grid.first_index();
        let signed = [
            alternating(first, &coefficients),
            alternating(first, &nodes.eta),
            alternating(first, &nodes.co_eta),
        ];
        Self {
            transform,
            nodes,
            grid,
            coefficients,
            left,
            signed,
        }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x.abs() < 1.0) {
            return Err(domain(
                "indef_matrix",
                format!("x = {x} is outside the open interval (-1, 1)"),
            ));
        }
        let t = self.transform.inverse(x)?;
        Ok(self.combine(t, 0.5 * (1.0 + x), 0.5 * (1.0 - x)))
    }

    /// Evaluation at `x = T(t)`.
    pub fn eval_at(&self, t: f64) -> f64 {
        let p = self.transform.point(t);
        self.combine(t, 0.5 * p.one_plus_x, 0.5 * p.one_minus_x)
    }

    /// `ω(x) · c` in one pass over the nodes.
    fn combine(&self, t: f64, eta_x: f64, co_eta_x: f64) -> f64 {
        let q = t / self.grid.h;
        let Some(scale) = sinc_scale(q) else {
            return self.combine_at_node(q, eta_x, co_eta_x);
        };
        let first = self.grid.first_index();
        let last = self.coefficients.len() - 1;
        let [c, e, ce] = &self.signed;
        let (mut interior, mut right_sum, mut left_sum) = (0.0, 0.0, 0.0);
        for p in 1..last {
            let r = 1.0 / (q - (first + p as i64) as f64);
            interior += c[p] * r;
            right_sum += e[p] * r;
            left_sum += ce[p] * r;
        }
        let r_first = 1.0 / (q - first as f64);
        let r_last = 1.0 / (q - (first + last as i64) as f64);
        right_sum = scale * (right_sum + e[0] * r_first);
        left_sum = scale * (left_sum + ce[last] * r_last);
        let omega_right = (eta_x - right_sum) / self.nodes.eta[last];
        let omega_left = match self.left {
            LeftBoundary::Corrected => (co_eta_x - left_sum) / self.nodes.co_eta[0],
            LeftBoundary::PlainSinc => scale * r_first * if first.rem_euclid(2) == 0 { 1.0 } else { -1.0 },
        };
        scale * interior + self.coefficients[last] * omega_right + self.coefficients[0] * omega_left
    }

    /// [`Self::combine`] at integer `t/h`, where the factored kernel is singular.
    fn combine_at_node(&self, q: f64, eta_x: f64, co_eta_x: f64) -> f64 {
        let row = ShiftedSinc::new(q);
        let first = self.grid.first_index();
        let last = self.coefficients.len() - 1;
        let mut interior = 0.0;
        let mut right_sum = 0.0;
        let mut left_sum = 0.0;
        let mut s_first = 0.0;
        for p in 0..=last {
            let s = row.at(first + p as i64);
            if p == 0 {
                s_first = s;
            } else {
                left_sum += self.nodes.co_eta[p] * s;
            }
            if p < last {
                right_sum += self.nodes.eta[p] * s;
                if p > 0 {
                    interior += self.coefficients[p] * s;
                }
            }
        }
        let omega_right = (eta_x - right_sum) / self.nodes.eta[last];
        let omega_left = match self.left {
            LeftBoundary::Corrected => (co_eta_x - left_sum) / self.nodes.co_eta[0],
            LeftBoundary::PlainSinc => s_first,
        };
        interior + self.coefficients[last] * omega_right + self.coefficients[0] * omega_left
    }
}

/// One-shot SE3/DE3 evaluation of the `order`-fold integral at `x`.
pub fn indef_matrix<I: Integrand + ?Sized>(
    f: &I,
    transform: Transform,
    grid: GridParams,
    x: f64,
    order: usize,
    left: LeftBoundary,
) -> Result<f64> {
    let s = SampledIntegrand::sample(f, transform, grid)?;
    MatrixFormula::new(&s, order, left)?.eval(x)
}
