//! Sinc-based numerical indefinite integration on `(-1, 1)`.
//!
//! Six formulas approximate `∫_{-1}^x f(s) ds`:
//!
//! | formula | transformation | form |
//! |---------|----------------|------|
//! | SE1 / DE1 | tanh / double-exponential | basis functions built from `Si` |
//! | SE2 / DE2 | tanh / double-exponential | double sum over `σ_k`, elementary basis |
//! | SE3 / DE3 | tanh / double-exponential | `ω(x) · A f`, with `A` powers for repeated integrals |
//!
//! ```
//! use sinc_indef::bench::{builtin_problem, FormulaId};
//!
//! let problem = builtin_problem(1).unwrap();
//! let approx = FormulaId::De3.build(&problem, 40, &Default::default()).unwrap();
//! assert!((approx.eval(0.0).unwrap() - 0.5).abs() < 1e-10);
//! ```

// NaN-rejecting guards are written as negated comparisons; 3.14 is the
// deliberate "slightly below pi" strip width.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::approx_constant)]
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod bench;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod matrix_form;
pub mod params;
pub mod pointwise;
pub mod special;
pub mod transform;

#[cfg(test)]
mod quad_oracle;

pub use error::{Error, Result};
pub use matrix_form::{IndefMatrix, IntegrationOperator, LeftBoundary, MatrixFormula, NodeVector};
pub use params::{AnalyticityParams, GridParams, Truncation};
pub use pointwise::{DoubleSum, Integrand, SampledIntegrand};
pub use transform::{Family, Point, Transform};
