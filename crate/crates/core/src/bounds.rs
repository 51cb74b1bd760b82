//! Closed-form error-bound expressions and convergence-rate curves.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{domain, Error, Result};
use crate::params::AnalyticityParams;
use crate::transform::Family;

/// Inputs for overlaying a theoretical bound on measured errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInputs {
    pub family: Family,
    pub ap: AnalyticityParams,
    pub n: usize,
    /// `Λ(f, d)`, if known.
    pub lambda: Option<f64>,
}

/// Discretization error of sinc indefinite integration on the real line:
/// `4h e^{-πd/h} / (πd (1 - e^{-2πd/h})) · Λ`.
pub fn discretization_bound(h: f64, d: f64, lambda: f64) -> Result<f64> {
    if !(h > 0.0) || !(d > 0.0) || !(lambda >= 0.0) {
        return Err(Error::Parameter(format!(
            "discretization bound needs h > 0, d > 0, lambda >= 0 (got h = {h}, d = {d}, lambda = {lambda})"
        )));
    }
    let a = PI * d / h;
    // 1 - e^{-2a} without cancellation for small a
    let denom = PI * d * -(-2.0 * a).exp_m1();
    Ok(4.0 * h * (-a).exp() / denom * lambda)
}

/// Upper bound on `Λ(F, d)` for the DE-transformed integrand
/// `F(u) = f(φ(u)) φ'(u)`:
/// `2^{α+β+1} K / (μ cos^{α+β}((π/2) sin d) cos d)`.
///
/// Requires `K` on `ap`.
pub fn lambda_bound_de(ap: &AnalyticityParams) -> Result<f64> {
    let k = ap
        .k()
        .ok_or_else(|| Error::Parameter("lambda_bound_de needs the constant K".into()))?;
    let d = ap.d();
    if d >= FRAC_PI_2 {
        return Err(domain(
            "lambda_bound_de",
            format!("d = {d} must be below pi/2"),
        ));
    }
    let (alpha, beta) = (ap.alpha(), ap.beta());
    let inner = (FRAC_PI_2 * d.sin()).cos();
    Ok(2f64.powf(alpha + beta + 1.0) * k / (ap.mu() * inner.powf(alpha + beta) * d.cos()))
}

/// Optional polynomial prefactor multiplying the exponential rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RatePrefactor {
    #[default]
    None,
    /// `√n`
    SqrtN,
    /// `log(2dn/μ)/n`
    LogOverN,
}

/// Exponential rate without the unknown constant:
/// SE `exp(-√(πdμn))`, DE `exp(-πdn / log(2dn/μ))`.
pub fn rate_curve(family: Family, ap: &AnalyticityParams, n: usize) -> Result<f64> {
    rate_curve_with(family, ap, n, RatePrefactor::None)
}

pub fn rate_curve_with(
    family: Family,
    ap: &AnalyticityParams,
    n: usize,
    prefactor: RatePrefactor,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::Parameter("n must be at least 1".into()));
    }
    let (d, mu, nf) = (ap.d(), ap.mu(), n as f64);
    let log_term = (2.0 * d * nf / mu).ln();
    let rate = match family {
        Family::Se => (-(PI * d * mu * nf).sqrt()).exp(),
        Family::De => {
            if log_term <= 0.0 {
                return Err(Error::Parameter(format!(
                    "DE rate needs 2dn/mu > 1, got {}",
                    2.0 * d * nf / mu
                )));
            }
            (-PI * d * nf / log_term).exp()
        }
    };
    let factor = match prefactor {
        RatePrefactor::None => 1.0,
        RatePrefactor::SqrtN => nf.sqrt(),
        RatePrefactor::LogOverN => log_term / nf,
    };
    Ok(factor * rate)
}
