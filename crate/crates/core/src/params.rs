//! Mesh size and truncation selection from the analyticity parameters.
//!
//! SE: `h = √(πd/(μn))`, DE: `h = log(2dn/μ)/n`, with `μ = min{α, β}`.

use crate::error::{Error, Result};
use crate::transform::{Family, Transform};

/// Endpoint exponents `α`, `β` and strip half-width `d` of an integrand
/// satisfying `|f(z)| ≤ K |z + 1|^{α-1} |z - 1|^{β-1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticityParams {
    alpha: f64,
    beta: f64,
    d: f64,
    k: Option<f64>,
}

impl AnalyticityParams {
    pub fn new(alpha: f64, beta: f64, d: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta)] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::Parameter(format!("{name} = {v} must lie in (0, 1]")));
            }
        }
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::Parameter(format!("d = {d} must be > 0")));
        }
        Ok(Self {
            alpha,
            beta,
            d,
            k: None,
        })
    }

    /// Attaches the bound constant `K`.
    pub fn with_k(mut self, k: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::Parameter(format!("K = {k} must be > 0")));
        }
        self.k = Some(k);
        Ok(self)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn k(&self) -> Option<f64> {
        self.k
    }

    pub fn mu(&self) -> f64 {
        self.alpha.min(self.beta)
    }

    /// Checks `d` against the family's strip limit.
    pub fn validate_for(&self, family: Family) -> Result<()> {
        let limit = Transform::new(family).max_strip_halfwidth();
        if self.d >= limit {
            return Err(Error::Parameter(format!(
                "d = {} must be below {limit} for the {family} transformation",
                self.d
            )));
        }
        Ok(())
    }
}

/// How the truncation indices are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Truncation {
    /// `M`, `N` from the α/β-dependent rules.
    #[default]
    Theorem,
    /// `M = N = n`, as required by the double-sum formulas.
    Symmetric,
}

/// Discretization record: nodes `jh` for `j = -M..=N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridParams {
    pub n: usize,
    pub h: f64,
    /// `M`: number of nodes left of the origin.
    pub left: usize,
    /// `N`: number of nodes right of the origin.
    pub right: usize,
}

impl GridParams {
    pub fn new(n: usize, h: f64, left: usize, right: usize) -> Result<Self> {
        if n == 0 || left == 0 || right == 0 {
            return Err(Error::Parameter(format!(
                "grid indices must be positive (n = {n}, M = {left}, N = {right})"
            )));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::Parameter(format!("mesh size h = {h} must be > 0")));
        }
        if left.max(right) != n {
            return Err(Error::Parameter(format!(
                "max(M, N) = {} must equal n = {n}",
                left.max(right)
            )));
        }
        Ok(Self { n, h, left, right })
    }

    /// Symmetric grid `M = N = n`.
    pub fn symmetric(n: usize, h: f64) -> Result<Self> {
        Self::new(n, h, n, n)
    }

    /// Number of nodes `m = M + N + 1`.
    pub fn order(&self) -> usize {
        self.left + self.right + 1
    }

    pub fn is_symmetric(&self) -> bool {
        self.left == self.right
    }

    /// Logical node indices `-M..=N`.
    pub fn indices(&self) -> impl DoubleEndedIterator<Item = i64> + Clone {
        -(self.left as i64)..=self.right as i64
    }

    pub fn first_index(&self) -> i64 {
        -(self.left as i64)
    }

    pub fn node(&self, j: i64) -> f64 {
        j as f64 * self.h
    }
}

pub fn select_h(family: Family, ap: &AnalyticityParams, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Parameter("n must be at least 1".into()));
    }
    let n = n as f64;
    let (d, mu) = (ap.d(), ap.mu());
    match family {
        Family::Se => Ok((std::f64::consts::PI * d / (mu * n)).sqrt()),
        Family::De => {
            let arg = 2.0 * d * n / mu;
            if arg <= 1.0 {
                return Err(Error::Parameter(format!(
                    "DE mesh size needs 2dn/mu > 1, got {arg}"
                )));
            }
            Ok(arg.ln() / n)
        }
    }
}

/// Truncation indices `(M, N)`; ties `α = β` take the `μ = α` branch.
pub fn select_mn(
    family: Family,
    ap: &AnalyticityParams,
    n: usize,
    h: f64,
) -> Result<(usize, usize)> {
    if n == 0 {
        return Err(Error::Parameter("n must be at least 1".into()));
    }
    if !(h > 0.0) {
        return Err(Error::Parameter(format!("mesh size h = {h} must be > 0")));
    }
    let (alpha, beta) = (ap.alpha(), ap.beta());
    // `small` plays the role of μ; the other index gets shortened.
    let (small, large, mu_is_alpha) = if alpha <= beta {
        (alpha, beta, true)
    } else {
        (beta, alpha, false)
    };
    let shortened = match family {
        Family::Se => ((small / large) * n as f64).ceil() as i64,
        Family::De => n as i64 - ((large / small).ln() / h).floor() as i64,
    };
    if shortened < 1 {
        return Err(Error::Parameter(format!(
            "truncation index {shortened} is not positive; n = {n} is too small for alpha/beta = {}",
            alpha / beta
        )));
    }
    let shortened = shortened as usize;
    Ok(if mu_is_alpha {
        (n, shortened)
    } else {
        (shortened, n)
    })
}

pub fn make_grid(
    family: Family,
    ap: &AnalyticityParams,
    n: usize,
    truncation: Truncation,
) -> Result<GridParams> {
    ap.validate_for(family)?;
    let h = select_h(family, ap, n)?;
    let (left, right) = match truncation {
        Truncation::Theorem => select_mn(family, ap, n, h)?,
        Truncation::Symmetric => (n, n),
    };
    GridParams::new(n, h, left, right)
}
