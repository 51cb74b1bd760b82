//! Special-function kernel: normalized sinc, the sine integral `Si`, the
//! constants `σ_k = Si(πk)/π` and the indefinite-integration basis `J(j, h)`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{domain, Result};

/// Largest `|k|` accepted by [`sigma`].
pub const MAX_SIGMA_INDEX: i64 = 1_000_000;

/// Below this magnitude `Si` is summed from its Maclaurin series; above it the
/// continued fraction for `E1(ix)` is used.
const SERIES_LIMIT: f64 = 4.0;

/// Normalized sinc, `sin(πx)/(πx)` with `sinc(0) = 1`.
pub fn sinc(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(domain("sinc", format!("non-finite argument {x}")));
    }
    Ok(sinc_unchecked(x))
}

pub(crate) fn sinc_unchecked(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    // sin(πx) = (-1)^k sin(π(x - k)) with k the nearest integer; exact zeros
    // at the integers.
    let k = x.round();
    let r = x - k;
    let s = (PI * r).sin();
    let s = if k.rem_euclid(2.0) == 0.0 { s } else { -s };
    s / (PI * x)
}

/// `sinc(q - i)` for integer `i`, sharing one sine evaluation across all `i`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ShiftedSinc {
    q: f64,
    nearest: i64,
    sine: f64,
}

impl ShiftedSinc {
    pub(crate) fn new(q: f64) -> Self {
        let k0 = q.round();
        Self {
            q,
            nearest: k0 as i64,
            sine: (PI * (q - k0)).sin(),
        }
    }

    #[inline]
    pub(crate) fn at(&self, i: i64) -> f64 {
        let z = self.q - i as f64;
        if z == 0.0 {
            1.0
        } else if (self.nearest - i).rem_euclid(2) == 0 {
            self.sine / (PI * z)
        } else {
            -self.sine / (PI * z)
        }
    }
}

/// For non-integer `q`, `sinc(q - i) = scale · (-1)^i / (q - i)` with the
/// returned `scale = (-1)^{k0} sin(π(q - k0)) / π`, `k0 = round(q)`. Sums over
/// `i` then cost one division per term once weights carry `(-1)^i` (see
/// [`alternating`]). `None` at integer `q`, where the identity breaks down.
#[inline]
pub(crate) fn sinc_scale(q: f64) -> Option<f64> {
    let k0 = q.round();
    if q == k0 {
        return None;
    }
    let s = (PI * (q - k0)).sin() / PI;
    Some(if (k0 as i64).rem_euclid(2) == 0 { s } else { -s })
}

/// `w_p (-1)^{first + p}`.
pub(crate) fn alternating(first: i64, w: &[f64]) -> Vec<f64> {
    w.iter()
        .enumerate()
        .map(|(p, &v)| if (first + p as i64).rem_euclid(2) == 0 { v } else { -v })
        .collect()
}

/// Fills `out[p] = sinc(q - (first + p))`.
pub(crate) fn sinc_row(q: f64, first: i64, out: &mut [f64]) {
    let row = ShiftedSinc::new(q);
    for (p, slot) in out.iter_mut().enumerate() {
        *slot = row.at(first + p as i64);
    }
}

/// Sine integral `Si(x) = ∫_0^x sin(t)/t dt`.
pub fn sine_integral(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(domain("sine_integral", format!("non-finite argument {x}")));
    }
    Ok(si(x))
}

pub(crate) fn si(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax <= SERIES_LIMIT {
        si_series(ax)
    } else {
        si_continued_fraction(ax)
    };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

/// `Σ (-1)^m x^{2m+1} / ((2m+1)(2m+1)!)`, Neumaier-compensated.
fn si_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut power = x; // (-1)^m x^{2m+1} / (2m+1)!
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for m in 0..64u32 {
        let odd = f64::from(2 * m + 1);
        let term = power / odd;
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
        power *= -x2 / ((odd + 1.0) * (odd + 2.0));
    }
    sum + comp
}

/// `Si(x) = π/2 + Im E1(ix)` for `x > 0`, with `E1(ix)` from its continued
/// fraction evaluated by the modified Lentz method.
fn si_continued_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-16;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for k in 1..1000u32 {
        let a = -f64::from(k) * f64::from(k);
        b += 2.0;
        d = (d * a + b).inv();
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < EPS {
            break;
        }
    }
    let (s, co) = x.sin_cos();
    let e1 = h * Complex64::new(co, -s);
    FRAC_PI_2 + e1.im
}

/// `σ_k = ∫_0^k sinc(x) dx = Si(πk)/π`.
pub fn sigma(k: i64) -> Result<f64> {
    if k.abs() > MAX_SIGMA_INDEX {
        return Err(domain(
            "sigma",
            format!("|k| = {} exceeds {MAX_SIGMA_INDEX}", k.unsigned_abs()),
        ));
    }
    Ok(sigma_unchecked(k))
}

fn sigma_unchecked(k: i64) -> f64 {
    si(PI * k as f64) / PI
}

/// `σ_0, …, σ_{len-1}`, computed once; negative indices follow from oddness.
#[derive(Debug, Clone)]
pub struct SigmaTable {
    values: Vec<f64>,
}

impl SigmaTable {
    pub fn new(len: usize) -> Self {
        let values = (0..len as i64).map(sigma_unchecked).collect();
        Self { values }
    }

    /// Number of stored non-negative indices.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `σ_k`; panics if `|k|` is outside the table.
    pub fn get(&self, k: i64) -> f64 {
        let v = self.values[k.unsigned_abs() as usize];
        if k < 0 {
            -v
        } else {
            v
        }
    }
}

/// Index and mesh size of one basis function `J(j, h)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SincBasisParams {
    j: i64,
    h: f64,
}

impl SincBasisParams {
    pub fn new(j: i64, h: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(domain("SincBasisParams", format!("mesh size h = {h} must be > 0")));
        }
        Ok(Self { j, h })
    }

    pub fn j(&self) -> i64 {
        self.j
    }

    pub fn h(&self) -> f64 {
        self.h
    }
}

/// `J(j,h)(t) = (h/π){π/2 + Si(π(t - jh)/h)}`, the integral of the `j`-th
/// sinc translate from `-∞` to `t`. Not clamped to `[0, h]`.
pub fn j_basis(params: SincBasisParams, t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(domain("j_basis", format!("non-finite argument {t}")));
    }
    let SincBasisParams { j, h } = params;
    let arg = PI * (t - j as f64 * h) / h;
    Ok(h / PI * (FRAC_PI_2 + si(arg)))
}
