//! Literal reference implementations shared by the integration tests.
//!
//! Everything here is written straight from the defining sums, without the
//! caching, complement tricks or special-function shortcuts of the library.
#![allow(dead_code)]

use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::PI;

use sinc_indef::{Family, GridParams, Integrand, Point};

#[path = "../../src/quad_oracle.rs"]
pub mod quad_oracle;

pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

/// `T(u)` and `T'(u)` from the textbook formulas.
pub fn transform(family: Family, u: f64) -> (f64, f64) {
    match family {
        Family::Se => {
            let x = (u / 2.0).tanh();
            (x, 0.5 / (u / 2.0).cosh().powi(2))
        }
        Family::De => {
            let s = PI / 2.0 * u.sinh();
            (s.tanh(), PI / 2.0 * u.cosh() / s.cosh().powi(2))
        }
    }
}

/// `(x, 1 + x, 1 - x)` at `x = T(u)`, with the complement that is close to
/// zero taken from `1 - tanh|s| = 2e^{-2|s|} / (1 + e^{-2|s|})`.
pub fn node_point(family: Family, u: f64) -> (f64, f64, f64) {
    let s = match family {
        Family::Se => u / 2.0,
        Family::De => PI / 2.0 * u.sinh(),
    };
    let e = (-2.0 * s.abs()).exp();
    let small = 2.0 * e / (1.0 + e);
    let x = s.tanh();
    if s < 0.0 {
        (x, small, 2.0 - small)
    } else {
        (x, 2.0 - small, small)
    }
}

/// An integrand written in terms of `(x, 1 + x, 1 - x)`.
pub type PointFn = fn(f64, f64, f64) -> f64;

pub fn inverse(family: Family, x: f64) -> f64 {
    match family {
        Family::Se => 2.0 * x.atanh(),
        Family::De => (2.0 / PI * x.atanh()).asinh(),
    }
}

pub fn eta(x: f64) -> f64 {
    (1.0 + x) / 2.0
}

thread_local! {
    static DELTA: RefCell<HashMap<i64, f64>> = RefCell::new(HashMap::new());
}

/// `δ_{ij} = 1/2 + Si(π(i-j))/π` with `Si` from quadrature, memoized on `i - j`.
pub fn delta(k: i64) -> f64 {
    DELTA.with(|m| {
        *m.borrow_mut()
            .entry(k)
            .or_insert_with(|| 0.5 + quad_oracle::sine_integral(PI * k as f64) / PI)
    })
}

/// `f(T(jh)) T'(jh)` at every node.
pub fn transformed_samples(family: Family, grid: &GridParams, f: PointFn) -> Vec<f64> {
    grid.indices().map(|j| sample_at(family, grid.h, j, f)).collect()
}

fn sample_at(family: Family, h: f64, j: i64, f: PointFn) -> f64 {
    let u = j as f64 * h;
    let (x, a, b) = node_point(family, u);
    f(x, a, b) * transform(family, u).1
}

/// The η-corrected basis `ω_{-M}(x), …, ω_N(x)`.
pub fn omega(family: Family, grid: &GridParams, x: f64) -> Vec<f64> {
    let h = grid.h;
    let t = inverse(family, x);
    let idx: Vec<i64> = grid.indices().collect();
    let s = |j: i64| sinc(t / h - j as f64);
    let eta_node = |j: i64| node_point(family, j as f64 * h).1 / 2.0;
    let co_eta_node = |j: i64| node_point(family, j as f64 * h).2 / 2.0;
    let (first, last) = (idx[0], *idx.last().unwrap());
    idx.iter()
        .map(|&i| {
            if i == first {
                let mut v = 1.0 - eta(x);
                for &j in &idx[1..] {
                    v -= co_eta_node(j) * s(j);
                }
                v / co_eta_node(first)
            } else if i == last {
                let mut v = eta(x);
                for &j in &idx[..idx.len() - 1] {
                    v -= eta_node(j) * s(j);
                }
                v / eta_node(last)
            } else {
                s(i)
            }
        })
        .collect()
}

/// `Σ_i (h Σ_j δ_{ij} f(T(jh)) T'(jh)) ω_i(x)`, three nested loops.
pub fn triple_loop(family: Family, grid: &GridParams, f: PointFn, x: f64) -> f64 {
    let idx: Vec<i64> = grid.indices().collect();
    let w = omega(family, grid, x);
    let mut total = 0.0;
    for (p, &i) in idx.iter().enumerate() {
        let mut inner = 0.0;
        for &j in &idx {
            inner += delta(i - j) * sample_at(family, grid.h, j, f);
        }
        total += grid.h * inner * w[p];
    }
    total
}

/// `h Σ_i Σ_j (F_j - I* T'(jh)/2) δ_{ij} sinc(t/h - i) + I* η(x)`, recomputing
/// the inner sum for every `x`.
pub fn naive_doublesum(family: Family, grid: &GridParams, f: PointFn, x: f64) -> f64 {
    let h = grid.h;
    let idx: Vec<i64> = grid.indices().collect();
    let total: f64 = h * transformed_samples(family, grid, f).iter().sum::<f64>();
    let t = inverse(family, x);
    let mut sum = 0.0;
    for &i in &idx {
        for &j in &idx {
            let dxj = transform(family, j as f64 * h).1;
            let fj = sample_at(family, h, j, f);
            sum += (fj - 0.5 * total * dxj) * delta(i - j) * sinc(t / h - i as f64);
        }
    }
    h * sum + total * eta(x)
}

/// Least-squares slope of `y` against `x`.
pub fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

/// Adapts a [`PointFn`] to the library's integrand trait.
pub struct Lit(pub PointFn);

impl Integrand for Lit {
    fn eval(&self, x: f64) -> f64 {
        (self.0)(x, 1.0 + x, 1.0 - x)
    }

    fn eval_point(&self, p: &Point) -> f64 {
        (self.0)(p.x, p.one_plus_x, p.one_minus_x)
    }
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}
