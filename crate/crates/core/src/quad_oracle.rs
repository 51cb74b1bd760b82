//! Brute-force reference quadrature used only by tests.
//!
//! Composite Gauss-Legendre on uniform panels, doubling the panel count until
//! two successive estimates agree. Independent of the sinc machinery.
#![allow(dead_code)]

use std::f64::consts::PI;

const POINTS: usize = 20;

fn gauss_legendre() -> ([f64; POINTS], [f64; POINTS]) {
    let mut nodes = [0.0; POINTS];
    let mut weights = [0.0; POINTS];
    let n = POINTS as f64;
    for i in 0..POINTS {
        let mut x = (PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=POINTS {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn composite<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize) -> f64 {
    let (nodes, weights) = gauss_legendre();
    let width = (b - a) / panels as f64;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for p in 0..panels {
        let lo = a + p as f64 * width;
        let mid = lo + 0.5 * width;
        let mut panel = 0.0;
        for (x, w) in nodes.iter().zip(weights.iter()) {
            panel += w * f(mid + 0.5 * width * x);
        }
        panel *= 0.5 * width;
        let y = panel - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

/// `∫_a^b f`, refined until successive estimates agree to `tol` (absolute for
/// values below 1, relative above).
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let mut panels = ((b - a).abs().ceil() as usize).max(1);
    let mut prev = composite(&f, a, b, panels);
    for _ in 0..12 {
        panels *= 2;
        let next = composite(&f, a, b, panels);
        if (next - prev).abs() <= tol * next.abs().max(1.0) {
            return next;
        }
        prev = next;
    }
    prev
}

/// Reference `Si(x)` by direct quadrature of `sin t / t`.
pub fn sine_integral(x: f64) -> f64 {
    let v = integrate(|t| t.sin() / t, 0.0, x.abs(), 1e-15);
    if x < 0.0 {
        -v
    } else {
        v
    }
}
