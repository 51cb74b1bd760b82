//! The tanh (SE) and double-exponential (DE) maps of the real line onto
//! `(-1, 1)`.
//!
//! SE: `ψ(u) = tanh(u/2)`. DE: `φ(u) = tanh((π/2) sinh u)`.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Single-exponential (tanh) transformation.
    Se,
    /// Double-exponential transformation.
    De,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Se => "SE",
            Family::De => "DE",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "se" => Ok(Family::Se),
            "de" => Ok(Family::De),
            _ => Err(Error::Parameter(format!("unknown transformation family {s:?}"))),
        }
    }
}

/// A transformed abscissa together with its distances to both endpoints.
///
/// `one_plus_x` and `one_minus_x` are computed from the transformed variable
/// rather than by subtraction, so they stay accurate (and nonzero) long after
/// `x` itself has rounded to `±1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub one_plus_x: f64,
    pub one_minus_x: f64,
}

impl Point {
    /// A point given directly in `x`; complements by subtraction.
    pub fn from_x(x: f64) -> Self {
        Self {
            x,
            one_plus_x: 1.0 + x,
            one_minus_x: 1.0 - x,
        }
    }

    /// True when either complement has underflowed to zero.
    pub fn at_endpoint(&self) -> bool {
        self.one_plus_x == 0.0 || self.one_minus_x == 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Transform {
    family: Family,
}

impl Transform {
    pub const SE: Transform = Transform { family: Family::Se };
    pub const DE: Transform = Transform { family: Family::De };

    pub fn new(family: Family) -> Self {
        Self { family }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Largest admissible strip half-width `d`: π for SE, π/2 for DE.
    pub fn max_strip_halfwidth(&self) -> f64 {
        match self.family {
            Family::Se => PI,
            Family::De => FRAC_PI_2,
        }
    }

    pub fn forward(&self, u: f64) -> Result<f64> {
        if !u.is_finite() {
            return Err(domain("forward", format!("non-finite argument {u}")));
        }
        Ok(self.forward_unchecked(u))
    }

    pub(crate) fn forward_unchecked(&self, u: f64) -> f64 {
        match self.family {
            Family::Se => (0.5 * u).tanh(),
            Family::De => (FRAC_PI_2 * u.sinh()).tanh(),
        }
    }

    /// `ψ'(u) = 1/(2 cosh²(u/2))` or `φ'(u) = (π/2) cosh u / cosh²((π/2) sinh u)`.
    ///
    /// Underflows to exactly zero far out in the tails, never NaN.
    pub fn derivative(&self, u: f64) -> f64 {
        match self.family {
            Family::Se => {
                let e = (-u.abs()).exp();
                2.0 * e / ((1.0 + e) * (1.0 + e))
            }
            Family::De => {
                let e = (-2.0 * (FRAC_PI_2 * u.sinh()).abs()).exp();
                if e == 0.0 {
                    return 0.0;
                }
                FRAC_PI_2 * u.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e))
            }
        }
    }

    /// Inverse map on the open interval; `±1` and beyond are rejected.
    pub fn inverse(&self, x: f64) -> Result<f64> {
        if !(x.abs() < 1.0) {
            return Err(domain(
                "inverse",
                format!("x = {x} is outside the open interval (-1, 1)"),
            ));
        }
        Ok(match self.family {
            Family::Se => 2.0 * x.atanh(),
            Family::De => (FRAC_2_PI * x.atanh()).asinh(),
        })
    }

    /// `T(u)` with endpoint complements `1 ± T(u)`.
    pub fn point(&self, u: f64) -> Point {
        // z = argument of tanh, 1 - tanh(z) = 2e/(1+e) with e = exp(-2z)
        let z = match self.family {
            Family::Se => 0.5 * u,
            Family::De => FRAC_PI_2 * u.sinh(),
        };
        let e = (-2.0 * z.abs()).exp();
        let near = 2.0 * e / (1.0 + e);
        let far = 2.0 / (1.0 + e);
        let (one_plus_x, one_minus_x) = if z >= 0.0 { (far, near) } else { (near, far) };
        Point {
            x: z.tanh(),
            one_plus_x,
            one_minus_x,
        }
    }
}

/// `η(x) = (1 + x)/2`.
pub fn eta(x: f64) -> f64 {
    0.5 * (1.0 + x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn forward_examples() {
        assert_eq!(Transform::SE.forward(0.0).unwrap(), 0.0);
        assert_eq!(Transform::DE.forward(0.0).unwrap(), 0.0);
        assert!((Transform::SE.forward(2.0).unwrap() - 0.761_594_155_955_764_9).abs() < 1e-16);
        assert!(Transform::SE.forward(f64::NAN).is_err());
        assert!(Transform::DE.forward(f64::NEG_INFINITY).is_err());
    }

    #[test]
    fn strip_halfwidth() {
        assert_eq!(Transform::SE.max_strip_halfwidth(), PI);
        assert_eq!(Transform::DE.max_strip_halfwidth(), FRAC_PI_2);
        assert_eq!(Transform::new(Family::De), Transform::DE);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(Transform::SE.derivative(0.0), 0.5);
        assert_eq!(Transform::DE.derivative(0.0), FRAC_PI_2);
        let eps = 1e-6;
        let de = Transform::DE;
        let fd = (de.forward(1.0 + eps).unwrap() - de.forward(1.0 - eps).unwrap()) / (2.0 * eps);
        assert!((de.derivative(1.0) - fd).abs() < 1e-7);
    }

    #[test]
    fn derivative_tails_underflow_cleanly() {
        for u in [10.0, 50.0, 400.0, 800.0, 1e6] {
            for t in [Transform::SE, Transform::DE] {
                let d = t.derivative(u);
                assert!(d >= 0.0 && d.is_finite(), "{t:?} u={u}: {d}");
                assert_eq!(d, t.derivative(-u));
            }
        }
        assert_eq!(Transform::DE.derivative(10.0), 0.0);
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let eps = 1e-6;
        for t in [Transform::SE, Transform::DE] {
            for i in 0..100 {
                let u = -3.0 + 6.0 * (i as f64 + 0.5) / 100.0;
                // differentiate the endpoint complement to keep the difference well conditioned
                let (a, b) = (t.point(u + eps), t.point(u - eps));
                let fd = if u < 0.0 {
                    (a.one_plus_x - b.one_plus_x) / (2.0 * eps)
                } else {
                    (b.one_minus_x - a.one_minus_x) / (2.0 * eps)
                };
                let d = t.derivative(u);
                assert!(((d - fd) / d).abs() < 1e-6, "{t:?} u={u}");
            }
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Transform::SE.inverse(0.0).unwrap(), 0.0);
        assert!((Transform::SE.inverse(0.5).unwrap() - 3f64.ln()).abs() < 1e-15);
        let x = Transform::DE.forward(1.25).unwrap();
        assert!((Transform::DE.inverse(x).unwrap() - 1.25).abs() < 1e-13);
        for bad in [1.0, -1.0, 1.5, f64::NAN] {
            assert!(Transform::SE.inverse(bad).is_err());
            assert!(Transform::DE.inverse(bad).is_err());
        }
    }

    #[test]
    fn roundtrip_in_x() {
        for t in [Transform::SE, Transform::DE] {
            for i in 0..=200 {
                let x = (-1.0 + 1e-10) + (2.0 - 2e-10) * i as f64 / 200.0;
                let back = t.forward_unchecked(t.inverse(x).unwrap());
                assert!((back - x).abs() <= 1e-14 * x.abs().max(1e-300) + 1e-300, "{t:?} x={x}");
            }
        }
    }

    #[test]
    fn roundtrip_in_u() {
        for (t, lim) in [(Transform::SE, 5.0), (Transform::DE, 2.0)] {
            for i in 0..200 {
                let u = -lim + 2.0 * lim * (i as f64 + 0.5) / 200.0;
                let back = t.inverse(t.forward_unchecked(u)).unwrap();
                assert!((back - u).abs() < 1e-12, "{t:?} u={u}");
            }
        }
    }

    #[test]
    fn point_complements() {
        for t in [Transform::SE, Transform::DE] {
            for i in 0..=40 {
                let u = -4.0 + 0.2 * i as f64;
                let p = t.point(u);
                assert_eq!(p.x, t.forward_unchecked(u));
                assert!((p.one_plus_x - (1.0 + p.x)).abs() < 1e-15);
                assert!((p.one_minus_x - (1.0 - p.x)).abs() < 1e-15);
            }
            // far tail: x has rounded to 1 but the complement has not
            let p = t.point(if t.family() == Family::Se { 60.0 } else { 5.0 });
            assert_eq!(p.x, 1.0);
            assert!(p.one_minus_x > 0.0 && p.one_minus_x < 1e-20);
            assert!(!p.at_endpoint());
        }
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta(-1.0), 0.0);
        assert_eq!(eta(1.0), 1.0);
        assert_eq!(eta(0.0), 0.5);
    }

    #[test]
    fn family_parse() {
        assert_eq!("SE".parse::<Family>().unwrap(), Family::Se);
        assert_eq!("de".parse::<Family>().unwrap(), Family::De);
        assert!("xe".parse::<Family>().is_err());
    }

    proptest! {
        #[test]
        fn forward_is_odd(u in -20.0f64..20.0) {
            for t in [Transform::SE, Transform::DE] {
                prop_assert_eq!(t.forward_unchecked(-u), -t.forward_unchecked(u));
            }
        }

        #[test]
        fn forward_is_increasing(a in -2.0f64..2.0, gap in 1e-3f64..0.5) {
            for t in [Transform::SE, Transform::DE] {
                prop_assert!(t.forward_unchecked(a) < t.forward_unchecked(a + gap));
            }
        }
    }
}
