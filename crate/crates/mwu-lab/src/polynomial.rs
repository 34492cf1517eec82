//! The two-path family with monomial costs of a common degree p:
//! `logit(x') = logit(x) - a P_b(x)` with `P_b(x) = (1-b) x^p - b (1-x)^p`.
//!
//! P_b is strictly increasing on [0,1] with the unique root
//! x* = b^{1/p} / (b^{1/p} + (1-b)^{1/p}), the interior fixed point of the
//! map. Degree 1 collapses to the linear family: P_b(x) = x - b.

use crate::error::{Error, Result};
use crate::linear::require_interior;
use crate::map::ScalarMap;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolynomialParams {
    a: f64,
    b: f64,
    degree_p: u32,
}

impl PolynomialParams {
    pub fn new(a: f64, b: f64, degree_p: u32) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::Domain(format!(
                "drive strength must be positive and finite, got {a}"
            )));
        }
        if !(b > 0.0 && b < 1.0) {
            return Err(Error::Domain(format!("equilibrium split must lie in (0,1), got {b}")));
        }
        if degree_p < 1 {
            return Err(Error::Domain("cost degree must be at least 1".into()));
        }
        Ok(Self { a, b, degree_p })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn degree_p(&self) -> u32 {
        self.degree_p
    }

    /// P_b(x) = (1-b) x^p - b (1-x)^p.
    pub fn cost_polynomial(&self, x: f64) -> f64 {
        let p = self.degree_p as i32;
        (1.0 - self.b) * x.powi(p) - self.b * (1.0 - x).powi(p)
    }
}

impl ScalarMap for PolynomialParams {
    fn drive(&self, x: f64) -> f64 {
        self.a * self.cost_polynomial(x)
    }

    fn drive_d1(&self, x: f64) -> f64 {
        let p = self.degree_p as i32;
        self.a
            * p as f64
            * ((1.0 - self.b) * x.powi(p - 1) + self.b * (1.0 - x).powi(p - 1))
    }

    fn drive_d2(&self, x: f64) -> f64 {
        if self.degree_p < 2 {
            return 0.0;
        }
        let p = self.degree_p as i32;
        self.a
            * (p * (p - 1)) as f64
            * ((1.0 - self.b) * x.powi(p - 2) - self.b * (1.0 - x).powi(p - 2))
    }

    fn drive_d3(&self, x: f64) -> f64 {
        if self.degree_p < 3 {
            return 0.0;
        }
        let p = self.degree_p as i32;
        self.a
            * (p * (p - 1) * (p - 2)) as f64
            * ((1.0 - self.b) * x.powi(p - 3) + self.b * (1.0 - x).powi(p - 3))
    }

    // The critical equation x(1-x) a P_b'(x) = 1 has no closed form for
    // p >= 2, so no pair is reported and superstability goes undetected.
    fn critical_points(&self) -> Option<(f64, f64)> {
        None
    }
}

/// One iterate for interior x, pulled back inside (0,1) on saturation.
pub fn step_polynomial(x: f64, p: &PolynomialParams) -> Result<f64> {
    require_interior(x)?;
    Ok(p.step_interior(x).0)
}

/// The unique interior fixed point x* = b^{1/p} / (b^{1/p} + (1-b)^{1/p}).
pub fn polynomial_equilibrium(p: &PolynomialParams) -> f64 {
    let inv = 1.0 / p.degree_p as f64;
    let bb = p.b.powf(inv);
    let cc = (1.0 - p.b).powf(inv);
    bb / (bb + cc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{step_linear2, LinearTwoParams};

    #[test]
    fn degree_one_collapses_to_the_linear_family() {
        let poly = PolynomialParams::new(9.0, 0.63, 1).unwrap();
        let lin = LinearTwoParams::new(9.0, 0.63).unwrap();
        for k in 1..200 {
            let x = k as f64 / 200.0;
            let yp = step_polynomial(x, &poly).unwrap();
            let yl = step_linear2(x, &lin).unwrap();
            assert!((yp - yl).abs() < 1e-15, "x={x}: {yp} vs {yl}");
        }
    }

    #[test]
    fn step_matches_frozen_high_precision_value() {
        let p = PolynomialParams::new(20.0, 0.7, 2).unwrap();
        let y = step_polynomial(0.3, &p).unwrap();
        assert!((y - 0.99581769694033971).abs() < 1e-15);
        assert!(step_polynomial(0.0, &p).is_err());
    }

    #[test]
    fn equilibrium_is_fixed_and_matches_closed_form() {
        let p = PolynomialParams::new(20.0, 0.7, 2).unwrap();
        let xs = polynomial_equilibrium(&p);
        // Frozen targets are correctly rounded; the four-operation root
        // chain legitimately lands a couple of ulp away.
        assert!((xs - 0.60435607626104000).abs() < 5e-16);
        assert!((step_polynomial(xs, &p).unwrap() - xs).abs() < 5e-15);
        assert!(p.cost_polynomial(xs).abs() < 1e-15);

        let q = PolynomialParams::new(5.0, 0.7, 3).unwrap();
        assert!((polynomial_equilibrium(&q) - 0.57014251199923153).abs() < 5e-16);
        let r = PolynomialParams::new(5.0, 0.5, 7).unwrap();
        assert_eq!(polynomial_equilibrium(&r), 0.5);
        let s = PolynomialParams::new(5.0, 0.7, 1).unwrap();
        assert!((polynomial_equilibrium(&s) - 0.7).abs() < 1e-15);
    }

    #[test]
    fn equilibrium_agrees_with_independent_root_bracketing() {
        // Bisection on the strictly increasing P_b provides the oracle.
        let p = PolynomialParams::new(20.0, 0.7, 2).unwrap();
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if p.cost_polynomial(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((polynomial_equilibrium(&p) - 0.5 * (lo + hi)).abs() < 1e-15);
    }

    #[test]
    fn drive_derivatives_are_consistent_with_finite_differences() {
        let p = PolynomialParams::new(7.0, 0.3, 4).unwrap();
        let h = 1e-5;
        for &x in &[0.2, 0.5, 0.8] {
            let d1 = (p.drive(x + h) - p.drive(x - h)) / (2.0 * h);
            assert!((d1 - p.drive_d1(x)).abs() < 1e-8 * p.drive_d1(x).abs().max(1.0));
            let d2 = (p.drive(x + h) - 2.0 * p.drive(x) + p.drive(x - h)) / (h * h);
            assert!((d2 - p.drive_d2(x)).abs() < 1e-4 * p.drive_d2(x).abs().max(1.0));
            let d3 = (p.drive_d2(x + h) - p.drive_d2(x - h)) / (2.0 * h);
            assert!((d3 - p.drive_d3(x)).abs() < 1e-4 * p.drive_d3(x).abs().max(1.0));
        }
    }

    #[test]
    fn low_degree_curvature_terms_vanish_without_poles() {
        let lin = PolynomialParams::new(9.0, 0.4, 1).unwrap();
        assert_eq!(lin.drive_d2(1e-300), 0.0);
        assert_eq!(lin.drive_d3(1e-300), 0.0);
        let quad = PolynomialParams::new(9.0, 0.4, 2).unwrap();
        assert_eq!(quad.drive_d3(1e-300), 0.0);
        assert!(quad.drive_d2(0.5).is_finite());
    }
}
