//! Two populations with distinct learning rates on the same two-path game:
//!
//! ```text
//! logit(x') = logit(x) - a1 (eta1 x + eta2 y - b),
//! logit(y') = logit(y) - a2 (eta1 x + eta2 y - b),
//! ```
//!
//! where eta1 + eta2 = 1 are the population weights. Both coordinates share
//! the common drive D = eta1 x + eta2 y - b, so
//! `log I = a1 logit(y) - a2 logit(x)` is conserved step to step; orbits live
//! on its level curves and the mixture eta1 x + eta2 y Cesaro-averages to b.

use crate::error::{Error, Result};
use crate::num::{logit, sigmoid};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeteroParams {
    a1: f64,
    a2: f64,
    b: f64,
    eta1: f64,
    eta2: f64,
}

impl HeteroParams {
    pub fn new(a1: f64, a2: f64, b: f64, eta1: f64, eta2: f64) -> Result<Self> {
        if !(a1 > 0.0 && a1.is_finite()) || !(a2 > 0.0 && a2.is_finite()) {
            return Err(Error::Domain(format!(
                "population rates must be positive and finite, got a1={a1}, a2={a2}"
            )));
        }
        if !(b > 0.0 && b < 1.0) {
            return Err(Error::Domain(format!("equilibrium split must lie in (0,1), got {b}")));
        }
        if !(eta1 > 0.0 && eta1 < 1.0) || !(eta2 > 0.0 && eta2 < 1.0) {
            return Err(Error::Domain(format!(
                "population weights must lie in (0,1), got eta1={eta1}, eta2={eta2}"
            )));
        }
        if (eta1 + eta2 - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "population weights must sum to 1, got {}",
                eta1 + eta2
            )));
        }
        Ok(Self { a1, a2, b, eta1, eta2 })
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }

    pub fn a2(&self) -> f64 {
        self.a2
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn eta1(&self) -> f64 {
        self.eta1
    }

    pub fn eta2(&self) -> f64 {
        self.eta2
    }
}

/// One joint update of both populations from state coordinates.
pub fn step_hetero(x: f64, y: f64, p: &HeteroParams) -> Result<(f64, f64)> {
    crate::linear::require_interior(x)?;
    crate::linear::require_interior(y)?;
    let (lx, ly) = step_hetero_logits(logit(x), logit(y), p);
    Ok((sigmoid(lx), sigmoid(ly)))
}

/// One joint update in logit coordinates. Long runs should stay in this
/// chart: it never saturates, and the conserved quantity is linear here.
pub fn step_hetero_logits(lx: f64, ly: f64, p: &HeteroParams) -> (f64, f64) {
    let d = p.eta1 * sigmoid(lx) + p.eta2 * sigmoid(ly) - p.b;
    (lx - p.a1 * d, ly - p.a2 * d)
}

/// The conserved quantity log I = a1 logit(y) - a2 logit(x).
pub fn hetero_invariant(x: f64, y: f64, p: &HeteroParams) -> Result<f64> {
    crate::linear::require_interior(x)?;
    crate::linear::require_interior(y)?;
    Ok(hetero_invariant_logits(logit(x), logit(y), p))
}

/// The conserved quantity evaluated directly in logit coordinates.
pub fn hetero_invariant_logits(lx: f64, ly: f64, p: &HeteroParams) -> f64 {
    p.a1 * ly - p.a2 * lx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_params() -> HeteroParams {
        HeteroParams::new(20.0, 30.0, 0.8, 0.5, 0.5).unwrap()
    }

    #[test]
    fn diagonal_equilibrium_is_fixed() {
        let p = reference_params();
        let (x, y) = step_hetero(0.8, 0.8, &p).unwrap();
        assert!((x - 0.8).abs() < 1e-15 && (y - 0.8).abs() < 1e-15);
    }

    #[test]
    fn equal_rates_preserve_the_logit_gap_exactly() {
        let p = HeteroParams::new(25.0, 25.0, 0.4, 0.3, 0.7).unwrap();
        let (mut lx, mut ly) = (logit(0.2), logit(0.9));
        let gap = ly - lx;
        for _ in 0..1000 {
            let (nx, ny) = step_hetero_logits(lx, ly, &p);
            lx = nx;
            ly = ny;
            assert!((ly - lx - gap).abs() < 1e-9);
        }
    }

    #[test]
    fn single_step_matches_hand_computed_logit_decrements() {
        let p = reference_params();
        // Common drive D = 0.45 - 0.8 = -0.35 raises both logits.
        let (lx1, ly1) = step_hetero_logits(logit(0.3), logit(0.6), &p);
        assert!((lx1 - (logit(0.3) + 7.0)).abs() < 1e-12);
        assert!((ly1 - (logit(0.6) + 10.5)).abs() < 1e-12);
        // The state chart agrees with the logit chart (the second coordinate
        // saturates near 1, where a logit round trip would magnify noise).
        let (x1, y1) = step_hetero(0.3, 0.6, &p).unwrap();
        assert!((x1 - sigmoid(lx1)).abs() < 1e-15);
        assert!((y1 - sigmoid(ly1)).abs() < 1e-15);
    }

    #[test]
    fn invariant_matches_its_definition_and_is_conserved_stepwise() {
        let p = reference_params();
        let i0 = hetero_invariant(0.3, 0.6, &p).unwrap();
        assert!((i0 - (20.0 * logit(0.6) - 30.0 * logit(0.3))).abs() < 1e-12);
        let (x1, y1) = step_hetero(0.3, 0.6, &p).unwrap();
        let i1 = hetero_invariant(x1, y1, &p).unwrap();
        assert!((i1 - i0).abs() < 1e-10);
    }

    #[test]
    fn invariant_drift_in_logit_coordinates_stays_below_budget() {
        let p = HeteroParams::new(10.0, 30.0, 0.7, 0.5, 0.5).unwrap();
        let (mut lx, mut ly) = (logit(0.3), logit(0.6));
        let i0 = hetero_invariant_logits(lx, ly, &p);
        let mut worst = 0.0_f64;
        for _ in 0..10_000 {
            let (nx, ny) = step_hetero_logits(lx, ly, &p);
            lx = nx;
            ly = ny;
            worst = worst.max((hetero_invariant_logits(lx, ly, &p) - i0).abs());
        }
        assert!(worst < 1e-9, "cumulative invariant drift {worst}");
    }

    #[test]
    fn weight_validation_rejects_unbalanced_populations() {
        assert!(HeteroParams::new(20.0, 30.0, 0.8, 0.5, 0.6).is_err());
        assert!(HeteroParams::new(20.0, 30.0, 0.8, 0.0, 1.0).is_err());
        assert!(HeteroParams::new(-20.0, 30.0, 0.8, 0.5, 0.5).is_err());
        assert!(HeteroParams::new(20.0, 30.0, 1.0, 0.5, 0.5).is_err());
    }
}
