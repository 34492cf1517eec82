//! The m-strategy update on the open probability simplex:
//! `y_i = x_i e^{-a_i x_i} / sum_j x_j e^{-a_j x_j}`.
//!
//! The equal-cost equilibrium is b_i = (1/a_i) / sum_j (1/a_j), the unique
//! interior flow with a_i b_i constant across paths. For every choice of a
//! special coordinate s the segment {x_i = p* x / a_i (i != s), x_s = 1 - x}
//! with p* = 1/sum_{k != s}(1/a_k) is forward invariant, and on it the update
//! is conjugate to the two-path linear family with a = p* + a_s,
//! b = a_s/(p* + a_s).

use crate::error::{Error, Result};
use crate::linear::LinearTwoParams;
use crate::num::log_sum_exp;

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexParams {
    rates: Vec<f64>,
}

impl SimplexParams {
    pub fn new(rates: Vec<f64>) -> Result<Self> {
        if rates.len() < 2 {
            return Err(Error::Domain(format!(
                "need at least two strategies, got {}",
                rates.len()
            )));
        }
        if let Some(r) = rates.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
            return Err(Error::Domain(format!(
                "every rate must be positive and finite, got {r}"
            )));
        }
        Ok(Self { rates })
    }

    pub fn rates(&self) -> &[f64] {
        &self.rates
    }

    pub fn m(&self) -> usize {
        self.rates.len()
    }
}

pub(crate) fn require_interior_point(x: &[f64], m: usize) -> Result<()> {
    if x.len() != m {
        return Err(Error::Domain(format!(
            "state has {} coordinates but the game has {m} strategies",
            x.len()
        )));
    }
    if let Some(c) = x.iter().find(|c| !(**c > 0.0)) {
        return Err(Error::Domain(format!(
            "state must be strictly inside the simplex, got coordinate {c}"
        )));
    }
    let sum: f64 = x.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!("state must sum to 1, got {sum}")));
    }
    Ok(())
}

/// One simplex update, computed in log space and renormalized so the output
/// sums to 1 within one ulp per coordinate. A coordinate whose weight falls
/// below the exponential underflow threshold is floored at the smallest
/// positive normal, keeping the state strictly interior.
pub fn step_simplex(x: &[f64], p: &SimplexParams) -> Result<Vec<f64>> {
    step_simplex_with_offset(x, p, 0.0)
}

/// Same update with every cost shifted by a constant. The normalization
/// cancels the shift exactly, so the output matches `step_simplex` up to
/// rounding; kept public as the cost-shift-invariance check.
pub fn step_simplex_with_offset(x: &[f64], p: &SimplexParams, offset: f64) -> Result<Vec<f64>> {
    Ok(step_simplex_flagged(x, p, offset)?.0)
}

/// Update plus a flag telling whether any coordinate underflowed and was
/// floored; orbit drivers record it as saturation.
pub(crate) fn step_simplex_flagged(
    x: &[f64],
    p: &SimplexParams,
    offset: f64,
) -> Result<(Vec<f64>, bool)> {
    require_interior_point(x, p.m())?;
    let logw: Vec<f64> = x
        .iter()
        .zip(&p.rates)
        .map(|(&xi, &ai)| xi.ln() - (ai * xi + offset))
        .collect();
    let z = log_sum_exp(&logw);
    let mut y: Vec<f64> = logw.iter().map(|&lw| (lw - z).exp()).collect();
    let mut floored = false;
    for c in &mut y {
        if *c < f64::MIN_POSITIVE {
            *c = f64::MIN_POSITIVE;
            floored = true;
        }
    }
    let s: f64 = y.iter().sum();
    for c in &mut y {
        *c /= s;
    }
    Ok((y, floored))
}

/// The equal-cost flow b_i = (1/a_i) / sum_j (1/a_j).
pub fn simplex_equilibrium(p: &SimplexParams) -> Vec<f64> {
    let inv: Vec<f64> = p.rates.iter().map(|a| 1.0 / a).collect();
    let total: f64 = inv.iter().sum();
    inv.into_iter().map(|v| v / total).collect()
}

/// Aggregate rate of the non-special coordinates: p* = 1/sum_{k != s}(1/a_k).
fn segment_pooled_rate(p: &SimplexParams, special: usize) -> f64 {
    let s: f64 = p
        .rates
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != special)
        .map(|(_, a)| 1.0 / a)
        .sum();
    1.0 / s
}

/// Embed a scalar state x in the invariant segment attached to the special
/// coordinate: x_i = p* x / a_i for i != special and x_special = 1 - x.
pub fn embed_segment(x: f64, p: &SimplexParams, special: usize) -> Result<Vec<f64>> {
    if special >= p.m() {
        return Err(Error::Domain(format!(
            "special index {special} out of range for {} strategies",
            p.m()
        )));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("segment coordinate must lie in [0,1], got {x}")));
    }
    let pstar = segment_pooled_rate(p, special);
    let mut v: Vec<f64> = p.rates.iter().map(|&ai| pstar * x / ai).collect();
    v[special] = 1.0 - x;
    Ok(v)
}

/// Parameters of the scalar family conjugate to the update restricted to the
/// segment: a = p* + a_special, b = a_special/(p* + a_special).
pub fn segment_conjugate(p: &SimplexParams, special: usize) -> Result<LinearTwoParams> {
    if special >= p.m() {
        return Err(Error::Domain(format!(
            "special index {special} out of range for {} strategies",
            p.m()
        )));
    }
    let pstar = segment_pooled_rate(p, special);
    let a_s = p.rates[special];
    LinearTwoParams::new(pstar + a_s, a_s / (pstar + a_s))
}
