//! The two-path family with linear costs: `logit(x') = logit(x) - a(x - b)`.
//!
//! Fixed points are 0, b, 1 with multipliers e^{ab}, 1 - ab(1-b), e^{a(1-b)};
//! the boundaries are always repelling. For a > 4 the map acquires a critical
//! pair x_l < 1/2 < x_r where a x(1-x) = 1, and [y_min, y_max] =
//! [f(x_r), f(x_l)] is the absorbing interval. The family is conjugate to
//! itself under (x, b) -> (1-x, 1-b).

use crate::error::{Error, Result};
use crate::map::ScalarMap;

/// Raw two-path congestion economics: per-path costs `alpha * load` and
/// `beta * load`, total demand `demand_n`, multiplicative-weights learning
/// rate `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameEconomics {
    pub alpha: f64,
    pub beta: f64,
    pub demand_n: f64,
    pub epsilon: f64,
}

impl GameEconomics {
    pub fn new(alpha: f64, beta: f64, demand_n: f64, epsilon: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) || !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::Domain(format!(
                "cost slopes must be positive and finite, got alpha={alpha}, beta={beta}"
            )));
        }
        if !(demand_n > 0.0 && demand_n.is_finite()) {
            return Err(Error::Domain(format!(
                "total demand must be positive and finite, got {demand_n}"
            )));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::Domain(format!(
                "learning rate must lie in (0,1), got {epsilon}"
            )));
        }
        Ok(Self { alpha, beta, demand_n, epsilon })
    }
}

/// ln(1/(1-epsilon)), the per-unit-cost logit decrement of one update.
pub fn rate_unit(epsilon: f64) -> f64 {
    -(-epsilon).ln_1p()
}

/// Units-free parameters: drive strength `a` and equilibrium split `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearTwoParams {
    a: f64,
    b: f64,
}

impl LinearTwoParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::Domain(format!(
                "drive strength must be positive and finite, got {a}"
            )));
        }
        if !(b > 0.0 && b < 1.0) {
            return Err(Error::Domain(format!("equilibrium split must lie in (0,1), got {b}")));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Multiplier of the interior fixed point: f'(b) = 1 - ab(1-b).
    pub fn equilibrium_multiplier(&self) -> f64 {
        1.0 - self.a * self.b * (1.0 - self.b)
    }

    /// The mirror-image parameters (a, 1-b); f_{a,1-b}(1-x) = 1 - f_{a,b}(x).
    pub fn conjugate(&self) -> LinearTwoParams {
        LinearTwoParams { a: self.a, b: 1.0 - self.b }
    }
}

impl ScalarMap for LinearTwoParams {
    fn drive(&self, x: f64) -> f64 {
        self.a * (x - self.b)
    }

    fn drive_d1(&self, _x: f64) -> f64 {
        self.a
    }

    fn drive_d2(&self, _x: f64) -> f64 {
        0.0
    }

    fn drive_d3(&self, _x: f64) -> f64 {
        0.0
    }

    fn critical_points(&self) -> Option<(f64, f64)> {
        if self.a <= 4.0 {
            return None;
        }
        // x_l = (1 - sqrt(1-4/a))/2 rewritten to avoid cancellation at large a.
        let root = (1.0 - 4.0 / self.a).sqrt();
        let xl = 2.0 / (self.a * (1.0 + root));
        Some((xl, 1.0 - xl))
    }
}

/// Critical pair of an a > 4 map together with the absorbing-interval edges
/// y_min = f(x_r) and y_max = f(x_l).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalStructure {
    pub x_l: f64,
    pub x_r: f64,
    pub y_min: f64,
    pub y_max: f64,
}

/// Convert raw economics to the units-free family:
/// a = (alpha+beta) * N * ln(1/(1-eps)), b = beta/(alpha+beta).
pub fn normalize_economics(econ: &GameEconomics) -> LinearTwoParams {
    let a = (econ.alpha + econ.beta) * econ.demand_n * rate_unit(econ.epsilon);
    let b = econ.beta / (econ.alpha + econ.beta);
    LinearTwoParams { a, b }
}

/// One iterate for interior x; the output is pulled back inside (0,1) if it
/// rounded onto a boundary.
pub fn step_linear2(x: f64, p: &LinearTwoParams) -> Result<f64> {
    require_interior(x)?;
    Ok(p.step_interior(x).0)
}

/// Boundary-aware iterate on [0,1]: 0 and 1 are fixed points and map to
/// themselves exactly; interior states step as usual.
pub fn step_linear2_extended(x: f64, p: &LinearTwoParams) -> Result<f64> {
    if x == 0.0 || x == 1.0 {
        return Ok(x);
    }
    step_linear2(x, p)
}

/// The rational form x / (x + (1-x) e^{a(x-b)}).
///
/// Kept as an independent cross-check of the logit form; saturates once
/// |a(x-b)| exceeds roughly 700, so it is not used for iteration.
pub fn step_linear2_direct(x: f64, p: &LinearTwoParams) -> Result<f64> {
    require_interior(x)?;
    let e = (p.a * (x - p.b)).exp();
    Ok(x / (x + (1.0 - x) * e))
}

/// f'(x) on [0,1]; equals e^{ab} at 0, 1 - ab(1-b) at b, e^{a(1-b)} at 1.
pub fn derivative_linear2(x: f64, p: &LinearTwoParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("derivative needs x in [0,1], got {x}")));
    }
    Ok(p.derivative(x))
}

/// Critical pair and absorbing-interval edges; defined only for a > 4, where
/// the map stops being a homeomorphism.
pub fn critical_structure(p: &LinearTwoParams) -> Result<CriticalStructure> {
    let (x_l, x_r) = p.critical_points().ok_or_else(|| {
        Error::Precondition(format!(
            "map with a = {} <= 4 is strictly increasing and has no critical points",
            p.a
        ))
    })?;
    Ok(CriticalStructure { x_l, x_r, y_min: p.step(x_r), y_max: p.step(x_l) })
}

/// Convex potential Phi(x) = (a^2/2) ((1-b) x^2 + b (1-x)^2), minimized at b.
pub fn potential(x: f64, p: &LinearTwoParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("potential needs x in [0,1], got {x}")));
    }
    Ok(0.5 * p.a * p.a * ((1.0 - p.b) * x * x + p.b * (1.0 - x) * (1.0 - x)))
}

pub(crate) fn require_interior(x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("state must lie strictly inside (0,1), got {x}")))
    }
}
