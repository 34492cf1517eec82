//! Orbit machinery: iteration with transient burn-in, minimal-period
//! detection, Lyapunov exponents, symbolic coding, and cobweb traces.
//!
//! Period detection follows a fixed protocol: burn `transient` iterates,
//! record max_period+1 consecutive states, and report the least n with
//! |x_{t+n} - x_t| < tol. Testing n in increasing order enforces minimality;
//! absolute tolerance matches the states' O(1) scale. The Lyapunov estimate
//! is the empirical average of log|f'| along the post-transient orbit, with
//! -inf as the exact sentinel for superstable orbits.

use crate::error::{Error, Result};
use crate::hetero::{step_hetero_logits, HeteroParams};
use crate::linear::{potential, require_interior, CriticalStructure, LinearTwoParams};
use crate::map::{MapSpec, ScalarMap};
use crate::num::{clamp_interior, logit, sigmoid, Kahan};
use crate::simplex::SimplexParams;

/// Initial state for [`iterate`]; the variant must match the family.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Scalar(f64),
    Pair(f64, f64),
    Vector(Vec<f64>),
}

/// Recorded post-transient trajectory of a scalar family.
#[derive(Debug, Clone)]
pub struct ScalarOrbit {
    pub x0: f64,
    pub transient: usize,
    pub samples: Vec<f64>,
    pub saturated: bool,
}

/// Recorded trajectory of the two-population system.
#[derive(Debug, Clone)]
pub struct HeteroOrbit {
    pub x0: (f64, f64),
    pub transient: usize,
    pub samples: Vec<(f64, f64)>,
    pub saturated: bool,
}

/// Recorded trajectory on the m-simplex, stored row-major.
#[derive(Debug, Clone)]
pub struct SimplexOrbit {
    pub x0: Vec<f64>,
    pub transient: usize,
    pub m: usize,
    samples: Vec<f64>,
    pub saturated: bool,
}

impl SimplexOrbit {
    pub fn len(&self) -> usize {
        self.samples.len() / self.m
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn sample(&self, i: usize) -> &[f64] {
        &self.samples[i * self.m..(i + 1) * self.m]
    }
}

/// A recorded orbit of any family.
#[derive(Debug, Clone)]
pub enum Orbit {
    Scalar(ScalarOrbit),
    Hetero(HeteroOrbit),
    Simplex(SimplexOrbit),
}

/// Iterate a scalar family, discarding `transient` states and recording the
/// next `samples`.
pub fn scalar_orbit<M: ScalarMap>(
    map: &M,
    x0: f64,
    transient: usize,
    samples: usize,
) -> Result<ScalarOrbit> {
    require_interior(x0)?;
    let mut x = x0;
    let mut saturated = false;
    for _ in 0..transient {
        let (nx, sat) = map.step_interior(x);
        x = nx;
        saturated |= sat;
    }
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples {
        out.push(x);
        let (nx, sat) = map.step_interior(x);
        x = nx;
        saturated |= sat;
    }
    Ok(ScalarOrbit { x0, transient, samples: out, saturated })
}

/// Iterate the two-population system in logit coordinates (which never
/// saturate); recorded samples are clamped inside (0,1) if the readout
/// rounds onto a boundary.
pub fn hetero_orbit(
    p: &HeteroParams,
    x0: f64,
    y0: f64,
    transient: usize,
    samples: usize,
) -> Result<HeteroOrbit> {
    require_interior(x0)?;
    require_interior(y0)?;
    let (mut lx, mut ly) = (logit(x0), logit(y0));
    for _ in 0..transient {
        let (nx, ny) = step_hetero_logits(lx, ly, p);
        lx = nx;
        ly = ny;
    }
    let mut out = Vec::with_capacity(samples);
    let mut saturated = false;
    for _ in 0..samples {
        let (x, sx) = clamp_interior(sigmoid(lx));
        let (y, sy) = clamp_interior(sigmoid(ly));
        saturated |= sx | sy;
        out.push((x, y));
        let (nx, ny) = step_hetero_logits(lx, ly, p);
        lx = nx;
        ly = ny;
    }
    Ok(HeteroOrbit { x0: (x0, y0), transient, samples: out, saturated })
}

/// Iterate the simplex update; coordinates that round to zero are clamped to
/// the smallest positive value and the state renormalized, with the flag set.
pub fn simplex_orbit(
    p: &SimplexParams,
    x0: &[f64],
    transient: usize,
    samples: usize,
) -> Result<SimplexOrbit> {
    crate::simplex::require_interior_point(x0, p.m())?;
    let mut x = x0.to_vec();
    let mut saturated = false;
    let advance = |x: &mut Vec<f64>, saturated: &mut bool| -> Result<()> {
        let (y, floored) = crate::simplex::step_simplex_flagged(x, p, 0.0)?;
        *saturated |= floored;
        *x = y;
        Ok(())
    };
    let mut recorded = Vec::with_capacity(samples * p.m());
    for _ in 0..transient {
        advance(&mut x, &mut saturated)?;
    }
    for i in 0..samples {
        recorded.extend_from_slice(&x);
        if i + 1 < samples {
            advance(&mut x, &mut saturated)?;
        }
    }
    Ok(SimplexOrbit { x0: x0.to_vec(), transient, m: p.m(), samples: recorded, saturated })
}

/// Iterate any family from a matching initial state.
pub fn iterate(spec: &MapSpec, x0: &State, transient: usize, samples: usize) -> Result<Orbit> {
    match (spec, x0) {
        (MapSpec::Linear2(p), State::Scalar(x)) => {
            Ok(Orbit::Scalar(scalar_orbit(p, *x, transient, samples)?))
        }
        (MapSpec::Polynomial2(p), State::Scalar(x)) => {
            Ok(Orbit::Scalar(scalar_orbit(p, *x, transient, samples)?))
        }
        (MapSpec::Hetero2(p), State::Pair(x, y)) => {
            Ok(Orbit::Hetero(hetero_orbit(p, *x, *y, transient, samples)?))
        }
        (MapSpec::Simplex(p), State::Vector(v)) => {
            Ok(Orbit::Simplex(simplex_orbit(p, v, transient, samples)?))
        }
        _ => Err(Error::Domain(format!(
            "initial state shape does not match the {} family",
            spec.family_name()
        ))),
    }
}

/// Settings for [`detect_period`]; defaults: transient 20000, tolerance
/// 1e-10, periods up to 8, critical-point proximity 1e-6.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectOptions {
    pub max_period: usize,
    pub tol: f64,
    pub transient: usize,
    pub superstable_tol: f64,
}

impl Default for DetectOptions {
    fn default() -> Self {
        Self { max_period: 8, tol: 1e-10, transient: 20_000, superstable_tol: 1e-6 }
    }
}

/// Outcome of minimal-period detection. `period` is `None` when no period up
/// to `max_period` closes within tolerance ("aperiodic": longer period or
/// chaos, disambiguated by the Lyapunov exponent).
#[derive(Debug, Clone)]
pub struct PeriodResult {
    pub period: Option<usize>,
    pub points: Vec<f64>,
    pub residual: f64,
    pub superstable: bool,
}

/// Detect the minimal period of the attractor reached from `x0`.
pub fn detect_period<M: ScalarMap>(map: &M, x0: f64, opts: &DetectOptions) -> Result<PeriodResult> {
    require_interior(x0)?;
    if opts.max_period < 1 {
        return Err(Error::Precondition("max_period must be at least 1".into()));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::Precondition(format!("tolerance must be positive, got {}", opts.tol)));
    }
    let mut x = x0;
    for _ in 0..opts.transient {
        x = map.step_interior(x).0;
    }
    classify_period(map, x, opts)
}

/// Classification stage shared with the sweep engine: record
/// max_period + 1 states starting at `x` and find the least closing lag.
pub(crate) fn classify_period<M: ScalarMap>(
    map: &M,
    x: f64,
    opts: &DetectOptions,
) -> Result<PeriodResult> {
    let mut pts = Vec::with_capacity(opts.max_period + 1);
    pts.push(x);
    for i in 0..opts.max_period {
        pts.push(map.step_interior(pts[i]).0);
    }
    let mut best = f64::INFINITY;
    for n in 1..=opts.max_period {
        let r = (pts[n] - pts[0]).abs();
        if r < opts.tol {
            let cycle: Vec<f64> = pts[..n].to_vec();
            let superstable = match map.critical_points() {
                Some((xl, xr)) => cycle
                    .iter()
                    .any(|&c| (c - xl).abs() < opts.superstable_tol
                        || (c - xr).abs() < opts.superstable_tol),
                None => false,
            };
            return Ok(PeriodResult { period: Some(n), points: cycle, residual: r, superstable });
        }
        best = best.min(r);
    }
    pts.pop();
    Ok(PeriodResult { period: None, points: pts, residual: best, superstable: false })
}

/// Empirical Lyapunov exponent (1/T) sum log|f'(x_n)| over T post-transient
/// states; exactly -inf when the orbit contains a critical point.
pub fn lyapunov<M: ScalarMap>(map: &M, x0: f64, t: usize, transient: usize) -> Result<f64> {
    require_interior(x0)?;
    if t < 1 {
        return Err(Error::Precondition("Lyapunov horizon must be at least 1".into()));
    }
    let mut x = x0;
    for _ in 0..transient {
        x = map.step_interior(x).0;
    }
    let mut acc = Kahan::default();
    for _ in 0..t {
        let l = map.log_abs_derivative(x);
        if l == f64::NEG_INFINITY {
            return Ok(f64::NEG_INFINITY);
        }
        acc.add(l);
        x = map.step_interior(x).0;
    }
    Ok(acc.value() / t as f64)
}

/// Three-letter itinerary of a scalar orbit: A inside [x_l, x_r] (near
/// equilibrium), B below x_l (second path overused), C above x_r.
pub fn symbolic_code(samples: &[f64], cs: &CriticalStructure) -> String {
    samples
        .iter()
        .map(|&x| {
            if x < cs.x_l {
                'B'
            } else if x > cs.x_r {
                'C'
            } else {
                'A'
            }
        })
        .collect()
}

/// One segment of a cobweb plot: the transition from a state to its image,
/// with the potential at the source for the energy panel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CobwebStep {
    pub from: f64,
    pub to: f64,
    pub potential: f64,
}

/// The (x_n, x_{n+1}) transitions of the first `steps` iterates.
pub fn cobweb_trace(p: &LinearTwoParams, x0: f64, steps: usize) -> Result<Vec<CobwebStep>> {
    require_interior(x0)?;
    let mut out = Vec::with_capacity(steps);
    let mut x = x0;
    for _ in 0..steps {
        let y = p.step_interior(x).0;
        out.push(CobwebStep { from: x, to: y, potential: potential(x, p)? });
        x = y;
    }
    Ok(out)
}
