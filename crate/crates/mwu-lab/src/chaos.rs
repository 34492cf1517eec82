//! Chaos certification and fine structure of the period-doubling regime.
//!
//! Three independent certificates are implemented. A period-3 witness is a
//! grid point with f^3(x0) < x0 < f(x0); by Sharkovskii-type forcing its
//! existence implies periodic orbits of all periods and positive topological
//! entropy. A symbolic-word count over the three-letter partition {below
//! left critical point, between, above right} gives a growth-rate entropy
//! estimate. Finally, the period-doubling cascade in the split parameter b
//! at fixed drive a is resolved level by level: superstable parameters s_n
//! (where the left critical point x_l lies on a 2^n-cycle) are roots of
//! h_n(b) = f^{2^n}(x_l) - x_l, births b_n of the 2^n-cycle are bisected
//! between consecutive superstable levels, and the ratios
//! delta_n = (b_n - b_{n-1})/(b_{n+1} - b_n), alpha_n = d_n/d_{n+1} with
//! d_n = f^{2^{n-1}}(x_l) - x_l at s_n converge to the universal constants
//! 4.669... and -2.5029....
//!
//! The negative-Schwarzian property that underlies unimodal-style arguments
//! is checked through the exact chain rule for maps of the form
//! f = sigma(G): since the sigmoid itself has Schwarzian -1/2,
//! Sf(x) = G'''/G' - (3/2)(G''/G')^2 - (1/2)(G')^2 pointwise.

use crate::error::{Error, Result};
use crate::linear::{critical_structure, LinearTwoParams};
use crate::map::{g_chain, ScalarMap};
use crate::num::{least_squares_slope, logit, sigmoid, unit_midpoints};
use crate::orbit::{detect_period, DetectOptions, PeriodResult};

/// Closure residual used by the birth probe; the half-period distance must
/// shrink below this for a sub-harmonic verdict.
const PROBE_TOL: f64 = 1e-12;
/// Iteration budget of one birth probe, in blocks of half-period steps.
/// Fixed blocks make the budget scale with the period, so the resolvable
/// fraction of each parameter gap is level-independent and the residual
/// probe bias cancels from the delta_n ratios.
const PROBE_BLOCKS: usize = 100_000;

/// A grid point certifying period 3: x3 < x0 < x1 with x1 = f(x0),
/// x3 = f^3(x0). Any such point forces periodic orbits of all periods.
#[derive(Debug, Clone, Copy)]
pub struct Period3Witness {
    pub x0: f64,
    pub x1: f64,
    pub x3: f64,
    pub satisfied: bool,
}

impl Period3Witness {
    /// Evaluate the witness inequality at one candidate point.
    pub fn evaluate<M: ScalarMap + ?Sized>(map: &M, x0: f64) -> Self {
        let x1 = map.step(x0);
        let x3 = map.step(map.step(x1));
        Self { x0, x1, x3, satisfied: x3 < x0 && x0 < x1 }
    }
}

/// Scan the interior midpoint grid for a period-3 witness; `None` means the
/// scan is inconclusive, not that period 3 is absent.
pub fn find_period3_witness<M: ScalarMap + ?Sized>(
    map: &M,
    grid_size: usize,
) -> Option<Period3Witness> {
    unit_midpoints(grid_size)
        .map(|x0| Period3Witness::evaluate(map, x0))
        .find(|w| w.satisfied)
}

/// Growth-rate entropy estimate from symbolic words over the three-letter
/// critical partition. Words of every start collect letter by letter (no
/// transient is discarded: refinement history is the signal) and the
/// least-squares slope of ln(distinct word count) against word length over
/// the upper half `[word_length/2, word_length]` skips the combinatorial
/// transient. Saturating counts (periodic regimes) drive the slope to 0.
pub fn estimate_entropy<M: ScalarMap + ?Sized>(
    map: &M,
    word_length: usize,
    init_grid: usize,
) -> Result<f64> {
    let (xl, xr) = map.critical_points().ok_or_else(|| {
        Error::Precondition(
            "symbolic partition needs two critical points; the map is injective here".into(),
        )
    })?;
    if !(2..=32).contains(&word_length) {
        return Err(Error::Precondition(format!(
            "word length must lie in [2, 32] so base-3 codes fit a machine word, got {word_length}"
        )));
    }
    if init_grid < 2 {
        return Err(Error::Precondition(format!(
            "need at least two initial conditions, got {init_grid}"
        )));
    }
    let mut xs: Vec<f64> = unit_midpoints(init_grid).collect();
    let mut codes = vec![0u64; init_grid];
    let mut scratch: Vec<u64> = Vec::with_capacity(init_grid);
    let mut log_counts = Vec::with_capacity(word_length);
    for _ in 0..word_length {
        for (x, code) in xs.iter_mut().zip(codes.iter_mut()) {
            let letter = if *x < xl {
                1
            } else if *x > xr {
                2
            } else {
                0
            };
            *code = *code * 3 + letter;
            *x = map.step_interior(*x).0;
        }
        scratch.clone_from(&codes);
        scratch.sort_unstable();
        scratch.dedup();
        log_counts.push((scratch.len() as f64).ln());
    }
    let n_lo = word_length / 2;
    let ns: Vec<f64> = (n_lo..=word_length).map(|n| n as f64).collect();
    Ok(least_squares_slope(&ns, &log_counts[n_lo - 1..]))
}

/// Which way the cascade accumulates in the split parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CascadeDirection {
    /// Doubling levels at increasing b, anchored at the left critical point.
    IncreasingB,
    /// Mirror path at decreasing b, anchored at the right critical point;
    /// conjugate to the increasing path under x -> 1-x, b -> 1-b.
    DecreasingB,
}

/// Resolved period-doubling fine structure at fixed drive.
///
/// Level n refers to the period-2^n attractor. `birth_points[k]` = b_{k+1},
/// `superstable_points[k]` = s_k (s_0 is the superstable fixed point),
/// `distances[k]` = d_{k+1} evaluated at s_{k+1}, `delta_n[k]` = delta_{k+2}
/// and `alpha_n[k]` = alpha_{k+1}, so `.last()` of the two ratio sequences
/// gives the deepest (level n_max) estimates.
#[derive(Debug, Clone)]
pub struct FeigenbaumEstimate {
    pub a_fixed: f64,
    pub birth_points: Vec<f64>,
    pub superstable_points: Vec<f64>,
    pub distances: Vec<f64>,
    pub delta_n: Vec<f64>,
    pub alpha_n: Vec<f64>,
    pub n_max: usize,
}

/// One step of the two-path map written without constructing a parameter
/// record; must mirror the ScalarMap step of the linear drive exactly, which
/// a unit test pins down.
#[inline]
fn f_lin(a: f64, b: f64, x: f64) -> f64 {
    sigmoid(logit(x) - a * (x - b))
}

/// f^{2^n}(x_l) - x_l; roots in b are the superstable parameters s_n.
fn h_level(a: f64, x_l: f64, n: usize, b: f64) -> f64 {
    let mut x = x_l;
    for _ in 0..(1usize << n) {
        x = f_lin(a, b, x);
    }
    x - x_l
}

/// Superstable skeleton s_0..s_depth by scan-and-bisect, each level seeded
/// by the previous gap shrunk through the universal ratio. The scan starts
/// strictly above the previous level because h_n vanishes at every
/// shallower superstable parameter as well.
fn skeleton(a: f64, x_l: f64, depth: usize) -> Result<Vec<f64>> {
    let mut s = vec![x_l];
    let mut gap = 0.05;
    for n in 1..=depth {
        let pred = gap / if n > 1 { 4.669 } else { 1.0 };
        let lo = s[n - 1] + 0.05 * pred;
        let step = pred / 40.0;
        let mut prev = h_level(a, x_l, n, lo);
        let mut bb = lo;
        let (mut left, mut right) = loop {
            let bb2 = bb + step;
            let cur = h_level(a, x_l, n, bb2);
            if prev * cur <= 0.0 {
                break (bb, bb2);
            }
            prev = cur;
            bb = bb2;
            if bb > s[n - 1] + 4.0 * pred {
                return Err(Error::Precondition(format!(
                    "doubling cascade broke off: no superstable level {n} found in \
                     ({:.6}, {:.6}); last resolved level {} at b = {:.9}",
                    lo,
                    s[n - 1] + 4.0 * pred,
                    n - 1,
                    s[n - 1]
                )));
            }
        };
        for _ in 0..80 {
            let mid = 0.5 * (left + right);
            if h_level(a, x_l, n, mid) * prev <= 0.0 {
                right = mid;
            } else {
                left = mid;
                prev = h_level(a, x_l, n, left);
            }
        }
        s.push(0.5 * (left + right));
        gap = s[n] - s[n - 1];
    }
    Ok(s)
}

/// Below/above verdict for the period-2^n birth at parameter b. Below when
/// the orbit of x_l closes at lag 2^{n-1}; above when it closes at lag 2^n
/// while the half-lag residual stays macroscopic; an exhausted budget counts
/// as above (the bias is uniform across levels and cancels in delta_n).
fn probe_below_birth(a: f64, x_l: f64, n: usize, b: f64, ring: &mut Vec<f64>) -> bool {
    let half = 1usize << (n - 1);
    ring.clear();
    ring.resize(2 * half, 0.0);
    let mut x = x_l;
    for slot in ring.iter_mut() {
        *slot = x;
        x = f_lin(a, b, x);
    }
    let mut k = 0usize;
    for _ in 0..PROBE_BLOCKS {
        for _ in 0..half {
            let r_half = (x - ring[(k + half) % (2 * half)]).abs();
            if r_half < PROBE_TOL {
                return true;
            }
            if (x - ring[k]).abs() < PROBE_TOL && r_half > 1e6 * PROBE_TOL {
                return false;
            }
            ring[k] = x;
            x = f_lin(a, b, x);
            k = (k + 1) % (2 * half);
        }
    }
    false
}

/// Bisect the period-2^n birth inside the superstable bracket (lo, hi).
fn birth(a: f64, x_l: f64, n: usize, lo: f64, hi: f64, ring: &mut Vec<f64>) -> f64 {
    let tol_b = (2e-4 * (hi - lo)).max(1e-13);
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > tol_b {
        let mid = 0.5 * (lo + hi);
        if probe_below_birth(a, x_l, n, mid, ring) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Resolve the period-doubling cascade at fixed drive `a_fixed`, walking from
/// `b_start` in `direction`. Levels 1..=n_max+1 are located so that the ratio
/// sequences reach level n_max; n_max is capped at 12 where the parameter
/// gaps (initial gap times 4.669^-12) approach the f64 resolution of b.
pub fn feigenbaum_cascade(
    a_fixed: f64,
    b_start: f64,
    direction: CascadeDirection,
    n_max: usize,
) -> Result<FeigenbaumEstimate> {
    if !(2..=12).contains(&n_max) {
        return Err(Error::Precondition(format!(
            "ratio depth n_max must lie in [2, 12], got {n_max}"
        )));
    }
    let probe_params = LinearTwoParams::new(a_fixed, 0.5)?;
    let x_l = critical_structure(&probe_params)?.x_l;
    match direction {
        CascadeDirection::IncreasingB => {
            if !(b_start > 0.0 && b_start <= x_l) {
                return Err(Error::Precondition(format!(
                    "ascending cascade must start at or below the superstable fixed point \
                     b = x_l = {x_l:.9}, got b_start = {b_start}"
                )));
            }
        }
        CascadeDirection::DecreasingB => {
            if !(b_start < 1.0 && b_start >= 1.0 - x_l) {
                return Err(Error::Precondition(format!(
                    "descending cascade must start at or above the superstable fixed point \
                     b = 1 - x_l = {:.9}, got b_start = {b_start}",
                    1.0 - x_l
                )));
            }
        }
    }
    // The mirrored path is conjugate to the ascending one under x -> 1-x,
    // so both directions are resolved on the ascending chart.
    let depth = n_max + 1;
    let s = skeleton(a_fixed, x_l, depth)?;
    let mut ring = Vec::new();
    let births: Vec<f64> =
        (1..=depth).map(|n| birth(a_fixed, x_l, n, s[n - 1], s[n], &mut ring)).collect();
    let distances: Vec<f64> = (1..=depth)
        .map(|n| {
            let mut x = x_l;
            for _ in 0..(1usize << (n - 1)) {
                x = f_lin(a_fixed, s[n], x);
            }
            x - x_l
        })
        .collect();
    let delta_n: Vec<f64> = (2..=n_max)
        .map(|n| (births[n - 1] - births[n - 2]) / (births[n] - births[n - 1]))
        .collect();
    let alpha_n: Vec<f64> = (1..=n_max).map(|n| distances[n - 1] / distances[n]).collect();
    let estimate = FeigenbaumEstimate {
        a_fixed,
        birth_points: births,
        superstable_points: s,
        distances,
        delta_n,
        alpha_n,
        n_max,
    };
    Ok(match direction {
        CascadeDirection::IncreasingB => estimate,
        CascadeDirection::DecreasingB => FeigenbaumEstimate {
            birth_points: estimate.birth_points.iter().map(|b| 1.0 - b).collect(),
            superstable_points: estimate.superstable_points.iter().map(|s| 1.0 - s).collect(),
            distances: estimate.distances.iter().map(|d| -d).collect(),
            ..estimate
        },
    })
}

/// Skeleton level function S(a, b) = 1/(ab) + 1/(b + ab e^{1-ab}); its level
/// set S = p tracks the superstable backbone of the period-p layer, with
/// accuracy improving as a grows.
pub fn superstable_level(a: f64, b: f64) -> f64 {
    1.0 / (a * b) + 1.0 / (b + a * b * (1.0 - a * b).exp())
}

/// Schwarzian derivative Sf = f'''/f' - (3/2)(f''/f')^2 of the two-path map,
/// evaluated through the drive chain rule (exact, no cancellation-prone
/// third-derivative quotients of f itself).
pub fn schwarzian(p: &LinearTwoParams, x: f64) -> Result<f64> {
    if p.a() <= 4.0 {
        return Err(Error::Precondition(format!(
            "Schwarzian negativity is only claimed above the fold threshold a > 4, got a = {}",
            p.a()
        )));
    }
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!("state must lie strictly inside (0,1), got {x}")));
    }
    if p.derivative(x).abs() < 1e-12 {
        return Err(Error::Precondition(format!(
            "critical point at x = {x}: derivative vanishes, Schwarzian undefined"
        )));
    }
    let (g1, g2, g3) = g_chain(p, x);
    Ok(g3 / g1 - 1.5 * (g2 / g1) * (g2 / g1) - 0.5 * g1 * g1)
}

/// Attractors reached from the two critical points; at most two can exist.
#[derive(Debug, Clone)]
pub struct CoexistencePair {
    pub left: PeriodResult,
    pub right: PeriodResult,
    /// True when the attractors differ: distinct periods, or equal periods
    /// on point sets separated beyond 1e-8.
    pub coexistence: bool,
}

/// Run period detection from both critical points and flag coexistence.
pub fn coexisting_attractors(
    p: &LinearTwoParams,
    opts: &DetectOptions,
) -> Result<CoexistencePair> {
    let cs = critical_structure(p)?;
    let left = detect_period(p, cs.x_l, opts)?;
    let right = detect_period(p, cs.x_r, opts)?;
    let coexistence = match (left.period, right.period) {
        (Some(pl), Some(pr)) => pl != pr || sets_disjoint(&left.points, &right.points, 1e-8),
        (None, None) => false,
        _ => true,
    };
    Ok(CoexistencePair { left, right, coexistence })
}

fn sets_disjoint(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().all(|&x| b.iter().all(|&y| (x - y).abs() > tol))
}
