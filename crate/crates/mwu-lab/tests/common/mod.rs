//! Oracles shared by the integration suites, implemented independently of
//! the library's own numerics: a bisection solver for the symmetric
//! period-2 closed form and high-order centered finite-difference stencils.
#![allow(dead_code)]

use mwu_lab::num::logit;

/// Root of 2 logit(s) = a (s - 1/2) on (0, 1/2): the lower point of the
/// symmetric two-cycle. Pure bisection; brackets where the left end is
/// negative and the single interior root is crossed once.
pub fn period2_point_bisection(a: f64) -> f64 {
    let g = |s: f64| 2.0 * logit(s) - a * (s - 0.5);
    let (mut lo, mut hi) = (0.01_f64, 0.45_f64);
    assert!(g(lo) < 0.0 && g(hi) > 0.0, "bisection bracket lost for a = {a}");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Centered stencils over offsets -4..=4: first and second derivatives at
/// eighth order, third derivative at sixth order.
pub const STENCIL_D1: [f64; 9] = [
    1.0 / 280.0,
    -4.0 / 105.0,
    1.0 / 5.0,
    -4.0 / 5.0,
    0.0,
    4.0 / 5.0,
    -1.0 / 5.0,
    4.0 / 105.0,
    -1.0 / 280.0,
];
pub const STENCIL_D2: [f64; 9] = [
    -1.0 / 560.0,
    8.0 / 315.0,
    -1.0 / 5.0,
    8.0 / 5.0,
    -205.0 / 72.0,
    8.0 / 5.0,
    -1.0 / 5.0,
    8.0 / 315.0,
    -1.0 / 560.0,
];
pub const STENCIL_D3: [f64; 9] = [
    -7.0 / 240.0,
    3.0 / 10.0,
    -169.0 / 120.0,
    61.0 / 30.0,
    0.0,
    -61.0 / 30.0,
    169.0 / 120.0,
    -3.0 / 10.0,
    7.0 / 240.0,
];

/// First three derivatives of `f` at `x` by the stencils above, with the
/// step shrunk near the interval ends so every node stays inside (0,1).
pub fn fd_derivatives(f: impl Fn(f64) -> f64, x: f64, h: f64) -> (f64, f64, f64) {
    let vals: Vec<f64> = (-4..=4).map(|k| f(x + k as f64 * h)).collect();
    let dot = |c: &[f64; 9]| c.iter().zip(&vals).map(|(ci, vi)| ci * vi).sum::<f64>();
    (dot(&STENCIL_D1) / h, dot(&STENCIL_D2) / (h * h), dot(&STENCIL_D3) / (h * h * h))
}

/// The step rule used for all finite-difference cross-checks.
pub fn fd_step(x: f64) -> f64 {
    0.02 * x.min(1.0 - x).min(0.2)
}

/// One visible line per acceptance criterion (shown under --nocapture).
pub fn pass(number: u32, name: &str) {
    println!("ACCEPTANCE {number:02} {name}: PASS");
}
