//! Economic observables along orbits and the analytic slopes at the first
//! period-doubling.
//!
//! For the two-path family with costs alpha*N*x and beta*N*(1-x), the
//! normalized time-average social cost obeys the per-sample identity
//! (x^2 - 2bx + b) = (x-b)^2 + b(1-b), hence SC = 1 + Var/(b(1-b)) exactly;
//! both sides are accumulated with compensated summation so the identity
//! survives 10^6-sample averages at 1e-10. The time-average regret is the
//! realized average cost minus the better fixed action and approaches
//! N*Var(X) for long horizons. At the flip threshold a* = 2/(b(1-b)) the
//! one-sided derivatives of variance, social cost, and regret in a are
//! 3t^3/(2-6t), 3t^2/(2-6t), 3t^2/(1-3t) with t = b(1-b); the regret slope
//! is exactly twice the social-cost slope.

use crate::error::{Error, Result};
use crate::linear::{critical_structure, GameEconomics, LinearTwoParams};
use crate::num::{least_squares_slope, linspace, Kahan};
use crate::orbit::{scalar_orbit, HeteroOrbit, SimplexOrbit};
use crate::polynomial::PolynomialParams;
use crate::{hetero::HeteroParams, linear::rate_unit};

/// All scalar observables of one orbit, computed from the same samples.
#[derive(Debug, Clone, Copy)]
pub struct MetricsReport {
    pub cesaro_mean: f64,
    pub variance: f64,
    pub regret_avg: f64,
    /// NaN when a <= 1/(b(1-b)), where no absorbing interval exists.
    pub regret_bound: f64,
    pub norm_social_cost: f64,
    pub t: usize,
    pub demand_n: f64,
}

/// (1/T) sum x_n.
pub fn cesaro_average(samples: &[f64]) -> f64 {
    let mut acc = Kahan::default();
    for &x in samples {
        acc.add(x);
    }
    acc.value() / samples.len() as f64
}

/// (1/T) sum (x_n - b)^2.
pub fn variance(samples: &[f64], b: f64) -> f64 {
    let mut acc = Kahan::default();
    for &x in samples {
        acc.add((x - b) * (x - b));
    }
    acc.value() / samples.len() as f64
}

/// Realized average cost minus the better fixed action:
/// (1/T) sum (alpha N x^2 + beta N (1-x)^2) - min of the two pure averages.
pub fn time_avg_regret(samples: &[f64], econ: &GameEconomics) -> f64 {
    let t = samples.len() as f64;
    let (mut realized, mut pure1, mut pure2) = (Kahan::default(), Kahan::default(), Kahan::default());
    for &x in samples {
        let c1 = econ.alpha * econ.demand_n * x;
        let c2 = econ.beta * econ.demand_n * (1.0 - x);
        realized.add(x * c1 + (1.0 - x) * c2);
        pure1.add(c1);
        pure2.add(c2);
    }
    realized.value() / t - (pure1.value() / t).min(pure2.value() / t)
}

/// Upper bound N (y_max - b)(b - y_min) on the limiting time-average regret;
/// requires a > 1/(b(1-b)) so [y_min, y_max] is absorbing and contains b.
pub fn regret_upper_bound(p: &LinearTwoParams, demand_n: f64) -> Result<f64> {
    let (a, b) = (p.a(), p.b());
    if a * b * (1.0 - b) <= 1.0 {
        return Err(Error::Precondition(format!(
            "no absorbing interval established: need a > 1/(b(1-b)) = {}, got a = {a}",
            1.0 / (b * (1.0 - b))
        )));
    }
    let cs = critical_structure(p)?;
    Ok(demand_n * (cs.y_max - b) * (b - cs.y_min))
}

/// (1/T) sum (x^2 - 2bx + b)/(b(1-b)); equals 1 + Var/(b(1-b)) identically.
pub fn normalized_social_cost(samples: &[f64], p: &LinearTwoParams) -> f64 {
    let b = p.b();
    let mut acc = Kahan::default();
    for &x in samples {
        acc.add(x * x - 2.0 * b * x + b);
    }
    acc.value() / samples.len() as f64 / (b * (1.0 - b))
}

/// Demand threshold a* = 2/(b(1-b)) where the equilibrium loses stability.
pub fn carrying_capacity(b: f64) -> Result<f64> {
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::Domain(format!("split must lie in (0,1), got {b}")));
    }
    Ok(2.0 / (b * (1.0 - b)))
}

/// Cubic normal-form coefficients of the map around the interior fixed point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalFormCoeffs {
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: f64,
}

/// gamma1 = 2 + ab(b-1), gamma2 = a(b-1/2)(1+ab(b-1)),
/// gamma3 = a(1 + a(1/6 + b(b-1))(3 + ab(b-1))).
pub fn normal_form_coeffs(p: &LinearTwoParams) -> NormalFormCoeffs {
    let (a, b) = (p.a(), p.b());
    let w = a * b * (b - 1.0);
    NormalFormCoeffs {
        gamma1: 2.0 + w,
        gamma2: a * (b - 0.5) * (1.0 + w),
        gamma3: a * (1.0 + a * (1.0 / 6.0 + b * (b - 1.0)) * (3.0 + w)),
    }
}

/// One-sided derivatives of the limiting observables in a at the flip
/// threshold a* = 2/(b(1-b)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BifurcationSlopes {
    pub d_var_da: f64,
    pub d_sc_da: f64,
    pub d_regret_da: f64,
}

/// Closed forms with t = b(1-b): dVar = 3t^3/(2-6t), dSC = 3t^2/(2-6t),
/// dRegret = 3t^2/(1-3t) = 2 dSC (the doubling is kept bit-exact).
pub fn bifurcation_analytics(b: f64) -> Result<BifurcationSlopes> {
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::Domain(format!("split must lie in (0,1), got {b}")));
    }
    let t = b * (1.0 - b);
    let d_regret_da = 3.0 * (t * t) / (1.0 - 3.0 * t);
    let d_sc_da = 0.5 * d_regret_da;
    let d_var_da = t * d_sc_da;
    Ok(BifurcationSlopes { d_var_da, d_sc_da, d_regret_da })
}

/// (1/T) sum (c1(x_n) - c2(x_n)) for monomial costs c1 = alpha (N x)^p,
/// c2 = beta (N (1-x))^p; approaches 0 on long horizons.
pub fn cost_gap_average(samples: &[f64], p: &PolynomialParams, econ: &GameEconomics) -> f64 {
    let deg = p.degree_p() as i32;
    let mut acc = Kahan::default();
    for &x in samples {
        let c1 = econ.alpha * (econ.demand_n * x).powi(deg);
        let c2 = econ.beta * (econ.demand_n * (1.0 - x)).powi(deg);
        acc.add(c1 - c2);
    }
    acc.value() / samples.len() as f64
}

/// Per-path time-average flows of a simplex orbit.
pub fn simplex_cost_averages(orbit: &SimplexOrbit) -> Vec<f64> {
    let mut acc = vec![Kahan::default(); orbit.m];
    for i in 0..orbit.len() {
        for (k, &c) in orbit.sample(i).iter().enumerate() {
            acc[k].add(c);
        }
    }
    acc.into_iter().map(|k| k.value() / orbit.len() as f64).collect()
}

/// Time average of the population mixture eta1 x_n + eta2 y_n.
pub fn hetero_mixture_average(orbit: &HeteroOrbit, p: &HeteroParams) -> f64 {
    let mut acc = Kahan::default();
    for &(x, y) in &orbit.samples {
        acc.add(p.eta1() * x + p.eta2() * y);
    }
    acc.value() / orbit.samples.len() as f64
}

/// Every observable of one orbit of the two-path family. The demand for the
/// regret columns comes from `econ`; the orbit is regenerated from the map
/// parameters, so `p` and `econ` must describe the same game.
pub fn compute_metrics(samples: &[f64], p: &LinearTwoParams, econ: &GameEconomics) -> MetricsReport {
    let bound = regret_upper_bound(p, econ.demand_n).unwrap_or(f64::NAN);
    MetricsReport {
        cesaro_mean: cesaro_average(samples),
        variance: variance(samples, p.b()),
        regret_avg: time_avg_regret(samples, econ),
        regret_bound: bound,
        norm_social_cost: normalized_social_cost(samples, p),
        t: samples.len(),
        demand_n: econ.demand_n,
    }
}

/// Settings for [`empirical_bifurcation_slopes`]. Defaults: 20 sample
/// demands in (a*, a*+0.2], horizon 10^6, transient 10^5, start 0.3.
#[derive(Debug, Clone, Copy)]
pub struct SlopeEstimation {
    pub points: usize,
    pub t: usize,
    pub transient: usize,
    pub x0: f64,
    pub window: f64,
}

impl Default for SlopeEstimation {
    fn default() -> Self {
        Self { points: 20, t: 1_000_000, transient: 100_000, x0: 0.3, window: 0.2 }
    }
}

/// Least-squares slopes of the measured variance, social cost, and regret
/// against a over (a*, a* + window], the empirical counterpart of
/// [`bifurcation_analytics`]. Demand is tied to the drive (N = a, unit cost
/// scale alpha + beta = 1) so the regret column matches the analytic slope.
pub fn empirical_bifurcation_slopes(b: f64, opts: &SlopeEstimation) -> Result<BifurcationSlopes> {
    let a_star = carrying_capacity(b)?;
    if opts.points < 2 {
        return Err(Error::Precondition("slope fit needs at least two demand points".into()));
    }
    let step = opts.window / opts.points as f64;
    let a_values: Vec<f64> = (1..=opts.points).map(|k| a_star + step * k as f64).collect();
    let eps = 1.0 - 1.0 / std::f64::consts::E;
    let (mut vars, mut scs, mut regs) = (Vec::new(), Vec::new(), Vec::new());
    for &a in &a_values {
        let p = LinearTwoParams::new(a, b)?;
        let econ = GameEconomics::new(1.0 - b, b, a / rate_unit(eps), eps)?;
        let orbit = scalar_orbit(&p, opts.x0, opts.transient, opts.t)?;
        vars.push(variance(&orbit.samples, b));
        scs.push(normalized_social_cost(&orbit.samples, &p));
        regs.push(time_avg_regret(&orbit.samples, &econ));
    }
    Ok(BifurcationSlopes {
        d_var_da: least_squares_slope(&a_values, &vars),
        d_sc_da: least_squares_slope(&a_values, &scs),
        d_regret_da: least_squares_slope(&a_values, &regs),
    })
}

/// The demand grid used by [`empirical_bifurcation_slopes`], exposed so
/// sweeps can reuse the exact same sampling.
pub fn slope_demand_grid(b: f64, opts: &SlopeEstimation) -> Result<Vec<f64>> {
    let a_star = carrying_capacity(b)?;
    Ok(linspace(
        a_star + opts.window / opts.points as f64,
        a_star + opts.window,
        opts.points,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::scalar_orbit;

    fn orbit(a: f64, b: f64, t: usize) -> Vec<f64> {
        let p = LinearTwoParams::new(a, b).unwrap();
        scalar_orbit(&p, 0.3, 20_000, t).unwrap().samples
    }

    #[test]
    fn converged_orbit_has_textbook_equilibrium_metrics() {
        let p = LinearTwoParams::new(6.0, 0.5).unwrap();
        let econ = GameEconomics::new(0.5, 0.5, 6.0, 1.0 - 1.0 / std::f64::consts::E).unwrap();
        let samples = orbit(6.0, 0.5, 10_000);
        let m = compute_metrics(&samples, &p, &econ);
        assert!((m.cesaro_mean - 0.5).abs() < 1e-12);
        assert!(m.variance < 1e-24);
        assert!(m.regret_avg.abs() < 1e-12);
        assert!((m.norm_social_cost - 1.0).abs() < 1e-12);
    }

    #[test]
    fn period_two_orbit_mean_and_variance_match_frozen_closed_forms() {
        let samples = orbit(10.0, 0.5, 100_000);
        assert!((cesaro_average(&samples) - 0.5).abs() < 1e-9);
        assert!((variance(&samples, 0.5) - 0.12617122552960420).abs() < 1e-9);
    }

    #[test]
    fn social_cost_identity_holds_to_ten_decimals() {
        for (a, b) in [(6.0, 0.5), (10.0, 0.5), (25.0, 0.7), (40.0, 0.7)] {
            let p = LinearTwoParams::new(a, b).unwrap();
            let samples = orbit(a, b, 200_000);
            let sc = normalized_social_cost(&samples, &p);
            let var = variance(&samples, b);
            assert!(
                (sc - 1.0 - var / (b * (1.0 - b))).abs() < 1e-10,
                "identity broke at a={a}, b={b}"
            );
        }
    }

    #[test]
    fn regret_approaches_demand_times_variance() {
        let p = LinearTwoParams::new(10.0, 0.5).unwrap();
        let eps = 1.0 - 1.0 / std::f64::consts::E;
        let econ = GameEconomics::new(0.5, 0.5, 10.0, eps).unwrap();
        let samples = orbit(10.0, 0.5, 1_000_000);
        let r = time_avg_regret(&samples, &econ);
        let nv = 10.0 * variance(&samples, 0.5);
        assert!((r - nv).abs() < 1e-3 * 10.0, "regret {r} vs N*Var {nv}");
        assert!(r <= regret_upper_bound(&p, 10.0).unwrap());
    }

    #[test]
    fn regret_bound_requires_the_absorbing_interval() {
        let p = LinearTwoParams::new(3.9, 0.5).unwrap();
        assert!(matches!(regret_upper_bound(&p, 3.9), Err(Error::Precondition(_))));
        let q = LinearTwoParams::new(20.0, 0.7).unwrap();
        let bound = regret_upper_bound(&q, 20.0).unwrap();
        assert!(bound > 0.0 && bound.is_finite());
    }

    #[test]
    fn carrying_capacity_matches_reference_values() {
        assert_eq!(carrying_capacity(0.5).unwrap(), 8.0);
        assert!((carrying_capacity(0.7).unwrap() - 9.5238095238095238).abs() < 1e-15);
        assert!(carrying_capacity(0.0).is_err());
        assert!(carrying_capacity(1e-6).unwrap() > 1e6);
    }

    #[test]
    fn normal_form_vanishes_exactly_at_the_threshold() {
        let p = LinearTwoParams::new(8.0, 0.5).unwrap();
        let g = normal_form_coeffs(&p);
        assert_eq!(g.gamma1, 0.0);
        assert_eq!(g.gamma2, 0.0);
        assert!((g.gamma3 - 8.0 / 3.0).abs() < 1e-14);
        for &b in &[0.3, 0.5, 0.62, 0.7] {
            let a = carrying_capacity(b).unwrap();
            let g = normal_form_coeffs(&LinearTwoParams::new(a, b).unwrap());
            assert!(g.gamma1.abs() < 1e-10);
            assert!(g.gamma2 * g.gamma2 + g.gamma3 > 0.0);
        }
    }

    #[test]
    fn analytic_slopes_match_frozen_values_and_doubling_identity() {
        let s5 = bifurcation_analytics(0.5).unwrap();
        assert_eq!(s5.d_var_da, 0.09375);
        assert_eq!(s5.d_sc_da, 0.375);
        assert_eq!(s5.d_regret_da, 0.75);
        // Frozen targets are the correctly rounded exact-decimal values
        // (d_regret = 1323/3700 at b = 0.7); evaluating from the rounded
        // inputs amplifies their half-ulp by d ln(slope)/d ln(t) ~ 3.7.
        let s7 = bifurcation_analytics(0.7).unwrap();
        assert!((s7.d_sc_da - 0.17878378378378378).abs() < 4.0 * f64::EPSILON * 0.18);
        assert!((s7.d_regret_da - 0.35756756756756757).abs() < 4.0 * f64::EPSILON * 0.36);
        assert!((s7.d_var_da - 0.037544594594594595).abs() < 4.0 * f64::EPSILON * 0.038);
        for k in 1..20 {
            let b = k as f64 / 20.0;
            let s = bifurcation_analytics(b).unwrap();
            assert_eq!(s.d_regret_da, 2.0 * s.d_sc_da);
        }
    }

    #[test]
    fn detected_periodic_orbits_average_back_to_the_split() {
        use crate::orbit::{detect_period, DetectOptions};
        for (a, b) in [(10.0, 0.5), (12.0, 0.55), (25.0, 0.61)] {
            let p = LinearTwoParams::new(a, b).unwrap();
            let r = detect_period(&p, 0.3, &DetectOptions::default()).unwrap();
            if r.period.is_some() {
                let mean: f64 = r.points.iter().sum::<f64>() / r.points.len() as f64;
                assert!((mean - b).abs() < 1e-9, "cycle mean {mean} vs b={b}");
            }
        }
    }

    #[test]
    fn cesaro_deviation_decays_when_the_horizon_grows_tenfold() {
        let p = LinearTwoParams::new(40.0, 0.7).unwrap();
        let long = scalar_orbit(&p, 0.3, 20_000, 400_000).unwrap().samples;
        let short_dev = (cesaro_average(&long[..40_000]) - 0.7).abs();
        let long_dev = (cesaro_average(&long) - 0.7).abs();
        assert!(long_dev * 5.0 <= short_dev.max(1e-9), "{short_dev} -> {long_dev}");
    }

    #[test]
    fn polynomial_cost_gap_vanishes_at_equilibrium() {
        let p = PolynomialParams::new(40.0, 0.7, 2).unwrap();
        let econ = GameEconomics::new(0.3, 0.7, 40.0f64.sqrt(), 1.0 - 1.0 / std::f64::consts::E)
            .unwrap();
        let xs = crate::polynomial::polynomial_equilibrium(&p);
        let gap = cost_gap_average(&[xs; 16], &p, &econ);
        assert!(gap.abs() < 1e-13);
    }
}
