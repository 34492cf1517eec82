//! Reductions from finitely many players to the continuum families.
//!
//! With N symmetric players on two linear-cost paths, the self-load term
//! drops out of each player's cost comparison and the symmetric dynamics
//! follow the two-path family with
//!
//! ```text
//! a = (N-1)(alpha1 + alpha2) ln(1/(1-eps)),
//! b = (alpha2 N - alpha1) / ((alpha1 + alpha2)(N-1)),
//! ```
//!
//! valid exactly when the interior equilibrium exists: alpha2 < N alpha1 and
//! alpha1 < N alpha2. On m identical-cost strategies the reduction produces
//! equal simplex rates (N-1) alpha ln(1/(1-eps)).

use crate::error::{Error, Result};
use crate::linear::{rate_unit, LinearTwoParams};
use crate::simplex::SimplexParams;

/// Reduce an N-player two-path game to two-path family parameters.
pub fn reduce_atomic_two(
    alpha1: f64,
    alpha2: f64,
    n_players: u32,
    epsilon: f64,
) -> Result<LinearTwoParams> {
    if !(alpha1 > 0.0 && alpha1.is_finite()) || !(alpha2 > 0.0 && alpha2.is_finite()) {
        return Err(Error::Domain(format!(
            "cost slopes must be positive and finite, got {alpha1}, {alpha2}"
        )));
    }
    if n_players < 2 {
        return Err(Error::Domain(format!("need at least two players, got {n_players}")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Domain(format!("learning rate must lie in (0,1), got {epsilon}")));
    }
    let n = n_players as f64;
    if !(alpha2 < n * alpha1 && alpha1 < n * alpha2) {
        return Err(Error::Precondition(format!(
            "no interior symmetric equilibrium: need alpha2 < N*alpha1 and alpha1 < N*alpha2, \
             got alpha1={alpha1}, alpha2={alpha2}, N={n_players}"
        )));
    }
    let a = (n - 1.0) * (alpha1 + alpha2) * rate_unit(epsilon);
    let b = (alpha2 * n - alpha1) / ((alpha1 + alpha2) * (n - 1.0));
    LinearTwoParams::new(a, b)
}

/// Reduce an N-player m-strategy game with one shared cost slope to equal
/// simplex rates.
pub fn reduce_atomic_m(
    alpha: f64,
    n_players: u32,
    epsilon: f64,
    m: usize,
) -> Result<SimplexParams> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::Domain(format!("cost slope must be positive and finite, got {alpha}")));
    }
    if n_players < 2 {
        return Err(Error::Domain(format!("need at least two players, got {n_players}")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Domain(format!("learning rate must lie in (0,1), got {epsilon}")));
    }
    let rate = (n_players as f64 - 1.0) * alpha * rate_unit(epsilon);
    SimplexParams::new(vec![rate; m])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_slopes_always_reduce_to_the_balanced_split() {
        for n in [2u32, 3, 11, 100] {
            let p = reduce_atomic_two(0.7, 0.7, n, 0.5).unwrap();
            // The cancellation (alpha N - alpha)/(2 alpha (N-1)) is exact in
            // the reals but rounds through three products in binary64.
            assert!((p.b() - 0.5).abs() <= f64::EPSILON);
        }
    }

    #[test]
    fn reference_reduction_lands_exactly_on_the_continuum_parameters() {
        let eps = 1.0 - 1.0 / std::f64::consts::E;
        let p = reduce_atomic_two(1.0, 2.0, 11, eps).unwrap();
        // The chain (N-1)(a1+a2) ln(1/(1-eps)) = 10 * 3 * 1 and 21/30 rounds
        // to exactly (30, 0.7) in binary64; orbit equality tests rely on it.
        assert_eq!(p.a(), 30.0);
        assert_eq!(p.b(), 0.7);
    }

    #[test]
    fn missing_interior_equilibrium_is_rejected_with_diagnostic() {
        let err = reduce_atomic_two(5.0, 1.0, 3, 0.5).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        assert!(reduce_atomic_two(1.0, 5.0, 3, 0.5).is_err());
        // Just inside the existence region both orderings pass.
        assert!(reduce_atomic_two(5.0, 1.8, 3, 0.5).is_ok());
    }

    #[test]
    fn m_strategy_reduction_gives_equal_rates() {
        let eps = 1.0 - 1.0 / std::f64::consts::E;
        let p = reduce_atomic_m(1.0, 2, eps, 3).unwrap();
        for r in p.rates() {
            assert!((r - 1.0).abs() < 1e-15);
        }
        let q = reduce_atomic_m(2.0, 51, 0.5, 4).unwrap();
        for r in q.rates() {
            assert!((r - 69.314718055994531).abs() < 1e-13);
        }
        assert_eq!(q.m(), 4);
    }
}
