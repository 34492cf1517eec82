//! Numerical laboratory for multiplicative-weights dynamics in congestion
//! games.
//!
//! All families iterate the multiplicative-weights update on parallel-link
//! games in logit/log space, where each step is an exact additive decrement
//! and orbits survive arbitrarily strong drives. The crate provides:
//!
//! - map families and reductions ([`linear`], [`polynomial`], [`simplex`],
//!   [`hetero`], [`atomic`]) sharing the [`ScalarMap`] derivative ladder;
//! - orbit machinery ([`orbit`]): iteration, period detection, Lyapunov
//!   exponents, symbolic coding, cobweb traces;
//! - economic observables ([`metrics`]): Cesaro means, variance,
//!   time-average regret and its bound, normalized social cost, and the
//!   analytic slopes at the first period-doubling;
//! - chaos certification ([`chaos`]): period-3 witnesses, symbolic-word
//!   entropy estimates, period-doubling cascade constants, Schwarzian
//!   negativity, coexisting attractors;
//! - parameter sweeps ([`sweep`]): bifurcation scans, period diagrams,
//!   Lyapunov heatmaps, metric curves, deterministic CSV/PPM emission with
//!   row-atomic resume.
//!
//! Everything is pure and deterministic: no randomness, no shared mutable
//! state; identical inputs produce byte-identical outputs at any thread
//! count.

pub mod atomic;
pub mod chaos;
pub mod error;
pub mod hetero;
pub mod linear;
pub mod map;
pub mod metrics;
pub mod num;
pub mod orbit;
pub mod polynomial;
pub mod simplex;
pub mod sweep;

pub use error::{Error, Result};
pub use hetero::HeteroParams;
pub use linear::{CriticalStructure, GameEconomics, LinearTwoParams};
pub use map::{MapSpec, ScalarMap};
pub use polynomial::PolynomialParams;
pub use simplex::SimplexParams;
