//! Point-null and interval-null hypothesis testing for a normal mean with
//! known variance.
//!
//! * [`point_null`]: spike-and-slab posteriors (Lindley's formula, Bartlett's
//!   correction, the normal-conjugate Bayes factor, calibrated prior odds).
//! * [`paradox`]: minimum sample sizes for strong contrast, posterior curves,
//!   conflict zones and a seeded Monte Carlo conflict-rate estimator.
//! * [`interval_null`]: quadrature Bayes factors for `|θ − θ0| ≤ δ`, their
//!   Laplace expansion, TOST, and the joint frequentist/Bayesian verdict.
//! * [`report`]: CSV/JSON reports and the command-line front end.
//! * [`numerics`]: normal CDF/quantile, Brent root finding, adaptive
//!   Gauss–Kronrod quadrature.

// `!(a < b)` is used on purpose so NaN fails range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod interval_null;
pub mod numerics;
pub mod paradox;
pub mod point_null;
pub mod report;

pub use error::{Error, Result};
