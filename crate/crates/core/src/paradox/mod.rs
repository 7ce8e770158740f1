//! Minimum sample sizes for strong contrast, the two posterior curves
//! (growing `n` versus growing prior scale), and the conflict band in z.

mod simulate;

pub use simulate::{simulate_conflict_rate, SimulationEstimate, SimulationSpec, Truth};

use crate::error::{check_positive, check_probability, check_sample_size, Error, Result};
use crate::numerics::roots::{find_root, RootBracket};
use crate::numerics::special::{logistic, logit, norm_cdf, two_sided_p_value};
use crate::point_null::{critical_z, log_conjugate_bf01_real};

/// Largest sample size the strong-contrast solver will consider.
pub const N_CAP: u64 = 10_000_000_000_000;

/// Width tolerance for integer-valued roots.
const INTEGER_ROOT_TOL: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Setup {
    /// Lindley's posterior formula with a uniform slab whose density is
    /// absorbed into the constant.
    LindleyUniform,
    /// Normal-conjugate slab with relative scale `tau`.
    NormalConjugate,
}

impl Setup {
    pub fn label(self) -> &'static str {
        match self {
            Setup::LindleyUniform => "lindley-uniform",
            Setup::NormalConjugate => "normal-conjugate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrongContrastQuery {
    pub alpha: f64,
    pub setup: Setup,
    pub c: f64,
    /// Conjugate setup only.
    pub tau: f64,
    /// Lindley setup only.
    pub sigma: f64,
}

impl StrongContrastQuery {
    pub fn new(alpha: f64, setup: Setup) -> Self {
        Self {
            alpha,
            setup,
            c: 0.5,
            tau: 1.0,
            sigma: 1.0,
        }
    }

    pub fn with_c(mut self, c: f64) -> Self {
        self.c = c;
        self
    }

    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = tau;
        self
    }

    pub fn with_sigma(mut self, sigma: f64) -> Self {
        self.sigma = sigma;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 0.5) {
            return Err(Error::invalid(
                "alpha",
                format!("{} is not in (0, 0.5)", self.alpha),
            ));
        }
        check_probability("c", self.c)?;
        check_positive("tau", self.tau)?;
        check_positive("sigma", self.sigma)?;
        Ok(())
    }

    /// Log posterior odds on `H0` at the just-significant mean for a real
    /// sample size `n`.
    fn log_posterior_odds(&self, z: f64, n: f64) -> f64 {
        let prior = self.c.ln() - (-self.c).ln_1p();
        let bf = match self.setup {
            Setup::LindleyUniform => {
                -0.5 * z * z - self.sigma.ln() - 0.5 * (2.0 * std::f64::consts::PI).ln()
                    + 0.5 * n.ln()
            }
            Setup::NormalConjugate => log_conjugate_bf01_real(z, n, self.tau),
        };
        prior + bf
    }
}

/// Smallest integer `n` at which the just-significant mean at level `alpha`
/// gives `P(H0 | x̄) ≥ 1 − alpha`.
pub fn min_n_strong_contrast(query: &StrongContrastQuery) -> Result<u64> {
    query.validate()?;
    let z = critical_z(query.alpha);
    let target = logit(1.0 - query.alpha);
    let gap = |n: f64| query.log_posterior_odds(z, n) - target;
    let reaches = |n: u64| gap(n as f64) >= 0.0;

    if reaches(1) {
        return Ok(1);
    }
    // The conjugate log odds fall until nτ² = z² − 1 and rise afterwards, so
    // no root lies below the turning point once n = 1 misses the target.
    let start = match query.setup {
        Setup::LindleyUniform => 1.0,
        Setup::NormalConjugate => ((z * z - 1.0) / (query.tau * query.tau)).max(1.0),
    };
    if start >= N_CAP as f64 || !reaches(N_CAP) {
        return Err(Error::SearchCapped { cap: N_CAP });
    }
    let root = find_root(
        gap,
        RootBracket::new(start, N_CAP as f64, INTEGER_ROOT_TOL)?,
    )?;

    // settle the integer boundary exactly against the predicate
    let mut n = (root.ceil() as u64).clamp(1, N_CAP);
    while n > 1 && reaches(n - 1) {
        n -= 1;
    }
    while !reaches(n) {
        n += 1;
    }
    Ok(n)
}

/// Closed-form Lindley threshold `2πσ²((1 − c)/c)²((1 − α)/α)²·e^{z²}` as a
/// real number (the solver returns its ceiling).
pub fn lindley_threshold_closed_form(alpha: f64, c: f64, sigma: f64) -> f64 {
    let z = critical_z(alpha);
    let ln = (2.0 * std::f64::consts::PI).ln()
        + 2.0 * sigma.ln()
        + 2.0 * ((1.0 - c).ln() - c.ln())
        + 2.0 * ((1.0 - alpha).ln() - alpha.ln())
        + z * z;
    ln.exp()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub abscissa: f64,
    pub posterior_h0: f64,
    pub p_value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSeries {
    pub axis_label: &'static str,
    pub points: Vec<CurvePoint>,
}

fn check_grid<T: PartialOrd + Copy>(grid: &[T]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::invalid("grid", "grid is empty"));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::invalid("grid", "grid is not strictly increasing"));
    }
    Ok(())
}

/// Posterior of `H0` along a sample-size grid with `z` and the prior held
/// fixed.
pub fn lindley_curve(z: f64, tau: f64, c: f64, n_grid: &[u64]) -> Result<CurveSeries> {
    crate::error::check_finite("z", z)?;
    check_positive("tau", tau)?;
    check_probability("c", c)?;
    check_grid(n_grid)?;
    check_sample_size(n_grid[0])?;
    let prior = logit(c);
    let p_value = two_sided_p_value(z);
    let points = n_grid
        .iter()
        .map(|&n| CurvePoint {
            abscissa: n as f64,
            posterior_h0: logistic(prior + log_conjugate_bf01_real(z, n as f64, tau)),
            p_value,
        })
        .collect();
    Ok(CurveSeries {
        axis_label: "n",
        points,
    })
}

/// Posterior of `H0` along a grid of conjugate prior scales with the data
/// `(z, n)` held fixed.
pub fn bartlett_curve(z: f64, n: u64, c: f64, tau_grid: &[f64]) -> Result<CurveSeries> {
    crate::error::check_finite("z", z)?;
    check_sample_size(n)?;
    check_probability("c", c)?;
    check_grid(tau_grid)?;
    for &t in tau_grid {
        check_positive("tau", t)?;
    }
    let prior = logit(c);
    let p_value = two_sided_p_value(z);
    let points = tau_grid
        .iter()
        .map(|&tau| CurvePoint {
            abscissa: tau,
            posterior_h0: logistic(prior + log_conjugate_bf01_real(z, n as f64, tau)),
            p_value,
        })
        .collect();
    Ok(CurveSeries {
        axis_label: "tau",
        points,
    })
}

/// Band of `|z|` in which the point-null test rejects at `alpha` while the
/// conjugate posterior of `H0` is at least the threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConflictZone {
    bounds: Option<(f64, f64)>,
}

impl ConflictZone {
    pub fn empty() -> Self {
        Self { bounds: None }
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_none()
    }

    pub fn bounds(&self) -> Option<(f64, f64)> {
        self.bounds
    }

    pub fn z_lo(&self) -> Option<f64> {
        self.bounds.map(|b| b.0)
    }

    /// May be `+∞` when the threshold is vacuous.
    pub fn z_hi(&self) -> Option<f64> {
        self.bounds.map(|b| b.1)
    }

    pub fn contains(&self, z: f64) -> bool {
        self.bounds
            .is_some_and(|(lo, hi)| z.abs() >= lo && z.abs() <= hi)
    }

    /// Probability that a standard normal `z` lands in the zone (either sign).
    pub fn null_probability(&self) -> f64 {
        match self.bounds {
            None => 0.0,
            Some((lo, hi)) => 2.0 * (norm_cdf(-lo) - norm_cdf(-hi)),
        }
    }
}

pub fn conflict_zone(
    n: u64,
    alpha: f64,
    tau: f64,
    c: f64,
    posterior_threshold: f64,
) -> Result<ConflictZone> {
    check_sample_size(n)?;
    check_probability("alpha", alpha)?;
    check_positive("tau", tau)?;
    check_probability("c", c)?;
    if !(0.0..1.0).contains(&posterior_threshold) {
        return Err(Error::invalid(
            "posterior_threshold",
            format!("{posterior_threshold} is not in [0, 1)"),
        ));
    }
    let z_lo = critical_z(alpha);
    if posterior_threshold == 0.0 {
        return Ok(ConflictZone {
            bounds: Some((z_lo, f64::INFINITY)),
        });
    }
    let prior = logit(c);
    let target = logit(posterior_threshold);
    let nf = n as f64;
    let gap = |z: f64| prior + log_conjugate_bf01_real(z, nf, tau) - target;

    let at_lo = gap(z_lo);
    if at_lo <= 0.0 {
        return Ok(ConflictZone::empty());
    }
    // gap is a downward parabola in z; double until it turns negative
    let mut hi = z_lo.max(1.0) * 2.0;
    while gap(hi) > 0.0 {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::Domain("conflict zone is unbounded".into()));
        }
    }
    let z_hi = find_root(gap, RootBracket::new(z_lo, hi, 1e-12)?)?;
    if z_hi <= z_lo {
        return Ok(ConflictZone::empty());
    }
    Ok(ConflictZone {
        bounds: Some((z_lo, z_hi)),
    })
}

/// Log-spaced grid `10^(k/per_decade)` between `lo` and `hi` inclusive
/// (endpoints snapped to the grid).
pub fn log_grid(lo: f64, hi: f64, per_decade: u32) -> Result<Vec<f64>> {
    check_positive("lo", lo)?;
    check_positive("hi", hi)?;
    if hi < lo {
        return Err(Error::invalid("grid", "upper end is below lower end"));
    }
    if per_decade == 0 {
        return Err(Error::invalid("per_decade", "must be at least 1"));
    }
    let step = per_decade as f64;
    let k_lo = (lo.log10() * step - 1e-9).ceil() as i64;
    let k_hi = (hi.log10() * step + 1e-9).floor() as i64;
    if k_hi < k_lo {
        return Err(Error::invalid(
            "grid",
            "no grid point falls inside the range",
        ));
    }
    Ok((k_lo..=k_hi).map(|k| grid_point(k, per_decade)).collect())
}

fn grid_point(k: i64, per_decade: u32) -> f64 {
    let d = per_decade as i64;
    let (decade, rem) = (k.div_euclid(d), k.rem_euclid(d));
    // exact powers of ten on decade boundaries
    let base = 10f64.powi(decade as i32);
    if rem == 0 {
        base
    } else {
        base * 10f64.powf(rem as f64 / d as f64)
    }
}

/// Integer sample sizes on a log grid, rounded and deduplicated.
pub fn log_grid_integers(lo: f64, hi: f64, per_decade: u32) -> Result<Vec<u64>> {
    let mut out: Vec<u64> = log_grid(lo, hi, per_decade)?
        .into_iter()
        .map(|x| x.round().max(1.0) as u64)
        .collect();
    out.dedup();
    Ok(out)
}

/// ln of the posterior odds on `H0` as a function of `z`, exposed for
/// consistency checks and plotting.
pub fn conjugate_log_posterior_odds(z: f64, n: u64, tau: f64, c: f64) -> f64 {
    logit(c) + log_conjugate_bf01_real(z, n as f64, tau)
}
