//! Point-null posteriors and Bayes factors under a spike-and-slab prior.
//!
//! The null `θ = θ0` carries a Dirac spike of mass `c`; the remaining `1 − c`
//! is spread over a slab that is either uniform on an interval of width `I`
//! centred at `θ0`, or normal with standard deviation `τσ`. All quantities are
//! evaluated as log odds and converted at the end, so very large `n` or `z`
//! neither overflow nor underflow.

use std::f64::consts::PI;

use crate::error::{
    check_finite, check_positive, check_probability, check_sample_size, Error, Result,
};
use crate::numerics::special::{logistic, norm_quantile, two_sided_p_value};

/// Tolerance within which a supplied `z` and sample mean must agree.
pub const CONSISTENCY_TOL: f64 = 1e-9;

/// Sampling frame: the mean of `n` draws from `N(θ, σ²)` summarised by its
/// standardized distance `z` from `θ0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub theta0: f64,
    pub sigma: f64,
    pub n: u64,
    pub z: f64,
}

impl Scenario {
    pub fn new(theta0: f64, sigma: f64, n: u64, z: f64) -> Result<Self> {
        Ok(Self {
            theta0: check_finite("theta0", theta0)?,
            sigma: check_positive("sigma", sigma)?,
            n: check_sample_size(n)?,
            z: check_finite("z", z)?,
        })
    }

    pub fn from_mean(theta0: f64, sigma: f64, n: u64, mean: f64) -> Result<Self> {
        check_finite("mean", mean)?;
        let sigma = check_positive("sigma", sigma)?;
        let n = check_sample_size(n)?;
        Self::new(
            theta0,
            sigma,
            n,
            (mean - theta0) * (n as f64).sqrt() / sigma,
        )
    }

    /// The scenario whose mean sits exactly on the two-sided rejection
    /// boundary at level `alpha`.
    pub fn just_significant(theta0: f64, sigma: f64, n: u64, alpha: f64) -> Result<Self> {
        check_probability("alpha", alpha)?;
        Self::new(theta0, sigma, n, critical_z(alpha))
    }

    /// Builds a scenario from whichever of `z` and `mean` are given. When both
    /// are present they must describe the same data to within
    /// [`CONSISTENCY_TOL`] on the `z` scale.
    pub fn resolve(
        theta0: f64,
        sigma: f64,
        n: u64,
        z: Option<f64>,
        mean: Option<f64>,
    ) -> Result<Self> {
        match (z, mean) {
            (Some(z), None) => Self::new(theta0, sigma, n, z),
            (None, Some(m)) => Self::from_mean(theta0, sigma, n, m),
            (Some(z), Some(m)) => {
                let from_mean = Self::from_mean(theta0, sigma, n, m)?;
                if (from_mean.z - z).abs() > CONSISTENCY_TOL {
                    return Err(Error::invalid(
                        "z",
                        format!(
                            "z = {z} disagrees with the sample mean {m} (which implies z = {})",
                            from_mean.z
                        ),
                    ));
                }
                Self::new(theta0, sigma, n, z)
            }
            (None, None) => Err(Error::invalid(
                "z",
                "either z or the sample mean is required",
            )),
        }
    }

    pub fn standard_error(&self) -> f64 {
        self.sigma / (self.n as f64).sqrt()
    }

    /// Sample mean x̄ = θ0 + zσ/√n.
    pub fn mean(&self) -> f64 {
        self.theta0 + self.z * self.standard_error()
    }

    /// Two-sided p-value of the point-null z test.
    pub fn p_value(&self) -> f64 {
        two_sided_p_value(self.z)
    }
}

/// The upper α/2 quantile `Φ⁻¹(1 − α/2)`.
pub fn critical_z(alpha: f64) -> f64 {
    // Φ⁻¹(1 − α/2) = −Φ⁻¹(α/2), and α/2 is exact
    -norm_quantile(0.5 * alpha)
}

/// `θ0 + Φ⁻¹(1 − α/2)·σ/√n`: the sample mean whose p-value is exactly `alpha`.
pub fn just_significant_mean(theta0: f64, sigma: f64, n: u64, alpha: f64) -> Result<f64> {
    Ok(Scenario::just_significant(theta0, sigma, n, alpha)?.mean())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Slab {
    /// Uniform on `[θ0 − width/2, θ0 + width/2]`.
    Uniform { width: f64 },
    /// Normal centred at `θ0` with standard deviation `tau·σ`.
    Conjugate { tau: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriorSpec {
    pub mass_on_null: f64,
    pub slab: Slab,
}

impl PriorSpec {
    pub fn new(mass_on_null: f64, slab: Slab) -> Result<Self> {
        check_probability("c", mass_on_null)?;
        match slab {
            Slab::Uniform { width } => {
                check_positive("interval_width", width)?;
            }
            Slab::Conjugate { tau } => {
                check_positive("tau", tau)?;
            }
        }
        Ok(Self { mass_on_null, slab })
    }

    pub fn uniform(mass_on_null: f64, width: f64) -> Result<Self> {
        Self::new(mass_on_null, Slab::Uniform { width })
    }

    pub fn conjugate(mass_on_null: f64, tau: f64) -> Result<Self> {
        Self::new(mass_on_null, Slab::Conjugate { tau })
    }

    pub fn log_prior_odds(&self) -> f64 {
        let c = self.mass_on_null;
        c.ln() - (-c).ln_1p()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BayesReport {
    pub bf01: f64,
    pub log_bf01: f64,
    pub posterior_h0: f64,
    pub posterior_odds: f64,
    pub log_posterior_odds: f64,
    pub mass_on_null: f64,
    pub inputs: Option<(Scenario, PriorSpec)>,
}

/// Converts a Bayes factor and prior null mass into posterior odds and the
/// posterior probability of `H0`.
pub fn posterior_from_bf(bf01: f64, c: f64) -> Result<BayesReport> {
    check_positive("bf01", bf01)?;
    check_probability("c", c)?;
    let posterior_odds = c / (1.0 - c) * bf01;
    let log_posterior_odds = posterior_odds.ln();
    Ok(BayesReport {
        bf01,
        log_bf01: bf01.ln(),
        posterior_h0: posterior_odds / (1.0 + posterior_odds),
        posterior_odds,
        log_posterior_odds,
        mass_on_null: c,
        inputs: None,
    })
}

/// Log-space variant of [`posterior_from_bf`] for Bayes factors that may not
/// be representable as `f64`.
pub fn posterior_from_log_bf(log_bf01: f64, c: f64) -> Result<BayesReport> {
    if log_bf01.is_nan() {
        return Err(Error::invalid("log_bf01", "NaN"));
    }
    check_probability("c", c)?;
    let log_posterior_odds = c.ln() - (-c).ln_1p() + log_bf01;
    Ok(BayesReport {
        bf01: log_bf01.exp(),
        log_bf01,
        posterior_h0: logistic(log_posterior_odds),
        posterior_odds: log_posterior_odds.exp(),
        log_posterior_odds,
        mass_on_null: c,
        inputs: None,
    })
}

/// ln B01 for a spike at θ0 against a uniform slab of `ln_width = ln I`,
/// using the Laplace form of the slab's marginal likelihood.
fn log_uniform_bf01(z: f64, sigma: f64, n: f64, ln_width: f64) -> f64 {
    // B01 = e^{−z²/2} / ((1/I) σ √(2π/n))
    -0.5 * z * z - sigma.ln() - 0.5 * (2.0 * PI / n).ln() + ln_width
}

fn point_posterior(c: f64, z: f64, sigma: f64, n: u64, ln_width: f64) -> Result<f64> {
    check_probability("c", c)?;
    check_finite("z", z)?;
    check_positive("sigma", sigma)?;
    check_sample_size(n)?;
    let log_odds = c.ln() - (-c).ln_1p() + log_uniform_bf01(z, sigma, n as f64, ln_width);
    Ok(logistic(log_odds))
}

/// Lindley's posterior probability of the null,
/// `c·e^{−z²/2} / (c·e^{−z²/2} + (1 − c)·σ·√(2π/n))`.
pub fn lindley_posterior(c: f64, z: f64, sigma: f64, n: u64) -> Result<f64> {
    point_posterior(c, z, sigma, n, 0.0)
}

/// Bartlett's corrected posterior, which restores the `1/I` density of the
/// uniform slab: `c·e^{−z²/2} / (c·e^{−z²/2} + ((1 − c)/I)·σ·√(2π/n))`.
///
/// At `I = 1` the result is bit-identical to [`lindley_posterior`].
pub fn bartlett_posterior(c: f64, z: f64, sigma: f64, n: u64, interval_width: f64) -> Result<f64> {
    check_positive("interval_width", interval_width)?;
    point_posterior(c, z, sigma, n, interval_width.ln())
}

/// ln B01 for the normal-conjugate slab with real-valued `n` (used by the
/// sample-size solvers).
pub(crate) fn log_conjugate_bf01_real(z: f64, n: f64, tau: f64) -> f64 {
    let t = n * tau * tau;
    0.5 * t.ln_1p() - 0.5 * z * z * (t / (1.0 + t))
}

/// Bayes factor for `H0: θ = θ0` against a `N(θ0, τ²σ²)` slab:
/// `√(1 + nτ²)·exp(−(z²/2)·nτ²/(1 + nτ²))`.
pub fn conjugate_bf01(z: f64, n: u64, tau: f64) -> Result<f64> {
    Ok(log_conjugate_bf01(z, n, tau)?.exp())
}

pub fn log_conjugate_bf01(z: f64, n: u64, tau: f64) -> Result<f64> {
    check_finite("z", z)?;
    check_sample_size(n)?;
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::invalid(
            "tau",
            format!("{tau} is not a nonnegative finite number"),
        ));
    }
    Ok(log_conjugate_bf01_real(z, n as f64, tau))
}

/// Full point-null report for a scenario under a spike-and-slab prior.
pub fn point_null_report(scenario: &Scenario, prior: &PriorSpec) -> Result<BayesReport> {
    let log_bf01 = match prior.slab {
        Slab::Uniform { width } => {
            log_uniform_bf01(scenario.z, scenario.sigma, scenario.n as f64, width.ln())
        }
        Slab::Conjugate { tau } => log_conjugate_bf01(scenario.z, scenario.n, tau)?,
    };
    let mut report = posterior_from_log_bf(log_bf01, prior.mass_on_null)?;
    report.inputs = Some((*scenario, *prior));
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CalibrationMode {
    /// `ρ0 = 1 − k·(σ0/σ)`, which keeps `(1 − ρ0)/σ0` constant but is only a
    /// probability while `σ0/σ < 1/k`.
    Literal,
    /// Prior odds on `H0` equal to `q/(σ0/σ)`, so the slab's dilution of the
    /// marginal likelihood is cancelled as `σ0 → ∞`.
    OddsCancellation,
}

impl CalibrationMode {
    pub fn label(self) -> &'static str {
        match self {
            CalibrationMode::Literal => "literal",
            CalibrationMode::OddsCancellation => "odds-cancellation",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibrationSpec {
    pub mode: CalibrationMode,
    /// `k` in literal mode, `q` in odds-cancellation mode.
    pub constant: f64,
}

impl CalibrationSpec {
    pub fn literal(k: f64) -> Result<Self> {
        check_positive("k", k)?;
        Ok(Self {
            mode: CalibrationMode::Literal,
            constant: k,
        })
    }

    pub fn odds_cancellation(q: f64) -> Result<Self> {
        check_positive("q", q)?;
        Ok(Self {
            mode: CalibrationMode::OddsCancellation,
            constant: q,
        })
    }

    /// Log prior odds on `H0` for slab scale `σ0/σ`.
    pub fn log_prior_odds(&self, sigma0_over_sigma: f64) -> Result<f64> {
        check_positive("sigma0_over_sigma", sigma0_over_sigma)?;
        check_positive("constant", self.constant)?;
        match self.mode {
            CalibrationMode::Literal => {
                let k = self.constant;
                let spread = k * sigma0_over_sigma;
                if spread >= 1.0 {
                    return Err(Error::Domain(format!(
                        "literal calibration needs sigma0/sigma < 1/k = {}; got {sigma0_over_sigma}",
                        1.0 / k
                    )));
                }
                // ρ0 / (1 − ρ0) with ρ0 = 1 − spread
                Ok((-spread).ln_1p() - spread.ln())
            }
            CalibrationMode::OddsCancellation => Ok(self.constant.ln() - sigma0_over_sigma.ln()),
        }
    }
}

/// Posterior odds on `H0` when the prior null mass is tied to the conjugate
/// slab scale `σ0/σ` as described by `spec`.
pub fn calibrated_posterior_odds(
    z: f64,
    n: u64,
    sigma0_over_sigma: f64,
    spec: &CalibrationSpec,
) -> Result<f64> {
    let log_prior = spec.log_prior_odds(sigma0_over_sigma)?;
    let log_bf = log_conjugate_bf01(z, n, sigma0_over_sigma)?;
    Ok((log_prior + log_bf).exp())
}

/// Limit of the odds-cancellation calibration as `σ0/σ → ∞`: `q·√n·e^{−z²/2}`.
pub fn calibrated_odds_limit(z: f64, n: u64, q: f64) -> f64 {
    q * (n as f64).sqrt() * (-0.5 * z * z).exp()
}
