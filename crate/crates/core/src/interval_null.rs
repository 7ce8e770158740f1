//! Interval nulls `H0: |θ − θ0| ≤ δ` against `H1: |θ − θ0| > δ`.
//!
//! Both hypotheses are composite, so the Bayes factor is a ratio of two
//! likelihood-weighted prior integrals. The integrals are computed in the
//! standardized coordinate `t = (θ − x̄)/se` and rescaled by the likelihood
//! peak on each region, which keeps them representable even when the
//! Bayes factor itself is far beyond `f64` range.

use crate::error::{check_positive, check_probability, Error, Result};
use crate::numerics::quadrature::{integrate, integrate_with_breaks, QuadratureSettings};
use crate::numerics::special::{log_add_exp, norm_cdf, norm_ln_pdf, norm_quantile, LN_SQRT_2PI};
use crate::point_null::{critical_z, point_null_report, BayesReport, PriorSpec, Scenario, Slab};

/// Integrand values below `e^{-CLIP}` of the regional peak are dropped.
const CLIP: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InsidePrior {
    /// Uniform on `[θ0 − δ, θ0 + δ]`.
    Uniform,
    /// `N(θ0, scale²)` truncated to the interval.
    TruncatedNormal { scale: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OutsidePrior {
    /// Uniform on `δ < |θ − θ0| ≤ outer_bound`.
    UniformBand,
    /// `N(θ0, scale²)` restricted to `δ < |θ − θ0| ≤ outer_bound`.
    TruncatedNormal { scale: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalNullSpec {
    pub delta: f64,
    pub inside: InsidePrior,
    pub outside: OutsidePrior,
    /// H1 is truncated to `|θ − θ0| ≤ outer_bound`.
    pub outer_bound: f64,
}

impl IntervalNullSpec {
    /// Uniform priors on both regions.
    pub fn new(delta: f64, outer_bound: f64) -> Result<Self> {
        let spec = Self {
            delta,
            inside: InsidePrior::Uniform,
            outside: OutsidePrior::UniformBand,
            outer_bound,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Uniform priors with the outer bound at `10·max(δ, σ)`.
    pub fn with_default_bound(delta: f64, sigma: f64) -> Result<Self> {
        check_positive("delta", delta)?;
        check_positive("sigma", sigma)?;
        Self::new(delta, default_outer_bound(delta, sigma))
    }

    pub fn with_priors(mut self, inside: InsidePrior, outside: OutsidePrior) -> Result<Self> {
        self.inside = inside;
        self.outside = outside;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        check_positive("delta", self.delta)?;
        check_positive("outer_bound", self.outer_bound)?;
        if self.delta >= self.outer_bound {
            return Err(Error::invalid(
                "outer_bound",
                format!(
                    "outer bound {} must exceed delta {}",
                    self.outer_bound, self.delta
                ),
            ));
        }
        if let InsidePrior::TruncatedNormal { scale } = self.inside {
            check_positive("inside scale", scale)?;
        }
        if let OutsidePrior::TruncatedNormal { scale } = self.outside {
            check_positive("outside scale", scale)?;
        }
        if !self.ln_inside_norm().is_finite() || !self.ln_outside_norm().is_finite() {
            return Err(Error::Domain(
                "a truncated-normal prior has no representable mass on its region".into(),
            ));
        }
        Ok(())
    }

    fn ln_inside_norm(&self) -> f64 {
        match self.inside {
            InsidePrior::Uniform => (2.0 * self.delta).ln(),
            InsidePrior::TruncatedNormal { scale } => {
                libm::erf(self.delta / (scale * std::f64::consts::SQRT_2)).ln()
            }
        }
    }

    fn ln_outside_norm(&self) -> f64 {
        match self.outside {
            OutsidePrior::UniformBand => (2.0 * (self.outer_bound - self.delta)).ln(),
            OutsidePrior::TruncatedNormal { scale } => {
                let k = scale * std::f64::consts::SQRT_2;
                (libm::erfc(self.delta / k) - libm::erfc(self.outer_bound / k)).ln()
            }
        }
    }

    /// ln π0 at offset `u = θ − θ0` (formula extended continuously past the
    /// interval edge).
    pub fn ln_inside_density(&self, u: f64) -> f64 {
        match self.inside {
            InsidePrior::Uniform => -self.ln_inside_norm(),
            InsidePrior::TruncatedNormal { scale } => {
                norm_ln_pdf(u / scale) - scale.ln() - self.ln_inside_norm()
            }
        }
    }

    /// ln π1 at offset `u = θ − θ0`.
    pub fn ln_outside_density(&self, u: f64) -> f64 {
        match self.outside {
            OutsidePrior::UniformBand => -self.ln_outside_norm(),
            OutsidePrior::TruncatedNormal { scale } => {
                norm_ln_pdf(u / scale) - scale.ln() - self.ln_outside_norm()
            }
        }
    }

    /// Total prior mass of each region under the module's own quadrature;
    /// both should be 1.
    pub fn prior_normalization(&self, settings: &QuadratureSettings) -> Result<(f64, f64)> {
        self.validate()?;
        let d = self.delta;
        let b = self.outer_bound;
        let inside = integrate(|u| self.ln_inside_density(u).exp(), -d, d, settings)?;
        let pi1 = |u: f64| self.ln_outside_density(u).exp();
        let outside = integrate(pi1, -b, -d, settings)? + integrate(pi1, d, b, settings)?;
        Ok((inside, outside))
    }
}

pub fn default_outer_bound(delta: f64, sigma: f64) -> f64 {
    10.0 * delta.max(sigma)
}

/// Interval-null Bayes factor with the pieces that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalBayesFactor {
    pub log_bf01: f64,
    /// ln ∫_{|θ−θ0|≤δ} L(θ) π0(θ) dθ
    pub log_numerator: f64,
    /// ln ∫_{δ<|θ−θ0|≤outer} L(θ) π1(θ) dθ
    pub log_denominator: f64,
    /// Likelihood mass (normalized in θ) beyond `θ0 ± outer_bound`, which the
    /// truncated H1 integral ignores.
    pub truncated_likelihood_mass: f64,
}

impl IntervalBayesFactor {
    /// The Bayes factor as a plain number, or `None` when the denominator is
    /// below 1e-300 or the ratio is not representable; use
    /// [`log_bf01`](Self::log_bf01) then.
    pub fn bf01(&self) -> Option<f64> {
        if self.log_denominator < 1e-300f64.ln() {
            return None;
        }
        let v = self.log_bf01.exp();
        (v.is_finite() && v > 0.0).then_some(v)
    }
}

/// ln ∫_{lo}^{hi} N(x̄ | θ0 + u, se²) π(u) du with `offset = x̄ − θ0`.
fn log_region_integral<P>(
    offset: f64,
    se: f64,
    lo: f64,
    hi: f64,
    ln_prior: P,
    settings: &QuadratureSettings,
) -> Result<f64>
where
    P: Fn(f64) -> f64,
{
    let t_lo = (lo - offset) / se;
    let t_hi = (hi - offset) / se;
    let t_near = 0.0f64.clamp(t_lo, t_hi);
    let reach = (t_near * t_near + 2.0 * CLIP).sqrt();
    let a = t_lo.max(-reach);
    let b = t_hi.min(reach);
    let lp_ref = ln_prior(offset + se * t_near);
    let g = |t: f64| (-0.5 * (t * t - t_near * t_near) + ln_prior(offset + se * t) - lp_ref).exp();
    let value = if b > a {
        integrate_with_breaks(g, a, b, &[0.0, -3.0, 3.0, -8.0, 8.0], settings)?
    } else {
        0.0
    };
    Ok(value.ln() - 0.5 * t_near * t_near + lp_ref - LN_SQRT_2PI)
}

/// Bayes factor `∫_{H0} L π0 / ∫_{H1} L π1` for the interval null.
pub fn interval_bf01(
    scenario: &Scenario,
    spec: &IntervalNullSpec,
    settings: &QuadratureSettings,
) -> Result<IntervalBayesFactor> {
    spec.validate()?;
    settings.validate()?;
    let se = scenario.standard_error();
    let offset = scenario.mean() - scenario.theta0;
    let (d, b) = (spec.delta, spec.outer_bound);

    let (num, den) = rayon::join(
        || log_region_integral(offset, se, -d, d, |u| spec.ln_inside_density(u), settings),
        || -> Result<f64> {
            let pi1 = |u| spec.ln_outside_density(u);
            let lower = log_region_integral(offset, se, -b, -d, pi1, settings)?;
            let upper = log_region_integral(offset, se, d, b, pi1, settings)?;
            Ok(log_add_exp(lower, upper))
        },
    );
    let (log_numerator, log_denominator) = (num?, den?);
    Ok(IntervalBayesFactor {
        log_bf01: log_numerator - log_denominator,
        log_numerator,
        log_denominator,
        truncated_likelihood_mass: norm_cdf((-b - offset) / se) + norm_cdf((offset - b) / se),
    })
}

/// Terms of the large-`n` expansion of ln B01 for an interval null when the
/// sample mean lies inside the interval.
///
/// With `a = δ − |x̄ − θ0|` and `b = δ + |x̄ − θ0|`, the numerator is the full
/// Gaussian mass `π0(x̄)` and each side of the denominator is an endpoint
/// integral `π1·(se/a)·φ(a/se)`. Expanding `a²/(2se²)` and `ln(a/se)` gives
///
/// ```text
/// ln B01 ≈ nδ²/(2σ²) − |z|δ√n/σ + ½ ln n + constant + prior
/// constant = z²/2 + ½ ln 2π + ln(δ/σ − |z|/√n) − ln(1 + (a/b)·e^{−(b² − a²)/(2se²)})
/// prior    = ln π0(x̄) − ln π1(θ0 ± δ)
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceExpansion {
    pub log_bf01: f64,
    /// `nδ²/(2σ²)`
    pub leading: f64,
    /// `−|z|δ√n/σ`
    pub sqrt_n_term: f64,
    /// `½ ln n`
    pub log_n_term: f64,
    pub constant_term: f64,
    /// `ln π0(x̄) − ln π1(boundary)`; zero when no prior is supplied.
    pub prior_log_ratio: f64,
}

/// Laplace expansion with a unit prior density ratio (`π0(x̄) = π1(θ0 ± δ)`).
pub fn laplace_log_bf01(scenario: &Scenario, delta: f64) -> Result<LaplaceExpansion> {
    laplace_expansion(scenario, delta, 0.0)
}

/// Laplace expansion including the prior density ratio implied by `spec`.
pub fn laplace_log_bf01_with_prior(
    scenario: &Scenario,
    spec: &IntervalNullSpec,
) -> Result<LaplaceExpansion> {
    spec.validate()?;
    let offset = scenario.mean() - scenario.theta0;
    let edge = spec.delta.copysign(offset);
    let ratio = spec.ln_inside_density(offset) - spec.ln_outside_density(edge);
    laplace_expansion(scenario, spec.delta, ratio)
}

fn laplace_expansion(
    scenario: &Scenario,
    delta: f64,
    prior_log_ratio: f64,
) -> Result<LaplaceExpansion> {
    check_positive("delta", delta)?;
    let offset = (scenario.mean() - scenario.theta0).abs();
    if offset >= delta {
        return Err(Error::Domain(format!(
            "the sample mean lies {offset} from theta0, outside the interval half-width {delta}; \
             the expansion needs the maximum-likelihood estimate inside H0"
        )));
    }
    let n = scenario.n as f64;
    let sigma = scenario.sigma;
    let se = scenario.standard_error();
    let z = scenario.z.abs();
    let ta = (delta - offset) / se;
    let tb = (delta + offset) / se;

    let leading = n * delta * delta / (2.0 * sigma * sigma);
    let sqrt_n_term = -z * delta * n.sqrt() / sigma;
    let log_n_term = 0.5 * n.ln();
    let far_side = (ta / tb) * (-0.5 * (tb * tb - ta * ta)).exp();
    let constant_term =
        0.5 * z * z + 0.5 * (2.0 * std::f64::consts::PI).ln() + (delta / sigma - z / n.sqrt()).ln()
            - far_side.ln_1p();
    Ok(LaplaceExpansion {
        log_bf01: leading + sqrt_n_term + log_n_term + constant_term + prior_log_ratio,
        leading,
        sqrt_n_term,
        log_n_term,
        constant_term,
        prior_log_ratio,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceVerdict {
    /// `(x̄ − (θ0 − δ))·√n/σ`
    pub lower_t: f64,
    /// `((θ0 + δ) − x̄)·√n/σ`
    pub upper_t: f64,
    /// `Φ⁻¹(1 − α)`
    pub critical: f64,
    pub concluded_equivalence: bool,
    pub alpha: f64,
}

/// Schuirmann's two one-sided tests with known σ.
pub fn tost_equivalence(scenario: &Scenario, delta: f64, alpha: f64) -> Result<EquivalenceVerdict> {
    check_positive("delta", delta)?;
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(Error::invalid(
            "alpha",
            format!("{alpha} is not in (0, 0.5)"),
        ));
    }
    let margin = delta / scenario.standard_error();
    let lower_t = scenario.z + margin;
    let upper_t = margin - scenario.z;
    let critical = -norm_quantile(alpha);
    Ok(EquivalenceVerdict {
        lower_t,
        upper_t,
        critical,
        concluded_equivalence: lower_t > critical && upper_t > critical,
        alpha,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Reject,
    Retain,
}

impl Decision {
    pub fn label(self) -> &'static str {
        match self {
            Decision::Reject => "reject",
            Decision::Retain => "retain",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Point null rejected while its posterior exceeds `1 − α`, and a unit
    /// information slab would show the same conflict.
    JlConflict,
    /// The same conflict, but it disappears under a unit-information slab: the
    /// slab's diffuseness is doing the work.
    BartlettInflated,
    AgreementSupportH0,
    AgreementRejectH0,
    Indeterminate,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::JlConflict => "jl-conflict",
            Verdict::BartlettInflated => "bartlett-inflated",
            Verdict::AgreementSupportH0 => "agreement-support-h0",
            Verdict::AgreementRejectH0 => "agreement-reject-h0",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

/// Joint frequentist/Bayesian reading of one dataset under a point null and
/// an interval null.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParadoxClassification {
    pub alpha: f64,
    pub p_value: f64,
    pub point_null_frequentist: Decision,
    pub point_null: BayesReport,
    /// Point-null posterior under the unit-information slab of the same
    /// family, used to tell a sample-size conflict from a diffuse-prior one.
    pub unit_information_posterior: f64,
    pub interval: IntervalBayesFactor,
    pub tost: EquivalenceVerdict,
    /// Verdict on the point-null pair (z test vs spike-and-slab posterior).
    pub label: Verdict,
    /// Verdict on the interval pair (TOST vs interval Bayes factor).
    pub interval_label: Verdict,
}

impl ParadoxClassification {
    pub fn point_null_bayes_posterior(&self) -> f64 {
        self.point_null.posterior_h0
    }
}

/// Label for the point-null pair. Conflict labels need strict inequalities.
pub fn classify_point_null(
    decision: Decision,
    posterior: f64,
    unit_information_posterior: f64,
    slab_is_diffuse: bool,
    alpha: f64,
) -> Verdict {
    match decision {
        Decision::Reject if posterior > 1.0 - alpha => {
            if slab_is_diffuse && !(unit_information_posterior > 1.0 - alpha) {
                Verdict::BartlettInflated
            } else {
                Verdict::JlConflict
            }
        }
        Decision::Reject if posterior < 0.5 => Verdict::AgreementRejectH0,
        _ => Verdict::Indeterminate,
    }
}

/// Label for the interval pair.
pub fn classify_interval(tost: &EquivalenceVerdict, log_bf01: f64) -> Verdict {
    if tost.concluded_equivalence && log_bf01 > 0.0 {
        Verdict::AgreementSupportH0
    } else if !tost.concluded_equivalence && log_bf01 < 0.0 {
        Verdict::AgreementRejectH0
    } else {
        Verdict::Indeterminate
    }
}

/// Runs the point-null z test, the spike-and-slab posterior, the interval
/// Bayes factor and TOST on one scenario and labels both pairs.
pub fn agreement_report(
    scenario: &Scenario,
    prior: &PriorSpec,
    spec: &IntervalNullSpec,
    alpha: f64,
    settings: &QuadratureSettings,
) -> Result<ParadoxClassification> {
    check_probability("alpha", alpha).map_err(|e| e.in_stage("agreement report"))?;
    let p_value = scenario.p_value();
    // The boundary counts as significant so just-significant data reject.
    let decision = if scenario.z.abs() >= critical_z(alpha) {
        Decision::Reject
    } else {
        Decision::Retain
    };
    let point_null =
        point_null_report(scenario, prior).map_err(|e| e.in_stage("point-null posterior"))?;

    let (unit_slab, slab_is_diffuse) = match prior.slab {
        Slab::Conjugate { tau } => (Slab::Conjugate { tau: 1.0 }, tau > 1.0),
        Slab::Uniform { width } => {
            // a uniform slab with variance σ² has width σ√12
            let unit = scenario.sigma * 12f64.sqrt();
            (Slab::Uniform { width: unit }, width > unit)
        }
    };
    let unit_prior = PriorSpec::new(prior.mass_on_null, unit_slab)
        .map_err(|e| e.in_stage("point-null posterior"))?;
    let unit_information_posterior = point_null_report(scenario, &unit_prior)
        .map_err(|e| e.in_stage("point-null posterior"))?
        .posterior_h0;

    let interval =
        interval_bf01(scenario, spec, settings).map_err(|e| e.in_stage("interval Bayes factor"))?;
    let tost = tost_equivalence(scenario, spec.delta, alpha)
        .map_err(|e| e.in_stage("equivalence test"))?;

    Ok(ParadoxClassification {
        alpha,
        p_value,
        point_null_frequentist: decision,
        point_null,
        unit_information_posterior,
        interval,
        tost,
        label: classify_point_null(
            decision,
            point_null.posterior_h0,
            unit_information_posterior,
            slab_is_diffuse,
            alpha,
        ),
        interval_label: classify_interval(&tost, interval.log_bf01),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settings() -> QuadratureSettings {
        QuadratureSettings::default()
    }

    /// Midpoint sums with 10^6 nodes per region.
    fn riemann_bf01(mean: f64, n: u64, delta: f64, bound: f64) -> f64 {
        let se = 1.0 / (n as f64).sqrt();
        let lik = |t: f64| (-0.5 * ((mean - t) / se).powi(2)).exp();
        let sum = |lo: f64, hi: f64| {
            let k = 1_000_000;
            let h = (hi - lo) / k as f64;
            (0..k).map(|i| lik(lo + (i as f64 + 0.5) * h)).sum::<f64>() * h
        };
        let num = sum(-delta, delta) / (2.0 * delta);
        let den = (sum(-bound, -delta) + sum(delta, bound)) / (2.0 * (bound - delta));
        num / den
    }

    #[test]
    fn bf01_matches_riemann_oracle() {
        let s = Scenario::new(0.0, 1.0, 100, 1.96).unwrap();
        let spec = IntervalNullSpec::new(0.3, 3.0).unwrap();
        let bf = interval_bf01(&s, &spec, &settings())
            .unwrap()
            .bf01()
            .unwrap();
        let oracle = riemann_bf01(0.196, 100, 0.3, 3.0);
        assert!((bf / oracle - 1.0).abs() < 1e-6, "{bf} vs {oracle}");
        assert!((bf - 51.3).abs() < 0.05);
        // 40-digit mpmath quadrature
        assert!((bf / 51.333_724_818_236_84 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn far_mean_favours_h1() {
        let s = Scenario::from_mean(0.0, 1.0, 100, 1.0).unwrap();
        let spec = IntervalNullSpec::new(0.3, 3.0).unwrap();
        let bf = interval_bf01(&s, &spec, &settings()).unwrap();
        assert!(bf.log_bf01 < 0.0);
        let oracle = riemann_bf01(1.0, 100, 0.3, 3.0);
        assert!((bf.bf01().unwrap() / oracle - 1.0).abs() < 1e-6);
    }

    #[test]
    fn shrinking_h1_band_blows_up_bf() {
        let s = Scenario::new(0.0, 1.0, 100, 0.0).unwrap();
        let mut last = f64::NEG_INFINITY;
        for delta in [1.0, 2.0, 2.5, 2.9, 2.99] {
            let spec = IntervalNullSpec::new(delta, 3.0).unwrap();
            let bf = interval_bf01(&s, &spec, &settings()).unwrap();
            assert!(bf.log_bf01 > last);
            last = bf.log_bf01;
        }
        assert!(last > 100.0);
    }

    #[test]
    fn huge_n_stays_in_log_space() {
        let s = Scenario::just_significant(0.0, 1.0, 1_000_000, 0.05).unwrap();
        let spec = IntervalNullSpec::with_default_bound(0.3, 1.0).unwrap();
        let bf = interval_bf01(&s, &spec, &settings()).unwrap();
        assert!(bf.bf01().is_none());
        assert!(bf.log_bf01 > 40_000.0);
        assert!(bf.truncated_likelihood_mass == 0.0);
    }

    #[test]
    fn priors_normalize() {
        let base = IntervalNullSpec::new(0.3, 3.0).unwrap();
        let variants = [
            (InsidePrior::Uniform, OutsidePrior::UniformBand),
            (
                InsidePrior::TruncatedNormal { scale: 0.2 },
                OutsidePrior::UniformBand,
            ),
            (
                InsidePrior::Uniform,
                OutsidePrior::TruncatedNormal { scale: 1.0 },
            ),
            (
                InsidePrior::TruncatedNormal { scale: 5.0 },
                OutsidePrior::TruncatedNormal { scale: 0.1 },
            ),
        ];
        for (i, o) in variants {
            let spec = base.with_priors(i, o).unwrap();
            let (a, b) = spec.prior_normalization(&settings()).unwrap();
            assert!(
                (a - 1.0).abs() < 1e-8 && (b - 1.0).abs() < 1e-8,
                "{i:?} {o:?}: {a} {b}"
            );
        }
    }

    #[test]
    fn spec_validation() {
        assert!(IntervalNullSpec::new(0.0, 3.0).is_err());
        assert!(IntervalNullSpec::new(3.0, 3.0).is_err());
        assert!(IntervalNullSpec::new(0.3, 3.0)
            .unwrap()
            .with_priors(
                InsidePrior::TruncatedNormal { scale: -1.0 },
                OutsidePrior::UniformBand
            )
            .is_err());
        assert_eq!(
            IntervalNullSpec::with_default_bound(0.3, 1.0)
                .unwrap()
                .outer_bound,
            10.0
        );
        assert_eq!(
            IntervalNullSpec::with_default_bound(2.0, 1.0)
                .unwrap()
                .outer_bound,
            20.0
        );
    }

    #[test]
    fn laplace_tracks_quadrature_differences() {
        let spec = IntervalNullSpec::with_default_bound(0.3, 1.0).unwrap();
        let quad = |n| {
            let s = Scenario::just_significant(0.0, 1.0, n, 0.05).unwrap();
            interval_bf01(&s, &spec, &settings()).unwrap().log_bf01
        };
        let lap = |n| {
            let s = Scenario::just_significant(0.0, 1.0, n, 0.05).unwrap();
            laplace_log_bf01(&s, 0.3).unwrap().log_bf01
        };
        let dq = quad(4000) - quad(1000);
        let dl = lap(4000) - lap(1000);
        assert!((dl / dq - 1.0).abs() < 0.10, "{dl} vs {dq}");
        // with the prior ratio included the levels agree too
        let s = Scenario::just_significant(0.0, 1.0, 4000, 0.05).unwrap();
        let full = laplace_log_bf01_with_prior(&s, &spec).unwrap().log_bf01;
        assert!((full - quad(4000)).abs() < 0.05 * quad(4000));
    }

    #[test]
    fn laplace_at_large_n_is_dominated_by_leading_term() {
        let s = Scenario::just_significant(0.0, 1.0, 1_000_000, 0.05).unwrap();
        let lap = laplace_log_bf01(&s, 0.3).unwrap();
        assert!((lap.leading - 45_000.0).abs() < 1e-9);
        assert!(lap.leading / lap.log_bf01 < 1.05 && lap.leading / lap.log_bf01 > 1.0);
        let spec = IntervalNullSpec::with_default_bound(0.3, 1.0).unwrap();
        let quad = interval_bf01(&s, &spec, &settings()).unwrap().log_bf01;
        let with_prior = laplace_log_bf01_with_prior(&s, &spec).unwrap().log_bf01;
        assert!(
            (with_prior - quad).abs() / quad < 1e-4,
            "{with_prior} vs {quad}"
        );
    }

    #[test]
    fn laplace_domain() {
        let s = Scenario::from_mean(0.0, 1.0, 100, 0.5).unwrap();
        assert!(matches!(laplace_log_bf01(&s, 0.3), Err(Error::Domain(_))));
        let s = Scenario::new(0.0, 1.0, 100, 1.0).unwrap();
        assert!(laplace_log_bf01(&s, 0.0).is_err());
    }

    #[test]
    fn tost_examples() {
        let s = Scenario::from_mean(0.0, 1.0, 1000, 0.06199).unwrap();
        let v = tost_equivalence(&s, 0.3, 0.05).unwrap();
        assert!((v.upper_t - 7.5265).abs() < 1e-3 && (v.lower_t - 11.4471).abs() < 1e-3);
        assert!(v.concluded_equivalence);

        let s = Scenario::from_mean(0.0, 1.0, 100, 0.196).unwrap();
        let v = tost_equivalence(&s, 0.3, 0.05).unwrap();
        assert!((v.upper_t - 1.04).abs() < 1e-9);
        assert!(!v.concluded_equivalence);

        // centred data with δ√n/σ at or below the critical value
        let crit = -norm_quantile(0.05);
        let s = Scenario::new(0.0, 1.0, 25, 0.0).unwrap();
        let v = tost_equivalence(&s, crit / 5.0, 0.05).unwrap();
        assert!(!v.concluded_equivalence);
        assert!(tost_equivalence(&s, 0.3, 0.5).is_err());
    }

    #[test]
    fn agreement_examples() {
        let prior = PriorSpec::conjugate(0.5, 1.0).unwrap();

        let s = Scenario::new(0.0, 1.0, 1_000_000, 1.96).unwrap();
        let spec = IntervalNullSpec::with_default_bound(0.3, 1.0).unwrap();
        let r = agreement_report(&s, &prior, &spec, 0.05, &settings()).unwrap();
        assert_eq!(r.point_null_frequentist, Decision::Reject);
        assert!((r.point_null_bayes_posterior() - 0.9932).abs() < 5e-5);
        assert_eq!(r.label, Verdict::JlConflict);
        assert_eq!(r.interval_label, Verdict::AgreementSupportH0);

        let s = Scenario::from_mean(0.0, 1.0, 100, 1.0).unwrap();
        let r = agreement_report(&s, &prior, &spec, 0.05, &settings()).unwrap();
        assert_eq!(r.label, Verdict::AgreementRejectH0);
        assert_eq!(r.interval_label, Verdict::AgreementRejectH0);
        assert!(!r.tost.concluded_equivalence);
    }

    #[test]
    fn diffuse_slab_conflict_is_bartlett() {
        // n = 100 is far too small for a unit-information conflict
        let s = Scenario::new(0.0, 1.0, 100, 2.5).unwrap();
        let prior = PriorSpec::conjugate(0.5, 1e4).unwrap();
        let spec = IntervalNullSpec::with_default_bound(0.3, 1.0).unwrap();
        let r = agreement_report(&s, &prior, &spec, 0.05, &settings()).unwrap();
        assert_eq!(r.label, Verdict::BartlettInflated);
    }

    #[test]
    fn boundary_posterior_is_indeterminate() {
        let v = classify_point_null(Decision::Reject, 0.95, 0.95, false, 0.05);
        assert_eq!(v, Verdict::Indeterminate);
        assert_eq!(
            classify_point_null(Decision::Retain, 0.8, 0.8, false, 0.05),
            Verdict::Indeterminate
        );
    }

    #[test]
    fn stage_is_recorded_on_errors() {
        let s = Scenario::new(0.0, 1.0, 100, 1.0).unwrap();
        let prior = PriorSpec::conjugate(0.5, 1.0).unwrap();
        let spec = IntervalNullSpec::new(0.3, 3.0).unwrap();
        let tiny = QuadratureSettings::new(1e-300, 1e-16, 1).unwrap();
        let err = agreement_report(&s, &prior, &spec, 0.05, &tiny).unwrap_err();
        assert!(matches!(
            err,
            Error::Stage {
                stage: "interval Bayes factor",
                ..
            }
        ));
        assert!(err.is_numerical());
    }
}
