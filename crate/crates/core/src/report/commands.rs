//! One function per CLI command, each producing a [`Report`].

use serde_json::json;

use super::config::{Panel, RunConfig};
use super::render::{Cell, Report};
use crate::error::Error;
use crate::interval_null::{agreement_report, default_outer_bound, IntervalNullSpec};
use crate::numerics::quadrature::QuadratureSettings;
use crate::paradox::{
    bartlett_curve, conflict_zone, lindley_curve, log_grid, log_grid_integers,
    min_n_strong_contrast, simulate_conflict_rate, Setup, SimulationSpec, StrongContrastQuery,
    Truth,
};
use crate::point_null::{critical_z, PriorSpec, Scenario, Slab};

/// The significance levels of the published strong-contrast table.
pub const TABLE1_ALPHAS: [f64; 6] = [0.05, 0.04, 0.03, 0.02, 0.01, 0.005];

#[derive(Debug)]
pub enum CommandError {
    Usage(String),
    Compute(Error),
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        CommandError::Compute(e)
    }
}

type CmdResult = Result<Report, CommandError>;

fn usage(msg: impl Into<String>) -> CommandError {
    CommandError::Usage(msg.into())
}

fn require<T: Copy>(value: Option<T>, flag: &str, command: &str) -> Result<T, CommandError> {
    value.ok_or_else(|| usage(format!("{command} requires --{flag}")))
}

fn quoted(z: f64, quote: bool) -> f64 {
    if quote {
        (z * 100.0).round() / 100.0
    } else {
        z
    }
}

/// Strong-contrast sample sizes for each α, both setups.
pub fn cmd_table1(alphas: &[f64], c: f64, tau: f64, sigma: f64) -> CmdResult {
    if alphas.is_empty() {
        return Err(usage("table1 needs at least one --alpha value"));
    }
    for &alpha in alphas {
        StrongContrastQuery::new(alpha, Setup::LindleyUniform)
            .with_c(c)
            .with_sigma(sigma)
            .with_tau(tau)
            .validate()?;
    }
    let mut report = Report::new(
        "table1",
        vec![
            "alpha",
            "posterior_target",
            "lindley_min_n",
            "conjugate_min_n",
            "error",
        ],
    );
    report.inputs = vec![
        (
            "alpha",
            Cell::text(
                alphas
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            ),
        ),
        ("c", Cell::Num(c)),
        ("tau", Cell::Num(tau)),
        ("sigma", Cell::Num(sigma)),
    ];
    for &alpha in alphas {
        let solve = |setup| {
            min_n_strong_contrast(
                &StrongContrastQuery::new(alpha, setup)
                    .with_c(c)
                    .with_tau(tau)
                    .with_sigma(sigma),
            )
        };
        let lindley = solve(Setup::LindleyUniform);
        let conjugate = solve(Setup::NormalConjugate);
        let errors: Vec<String> = [("lindley", &lindley), ("conjugate", &conjugate)]
            .iter()
            .filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{name}: {e}")))
            .collect();
        let cell = |r: &crate::Result<u64>| r.as_ref().map_or(Cell::Empty, |&n| Cell::Int(n));
        report.push_row(vec![
            Cell::Num(alpha),
            Cell::Num(1.0 - alpha),
            cell(&lindley),
            cell(&conjugate),
            if errors.is_empty() {
                Cell::Empty
            } else {
                Cell::text(errors.join("; "))
            },
        ]);
    }
    report.metadata = vec![
        ("z", Cell::text("exact quantile Phi^-1(1 - alpha/2)")),
        (
            "convention",
            Cell::text("smallest integer n with P(H0 | just-significant mean) >= 1 - alpha"),
        ),
    ];
    Ok(report)
}

pub fn cmd_figure1(config: &RunConfig) -> CmdResult {
    let panel = config.panel.unwrap_or(Panel::A);
    let c = config.c.unwrap_or(0.5);
    let grid = config.grid;
    match panel {
        Panel::A => {
            let alpha = config.single_alpha().map_err(usage)?.unwrap_or(0.05);
            let z = match config.z {
                Some(z) => z,
                None => {
                    crate::error::check_probability("alpha", alpha)?;
                    quoted(critical_z(alpha), config.quote_z)
                }
            };
            let tau = config.tau.unwrap_or(1.0);
            let g = grid.map_or((10.0, 1e8, 10), |g| (g.lo, g.hi, g.per_decade));
            let ns = log_grid_integers(g.0, g.1, g.2)?;
            let series = lindley_curve(z, tau, c, &ns)?;
            let mut report = Report::new("figure1", vec!["n", "posterior_h0", "p_value"]);
            for (p, &n) in series.points.iter().zip(&ns) {
                report.push_row(vec![
                    Cell::Int(n),
                    Cell::Num(p.posterior_h0),
                    Cell::Num(p.p_value),
                ]);
            }
            report.inputs = vec![
                ("panel", Cell::text("A")),
                ("z", Cell::Num(z)),
                ("tau", Cell::Num(tau)),
                ("c", Cell::Num(c)),
                ("grid", Cell::text(format!("{}:{}:{}", g.0, g.1, g.2))),
            ];
            report.metadata = vec![("varies", Cell::text("sample size n; prior and z fixed"))];
            Ok(report)
        }
        Panel::B => {
            let z = config.z.unwrap_or(2.5);
            let n = config.n.unwrap_or(100);
            let g = grid.map_or((0.3, 1e4, 10), |g| (g.lo, g.hi, g.per_decade));
            let taus = log_grid(g.0, g.1, g.2)?;
            let series = bartlett_curve(z, n, c, &taus)?;
            let mut report = Report::new("figure1", vec!["tau", "posterior_h0", "p_value"]);
            for p in &series.points {
                report.push_row(vec![
                    Cell::Num(p.abscissa),
                    Cell::Num(p.posterior_h0),
                    Cell::Num(p.p_value),
                ]);
            }
            report.inputs = vec![
                ("panel", Cell::text("B")),
                ("z", Cell::Num(z)),
                ("n", Cell::Int(n)),
                ("c", Cell::Num(c)),
                ("grid", Cell::text(format!("{}:{}:{}", g.0, g.1, g.2))),
            ];
            report.metadata = vec![("varies", Cell::text("prior scale tau; data (z, n) fixed"))];
            Ok(report)
        }
    }
}

const ANALYZE_COLUMNS: [&str; 27] = [
    "theta0",
    "sigma",
    "n",
    "z",
    "mean",
    "alpha",
    "c",
    "slab",
    "slab_scale",
    "delta",
    "outer_bound",
    "p_value",
    "point_decision",
    "point_bf01",
    "point_log_bf01",
    "point_posterior_h0",
    "unit_information_posterior",
    "interval_bf01",
    "interval_log_bf01",
    "truncated_likelihood_mass",
    "tost_lower_t",
    "tost_upper_t",
    "tost_critical",
    "tost_equivalence",
    "label",
    "interval_label",
    "quote_z",
];

pub fn cmd_analyze(config: &RunConfig) -> CmdResult {
    let n = require(config.n, "n", "analyze")?;
    let delta = require(config.delta, "delta", "analyze")?;
    let alpha = config.single_alpha().map_err(usage)?.unwrap_or(0.05);
    let theta0 = config.theta0.unwrap_or(0.0);
    let sigma = config.sigma.unwrap_or(1.0);
    let c = config.c.unwrap_or(0.5);

    let scenario = if config.z.is_none() && config.mean.is_none() {
        crate::error::check_probability("alpha", alpha)?;
        Scenario::new(theta0, sigma, n, quoted(critical_z(alpha), config.quote_z))?
    } else {
        Scenario::resolve(theta0, sigma, n, config.z, config.mean)?
    };
    let prior = match config.interval_width {
        Some(width) => PriorSpec::uniform(c, width)?,
        None => PriorSpec::conjugate(c, config.tau.unwrap_or(1.0))?,
    };
    let outer_bound = config
        .outer_bound
        .unwrap_or_else(|| default_outer_bound(delta, sigma));
    let spec = IntervalNullSpec::new(delta, outer_bound)?;
    let r = agreement_report(
        &scenario,
        &prior,
        &spec,
        alpha,
        &QuadratureSettings::default(),
    )?;

    let (slab, slab_scale) = match prior.slab {
        Slab::Uniform { width } => ("uniform", width),
        Slab::Conjugate { tau } => ("conjugate", tau),
    };
    let point_bf = r.point_null.bf01;
    let interval_bf = r.interval.bf01();

    let mut report = Report::new("analyze", ANALYZE_COLUMNS.to_vec());
    report.push_row(vec![
        Cell::Num(theta0),
        Cell::Num(sigma),
        Cell::Int(n),
        Cell::Num(scenario.z),
        Cell::Num(scenario.mean()),
        Cell::Num(alpha),
        Cell::Num(c),
        Cell::text(slab),
        Cell::Num(slab_scale),
        Cell::Num(delta),
        Cell::Num(outer_bound),
        Cell::Num(r.p_value),
        Cell::text(r.point_null_frequentist.label()),
        if point_bf.is_finite() {
            Cell::Num(point_bf)
        } else {
            Cell::Empty
        },
        Cell::Num(r.point_null.log_bf01),
        Cell::Num(r.point_null.posterior_h0),
        Cell::Num(r.unit_information_posterior),
        interval_bf.map_or(Cell::Empty, Cell::Num),
        Cell::Num(r.interval.log_bf01),
        Cell::Num(r.interval.truncated_likelihood_mass),
        Cell::Num(r.tost.lower_t),
        Cell::Num(r.tost.upper_t),
        Cell::Num(r.tost.critical),
        Cell::Bool(r.tost.concluded_equivalence),
        Cell::text(r.label.label()),
        Cell::text(r.interval_label.label()),
        Cell::Bool(config.quote_z),
    ]);

    let num = |x: f64| Cell::Num(x).to_json();
    let inputs = [
        ("theta0", Cell::Num(theta0)),
        ("sigma", Cell::Num(sigma)),
        ("n", Cell::Int(n)),
        ("z", Cell::Num(scenario.z)),
        ("mean", Cell::Num(scenario.mean())),
        ("alpha", Cell::Num(alpha)),
        ("c", Cell::Num(c)),
        ("slab", Cell::text(slab)),
        ("slab_scale", Cell::Num(slab_scale)),
        ("delta", Cell::Num(delta)),
        ("outer_bound", Cell::Num(outer_bound)),
        ("quote_z", Cell::Bool(config.quote_z)),
    ];
    report.inputs = inputs.to_vec();
    report.nested = Some(json!({
        "point_null": {
            "frequentist": {
                "decision": r.point_null_frequentist.label(),
                "p_value": num(r.p_value),
            },
            "bayes": {
                "bf01": if point_bf.is_finite() { num(point_bf) } else { serde_json::Value::Null },
                "log_bf01": num(r.point_null.log_bf01),
                "posterior_h0": num(r.point_null.posterior_h0),
                "unit_information_posterior": num(r.unit_information_posterior),
            },
            "label": r.label.label(),
        },
        "interval_null": {
            "bayes": {
                "bf01": interval_bf.map_or(serde_json::Value::Null, num),
                "log_bf01": num(r.interval.log_bf01),
                "log_numerator": num(r.interval.log_numerator),
                "log_denominator": num(r.interval.log_denominator),
                "truncated_likelihood_mass": num(r.interval.truncated_likelihood_mass),
            },
            "tost": {
                "lower_t": num(r.tost.lower_t),
                "upper_t": num(r.tost.upper_t),
                "critical": num(r.tost.critical),
                "concluded_equivalence": r.tost.concluded_equivalence,
            },
            "label": r.interval_label.label(),
        },
    }));
    report.metadata = vec![
        (
            "inside_prior",
            Cell::text("uniform on [theta0 - delta, theta0 + delta]"),
        ),
        (
            "outside_prior",
            Cell::text("uniform on delta < |theta - theta0| <= outer_bound"),
        ),
        ("tost", Cell::text("known-sigma z form")),
    ];
    Ok(report)
}

pub fn cmd_zone(config: &RunConfig) -> CmdResult {
    let n = require(config.n, "n", "zone")?;
    let alpha = config.single_alpha().map_err(usage)?.unwrap_or(0.05);
    let tau = config.tau.unwrap_or(1.0);
    let c = config.c.unwrap_or(0.5);
    let threshold = config.threshold.unwrap_or(0.5);
    let zone = conflict_zone(n, alpha, tau, c, threshold)?;
    let mut report = Report::new(
        "zone",
        vec![
            "n",
            "alpha",
            "tau",
            "c",
            "threshold",
            "empty",
            "z_lo",
            "z_hi",
            "null_probability",
        ],
    );
    let bound = |b: Option<f64>| b.map_or(Cell::Empty, Cell::Num);
    report.push_row(vec![
        Cell::Int(n),
        Cell::Num(alpha),
        Cell::Num(tau),
        Cell::Num(c),
        Cell::Num(threshold),
        Cell::Bool(zone.is_empty()),
        bound(zone.z_lo()),
        bound(zone.z_hi()),
        Cell::Num(zone.null_probability()),
    ]);
    report.inputs = vec![
        ("n", Cell::Int(n)),
        ("alpha", Cell::Num(alpha)),
        ("tau", Cell::Num(tau)),
        ("c", Cell::Num(c)),
        ("threshold", Cell::Num(threshold)),
    ];
    report.metadata = vec![(
        "definition",
        Cell::text("|z| with two-sided p < alpha and conjugate P(H0 | z) >= threshold"),
    )];
    Ok(report)
}

pub fn cmd_simulate(config: &RunConfig) -> CmdResult {
    let n = require(config.n, "n", "simulate")?;
    let spec = SimulationSpec {
        n,
        alpha: config.single_alpha().map_err(usage)?.unwrap_or(0.05),
        tau: config.tau.unwrap_or(1.0),
        c: config.c.unwrap_or(0.5),
        truth: config.truth.map_or(Truth::NullTrue, Truth::from),
        reps: config.reps.unwrap_or(100_000),
        seed: config.seed.unwrap_or(0),
    };
    let workers = config.workers.map(|w| w as usize);
    let est = simulate_conflict_rate(&spec, workers)?;
    let mut report = Report::new(
        "simulate",
        vec![
            "n",
            "alpha",
            "tau",
            "c",
            "truth",
            "reps",
            "seed",
            "conflicts",
            "rejections",
            "rate",
            "std_error",
        ],
    );
    report.push_row(vec![
        Cell::Int(n),
        Cell::Num(spec.alpha),
        Cell::Num(spec.tau),
        Cell::Num(spec.c),
        Cell::text(spec.truth.label()),
        Cell::Int(spec.reps),
        Cell::Int(spec.seed),
        Cell::Int(est.conflicts),
        Cell::Int(est.rejections),
        Cell::Num(est.rate),
        Cell::Num(est.std_error),
    ]);
    report.inputs = vec![
        ("n", Cell::Int(n)),
        ("alpha", Cell::Num(spec.alpha)),
        ("tau", Cell::Num(spec.tau)),
        ("c", Cell::Num(spec.c)),
        ("truth", Cell::text(spec.truth.label())),
        ("reps", Cell::Int(spec.reps)),
        ("seed", Cell::Int(spec.seed)),
    ];
    report.metadata = vec![
        ("truth_model", Cell::text(spec.truth.description())),
        (
            "conflict",
            Cell::text("two-sided p < alpha and conjugate P(H0 | z) > 0.5"),
        ),
        (
            "rng",
            Cell::text("ChaCha8 stream b of the seed for replicate batch b (1024 per batch)"),
        ),
    ];
    Ok(report)
}
