//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints exactly one `PASS`/`FAIL` line; exits non-zero if any fail.

use std::time::{Duration, Instant};

use jlparadox::interval_null::{interval_bf01, tost_equivalence, IntervalNullSpec};
use jlparadox::numerics::special::norm_ln_pdf;
use jlparadox::numerics::QuadratureSettings;
use jlparadox::paradox::{
    bartlett_curve, conflict_zone, lindley_curve, lindley_threshold_closed_form, log_grid,
    log_grid_integers, simulate_conflict_rate, SimulationSpec, Truth,
};
use jlparadox::point_null::{
    bartlett_posterior, calibrated_odds_limit, calibrated_posterior_odds, lindley_posterior,
    CalibrationSpec, Scenario,
};
use jlparadox::report::{cmd_table1, run, Cell, TABLE1_ALPHAS};
use jlparadox::Error;

/// Whether the criterion holds, plus the measured values behind the verdict.
type Outcome = (bool, String);
type Criterion = (u32, &'static str, fn() -> Outcome);

fn verdict(ok: bool, detail: &str) -> Outcome {
    (ok, detail.to_string())
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

// Published table, rows in TABLE1_ALPHAS order.
const PUBLISHED_LINDLEY: [u64; 6] = [
    105_685,
    245_701,
    728_954,
    3_380_074,
    46_875_786,
    657_481_111,
];
const PUBLISHED_CONJUGATE: [u64; 6] = [16_816, 39_098, 116_011, 537_945, 2_195_961, 104_625_626];

fn criterion_1_table_reproduction() -> Outcome {
    let start = Instant::now();
    let report = cmd_table1(&TABLE1_ALPHAS, 0.5, 1.0, 1.0).expect("table1 runs");
    let elapsed = start.elapsed();

    let mut misses = Vec::new();
    let mut closed_form_ok = true;
    for (i, row) in report.rows.iter().enumerate() {
        let (Cell::Int(lindley), Cell::Int(conjugate)) = (&row[2], &row[3]) else {
            panic!("row {i} has no sample sizes: {row:?}");
        };
        for (setup, got, want) in [
            ("lindley", *lindley, PUBLISHED_LINDLEY[i]),
            ("conjugate", *conjugate, PUBLISHED_CONJUGATE[i]),
        ] {
            if got.abs_diff(want) > 1 {
                misses.push(format!(
                    "{setup} a={} got {got} want {want}",
                    TABLE1_ALPHAS[i]
                ));
            }
        }
        let exact = lindley_threshold_closed_form(TABLE1_ALPHAS[i], 0.5, 1.0);
        closed_form_ok &= (exact.ceil() - *lindley as f64).abs() <= 1.0;
    }
    let fast = elapsed < Duration::from_secs(2);
    let detail = format!(
        "{} of 12 entries off by more than 1 [{}]; closed-form cross-check {}; {:.3}s",
        misses.len(),
        misses.join(", "),
        if closed_form_ok { "ok" } else { "failed" },
        elapsed.as_secs_f64()
    );
    verdict(misses.is_empty() && closed_form_ok && fast, &detail)
}

fn criterion_2_figure_endpoints() -> Outcome {
    let b = bartlett_curve(2.5, 100, 0.5, &[1.0, 1e4]).unwrap();
    let (b1, b4) = (&b.points[0], &b.points[1]);
    let ns = log_grid_integers(10.0, 1e8, 10).unwrap();
    let z = jlparadox::point_null::critical_z(0.05);
    let a = lindley_curve(z, 1.0, 0.5, &ns).unwrap();
    let at_1e6 = a
        .points
        .iter()
        .find(|p| p.abscissa == 1e6)
        .expect("grid contains 10^6");
    let p_const = a.points.iter().all(|p| (p.p_value - 0.05).abs() <= 1e-6);

    let ok = (b1.posterior_h0 - 0.3129).abs() <= 5e-4
        && (b1.p_value - 0.01242).abs() <= 2e-4
        && b4.posterior_h0 > 0.99
        && (at_1e6.posterior_h0 - 0.9932).abs() <= 5e-4
        && p_const;
    let detail = format!(
        "B(tau=1) post {:.5} p {:.5}; B(tau=1e4) post {:.5}; A(n=1e6) post {:.5}; p constant {p_const}",
        b1.posterior_h0, b1.p_value, b4.posterior_h0, at_1e6.posterior_h0
    );
    verdict(ok, &detail)
}

fn criterion_3_jeffreys_lindley_limit() -> Outcome {
    let top = lindley_posterior(0.5, 1.959_964_0, 1.0, 100_000_000).unwrap();
    let series: Vec<f64> = (2..=8)
        .map(|k| lindley_posterior(0.5, 1.959_964_0, 1.0, 10u64.pow(k)).unwrap())
        .collect();
    let increasing = series.windows(2).all(|w| w[1] > w[0]);
    verdict(
        top > 0.999 && increasing,
        &format!("P(H0) at n=1e8 {top:.6}; increasing over 1e2..1e8 {increasing}"),
    )
}

fn criterion_4_bartlett_limit() -> Outcome {
    let widths = log_grid(1.0, 1e8, 4).unwrap();
    let series: Vec<f64> = widths
        .iter()
        .map(|&w| bartlett_posterior(0.5, 2.5, 1.0, 100, w).unwrap())
        .collect();
    let increasing = series.windows(2).all(|w| w[1] > w[0]);
    let top = bartlett_posterior(0.5, 2.5, 1.0, 100, 1e8).unwrap();
    let same = bartlett_posterior(0.5, 2.5, 1.0, 100, 1.0)
        .unwrap()
        .to_bits()
        == lindley_posterior(0.5, 2.5, 1.0, 100).unwrap().to_bits();
    verdict(
        top > 0.999_999 && increasing && same,
        &format!("P(H0) at I=1e8 {top:.9}; increasing {increasing}; I=1 bit-identical {same}"),
    )
}

// Fixed before the quadrature code existed: midpoint sums with 10^6 nodes
// over [-0.3, 0.3] and [-3, 3], uniform priors on both regions.
const RIEMANN_BF01: f64 = 51.333_724_818_236_84;

fn riemann_bf01(z: f64, n: u64, delta: f64, bound: f64) -> f64 {
    let se = 1.0 / (n as f64).sqrt();
    let xbar = z * se;
    let lik = |t: f64| norm_ln_pdf((xbar - t) / se).exp() / se;
    let nodes = 1_000_000;
    let mid = |lo: f64, hi: f64| {
        let h = (hi - lo) / nodes as f64;
        (0..nodes)
            .map(|i| lik(lo + (i as f64 + 0.5) * h))
            .sum::<f64>()
            * h
    };
    let inside = mid(-delta, delta) / (2.0 * delta);
    let outside = (mid(-bound, bound) - mid(-delta, delta)) / (2.0 * (bound - delta));
    inside / outside
}

fn criterion_5_interval_oracle() -> Outcome {
    let oracle = riemann_bf01(1.96, 100, 0.3, 3.0);
    assert!(
        rel(oracle, RIEMANN_BF01) < 1e-9,
        "fixture drifted: {oracle}"
    );
    let scenario = Scenario::new(0.0, 1.0, 100, 1.96).unwrap();
    let spec = IntervalNullSpec::new(0.3, 3.0).unwrap();
    let bf = interval_bf01(&scenario, &spec, &QuadratureSettings::default())
        .unwrap()
        .bf01()
        .unwrap();
    let err = rel(bf, RIEMANN_BF01);
    verdict(
        err <= 1e-6,
        &format!("quadrature {bf:.10} vs oracle {RIEMANN_BF01:.10}, rel err {err:.2e}"),
    )
}

fn criterion_6_dissolution() -> Outcome {
    let ns = [1000u64, 2000, 4000, 10000];
    let settings = QuadratureSettings::default();
    let mut logs = Vec::new();
    let mut all_equivalent = true;
    for &n in &ns {
        let scenario = Scenario::new(0.0, 1.0, n, 1.96).unwrap();
        let spec = IntervalNullSpec::with_default_bound(0.3, 1.0).unwrap();
        logs.push(interval_bf01(&scenario, &spec, &settings).unwrap().log_bf01);
        all_equivalent &= tost_equivalence(&scenario, 0.3, 0.05)
            .unwrap()
            .concluded_equivalence;
    }
    // least squares slope of log B01 against n
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = logs.iter().sum::<f64>() / logs.len() as f64;
    let slope = xs
        .iter()
        .zip(&logs)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum::<f64>()
        / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    let target = 0.3f64.powi(2) / 2.0;
    let increasing = logs.windows(2).all(|w| w[1] > w[0]);
    let ok = all_equivalent && increasing && rel(slope, target) <= 0.15;
    verdict(ok,
        &format!(
            "TOST equivalence at all n {all_equivalent}; log B01 {logs:.3?}; slope {slope:.5} vs {target} ({:.1}% off)",
            100.0 * rel(slope, target)
        ),
    )
}

fn criterion_7_rarity_refuted() -> Outcome {
    let zone = conflict_zone(1_000_000, 0.05, 1.0, 0.5, 0.5).unwrap();
    let expected = zone.null_probability();
    let spec = SimulationSpec {
        n: 1_000_000,
        alpha: 0.05,
        tau: 1.0,
        c: 0.5,
        truth: Truth::NullTrue,
        reps: 100_000,
        seed: 20_190_101,
    };
    let start = Instant::now();
    let est = simulate_conflict_rate(&spec, None).unwrap();
    let elapsed = start.elapsed();
    let se = (expected * (1.0 - expected) / spec.reps as f64).sqrt();
    let dev = (est.rate - expected).abs() / se;
    let ok = dev <= 3.0 && elapsed < Duration::from_secs(10);
    verdict(
        ok,
        &format!(
            "simulated {:.5} vs zone probability {expected:.5} ({dev:.2} SE); {:.2}s",
            est.rate,
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_8_calibration() -> Outcome {
    let spec = CalibrationSpec::odds_cancellation(1.0).unwrap();
    let o4 = calibrated_posterior_odds(2.5, 100, 1e4, &spec).unwrap();
    let o6 = calibrated_posterior_odds(2.5, 100, 1e6, &spec).unwrap();
    let limit = calibrated_odds_limit(2.5, 100, 1.0);
    let literal = CalibrationSpec::literal(0.1).unwrap();
    let at_bound = calibrated_posterior_odds(2.5, 100, 10.0, &literal);
    let beyond = calibrated_posterior_odds(2.5, 100, 50.0, &literal);
    let domain =
        |r: &jlparadox::Result<f64>| matches!(r, Err(Error::Domain(m)) if m.contains("1/k = 10"));
    let ok = rel(o4, o6) < 0.01
        && rel(o6, limit) < 0.01
        && rel(o4, limit) < 0.01
        && domain(&at_bound)
        && domain(&beyond);
    verdict(
        ok,
        &format!(
            "odds {o4:.6} (1e4) {o6:.6} (1e6) limit {limit:.6}; literal domain errors {}",
            domain(&at_bound) && domain(&beyond)
        ),
    )
}

fn run_capture(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("jlparadox").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, out)
}

fn criterion_9_determinism() -> Outcome {
    let commands: [&[&str]; 7] = [
        &["table1"],
        &["figure1", "--panel", "A"],
        &["figure1", "--panel", "B", "--format", "json"],
        &[
            "analyze", "--n", "1000", "--delta", "0.3", "--format", "json",
        ],
        &["zone", "--n", "1000000"],
        &[
            "simulate", "--n", "1000000", "--reps", "30000", "--seed", "7",
        ],
        &[
            "simulate", "--n", "1000", "--reps", "30000", "--truth", "mixture", "--format", "json",
        ],
    ];
    let mut mismatches = Vec::new();
    for args in commands {
        let (c1, a) = run_capture(args);
        let (c2, b) = run_capture(args);
        if c1 != 0 || c2 != 0 || a != b {
            mismatches.push(args.join(" "));
        }
    }
    let base = [
        "simulate", "--n", "1000000", "--reps", "50000", "--seed", "3",
    ];
    let mut per_worker = Vec::new();
    for w in ["1", "2", "4", "7"] {
        let mut args = base.to_vec();
        args.extend(["--workers", w]);
        per_worker.push(run_capture(&args).1);
    }
    let workers_agree = per_worker.windows(2).all(|w| w[0] == w[1]);
    verdict(mismatches.is_empty() && workers_agree,
        &format!("unstable commands {mismatches:?}; simulator identical across 1/2/4/7 workers {workers_agree}"),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "table reproduction", criterion_1_table_reproduction),
        (2, "figure endpoints", criterion_2_figure_endpoints),
        (
            3,
            "jeffreys-lindley limit",
            criterion_3_jeffreys_lindley_limit,
        ),
        (4, "bartlett limit", criterion_4_bartlett_limit),
        (
            5,
            "interval bayes factor oracle",
            criterion_5_interval_oracle,
        ),
        (6, "dissolution", criterion_6_dissolution),
        (7, "rarity refuted", criterion_7_rarity_refuted),
        (8, "calibration", criterion_8_calibration),
        (9, "determinism", criterion_9_determinism),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let (ok, detail) =
            std::panic::catch_unwind(check).unwrap_or_else(|e| (false, format!("panicked: {e:?}")));
        println!(
            "[{}] criterion {id} {name}: {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
        failed += usize::from(!ok);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
