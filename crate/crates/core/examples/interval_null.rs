//! Replacing the point null by |θ − θ0| ≤ δ. Along a just-significant
//! sequence both TOST and the interval Bayes factor end up supporting the
//! null, while the point-null analysis stays in conflict.
//!
//! cargo run --example interval_null

use jlparadox::interval_null::{agreement_report, laplace_log_bf01_with_prior, IntervalNullSpec};
use jlparadox::numerics::QuadratureSettings;
use jlparadox::point_null::{PriorSpec, Scenario};

fn main() -> jlparadox::Result<()> {
    let prior = PriorSpec::conjugate(0.5, 1.0)?;
    let spec = IntervalNullSpec::with_default_bound(0.3, 1.0)?;
    let settings = QuadratureSettings::default();
    println!(
        "{:>7} {:>8} {:>10} {:>12} {:>12} {:>6}  {:<18} interval",
        "n", "p", "P(H0) pt", "ln B01 int", "laplace", "tost", "point"
    );
    for n in [100u64, 1_000, 10_000, 100_000] {
        let s = Scenario::just_significant(0.0, 1.0, n, 0.05)?;
        let r = agreement_report(&s, &prior, &spec, 0.05, &settings)?;
        let approx = laplace_log_bf01_with_prior(&s, &spec)?.log_bf01;
        println!(
            "{n:>7} {:>8.4} {:>10.4} {:>12.3} {:>12.3} {:>6}  {:<18} {}",
            r.p_value,
            r.point_null.posterior_h0,
            r.interval.log_bf01,
            approx,
            r.tost.concluded_equivalence,
            r.label.label(),
            r.interval_label.label()
        );
    }
    Ok(())
}
