//! Monte Carlo check of how rare a frequentist/Bayesian conflict really is.
//! The estimate does not depend on the number of worker threads.
//!
//! cargo run --release --example rarity_simulation

use jlparadox::paradox::{conflict_zone, simulate_conflict_rate, SimulationSpec, Truth};

fn main() -> jlparadox::Result<()> {
    for truth in [Truth::NullTrue, Truth::Mixture] {
        let spec = SimulationSpec {
            n: 1_000_000,
            alpha: 0.05,
            tau: 1.0,
            c: 0.5,
            truth,
            reps: 100_000,
            seed: 42,
        };
        let single = simulate_conflict_rate(&spec, Some(1))?;
        let pooled = simulate_conflict_rate(&spec, None)?;
        assert_eq!(single, pooled);
        println!(
            "{:<10} conflict rate {:.5} +/- {:.5} ({} of {} rejections)",
            truth.label(),
            pooled.rate,
            pooled.std_error,
            pooled.conflicts,
            pooled.rejections
        );
    }
    let zone = conflict_zone(1_000_000, 0.05, 1.0, 0.5, 0.5)?;
    println!("closed form under H0: {:.5}", zone.null_probability());
    Ok(())
}
