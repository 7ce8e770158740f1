//! The band of |z| where the test rejects while the posterior still favours
//! the null, and how often null-true data land in it.
//!
//! cargo run --example conflict_zone

use jlparadox::paradox::conflict_zone;

fn main() -> jlparadox::Result<()> {
    for n in [100u64, 10_000, 1_000_000, 100_000_000] {
        let zone = conflict_zone(n, 0.05, 1.0, 0.5, 0.5)?;
        match zone.bounds() {
            Some((lo, hi)) => println!(
                "n = {n:>9}: {lo:.4} <= |z| <= {hi:.4}, P(zone | H0) = {:.4}",
                zone.null_probability()
            ),
            None => println!("n = {n:>9}: empty"),
        }
    }
    Ok(())
}
