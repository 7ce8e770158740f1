//! Lindley's uniform-slab posterior and Bartlett's width correction. Widening
//! the slab alone pushes the posterior of the null to one.
//!
//! cargo run --example bartlett_anomaly

use jlparadox::point_null::{bartlett_posterior, lindley_posterior};

fn main() -> jlparadox::Result<()> {
    let (c, z, sigma, n) = (0.5, 2.5, 1.0, 100);
    println!(
        "Lindley, unit width: {:.6}",
        lindley_posterior(c, z, sigma, n)?
    );
    for width in [1.0, 10.0, 100.0, 1e4, 1e6, 1e8] {
        println!(
            "width {width:>9.0e}: {:.9}",
            bartlett_posterior(c, z, sigma, n, width)?
        );
    }
    Ok(())
}
