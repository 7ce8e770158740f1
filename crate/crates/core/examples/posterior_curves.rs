//! The two ways a point null wins: more data at a fixed p-value, or a more
//! diffuse slab at fixed data.
//!
//! cargo run --example posterior_curves

use jlparadox::paradox::{bartlett_curve, lindley_curve, log_grid, log_grid_integers};
use jlparadox::point_null::critical_z;

fn main() -> jlparadox::Result<()> {
    let z = critical_z(0.05);
    let by_n = lindley_curve(z, 1.0, 0.5, &log_grid_integers(10.0, 1e8, 1)?)?;
    println!("p = 0.05 held fixed, tau = 1");
    for p in &by_n.points {
        println!(
            "  n = {:>11}  P(H0|data) = {:.4}",
            p.abscissa, p.posterior_h0
        );
    }

    let by_tau = bartlett_curve(2.5, 100, 0.5, &log_grid(0.3, 1e4, 1)?)?;
    println!(
        "z = 2.5, n = 100 held fixed (p = {:.4})",
        by_tau.points[0].p_value
    );
    for p in &by_tau.points {
        println!(
            "  tau = {:>8.3}  P(H0|data) = {:.4}",
            p.abscissa, p.posterior_h0
        );
    }
    Ok(())
}
