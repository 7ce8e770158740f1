//! Tying the prior mass on the null to the slab scale. Odds cancellation
//! gives a finite answer as the slab becomes flat; the literal rule runs out
//! of probability first.
//!
//! cargo run --example robert_calibration

use jlparadox::point_null::{calibrated_odds_limit, calibrated_posterior_odds, CalibrationSpec};

fn main() -> jlparadox::Result<()> {
    let (z, n) = (2.5, 100);
    let cancel = CalibrationSpec::odds_cancellation(1.0)?;
    for scale in [1.0, 10.0, 1e2, 1e4, 1e6] {
        println!(
            "sigma0/sigma = {scale:>8.0e}: odds {:.6}",
            calibrated_posterior_odds(z, n, scale, &cancel)?
        );
    }
    println!(
        "limit q sqrt(n) exp(-z^2/2) = {:.6}",
        calibrated_odds_limit(z, n, 1.0)
    );

    let literal = CalibrationSpec::literal(0.1)?;
    println!(
        "literal k = 0.1 at 5: odds {:.6}",
        calibrated_posterior_odds(z, n, 5.0, &literal)?
    );
    match calibrated_posterior_odds(z, n, 20.0, &literal) {
        Ok(v) => println!("literal at 20: {v}"),
        Err(e) => println!("literal at 20: {e}"),
    }
    Ok(())
}
