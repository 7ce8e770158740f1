//! Smallest sample size at which a just-significant result leaves the point
//! null with posterior probability at least 1 − α.
//!
//! cargo run --example strong_contrast_table

use jlparadox::paradox::{
    lindley_threshold_closed_form, min_n_strong_contrast, Setup, StrongContrastQuery,
};

fn main() -> jlparadox::Result<()> {
    println!(
        "{:>6} {:>14} {:>16} {:>14}",
        "alpha", "lindley n", "closed form", "conjugate n"
    );
    for alpha in [0.05, 0.04, 0.03, 0.02, 0.01, 0.005] {
        let lindley =
            min_n_strong_contrast(&StrongContrastQuery::new(alpha, Setup::LindleyUniform))?;
        let conjugate = min_n_strong_contrast(
            &StrongContrastQuery::new(alpha, Setup::NormalConjugate).with_tau(1.0),
        )?;
        let exact = lindley_threshold_closed_form(alpha, 0.5, 1.0);
        println!("{alpha:>6} {lindley:>14} {exact:>16.2} {conjugate:>14}");
    }
    Ok(())
}
