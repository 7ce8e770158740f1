//! Monte Carlo frequency of point-null conflicts.
//!
//! Replicates are grouped in fixed-size batches and batch `b` draws from
//! ChaCha stream `b` of the user's seed, so the result depends only on
//! `(seed, reps)` and never on how rayon schedules the batches.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{check_positive, check_probability, check_sample_size, Error, Result};
use crate::numerics::special::logit;
use crate::point_null::{critical_z, log_conjugate_bf01_real};

const BATCH_SIZE: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truth {
    /// Every dataset is generated with `θ = θ0`.
    NullTrue,
    /// With probability `c` the null holds; otherwise the effect is drawn from
    /// the conjugate slab `N(θ0, τ²σ²)`, whatever prior the analysis uses.
    Mixture,
}

impl Truth {
    pub fn label(self) -> &'static str {
        match self {
            Truth::NullTrue => "null-true",
            Truth::Mixture => "mixture",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Truth::NullTrue => "z drawn from N(0, 1)",
            Truth::Mixture => {
                "with probability c, z ~ N(0, 1); otherwise effect ~ N(0, (tau*sigma)^2) \
                 from the conjugate slab, z ~ N(effect*sqrt(n)/sigma, 1)"
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationSpec {
    pub n: u64,
    pub alpha: f64,
    pub tau: f64,
    pub c: f64,
    pub truth: Truth,
    pub reps: u64,
    pub seed: u64,
}

impl SimulationSpec {
    pub fn validate(&self) -> Result<()> {
        check_sample_size(self.n)?;
        check_probability("alpha", self.alpha)?;
        check_positive("tau", self.tau)?;
        check_probability("c", self.c)?;
        if self.reps == 0 {
            return Err(Error::invalid("reps", "at least one replicate is required"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationEstimate {
    /// Fraction of replicates with `p < alpha` and `P(H0 | z) > 0.5`.
    pub rate: f64,
    /// Binomial standard error of `rate`.
    pub std_error: f64,
    pub conflicts: u64,
    /// Replicates rejected by the point-null test (a superset of conflicts).
    pub rejections: u64,
    pub reps: u64,
}

#[derive(Default, Clone, Copy)]
struct Tally {
    conflicts: u64,
    rejections: u64,
}

impl std::ops::Add for Tally {
    type Output = Tally;
    fn add(self, o: Tally) -> Tally {
        Tally {
            conflicts: self.conflicts + o.conflicts,
            rejections: self.rejections + o.rejections,
        }
    }
}

fn run_batch(spec: &SimulationSpec, batch: u64, crit: f64) -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(batch);
    let start = batch * BATCH_SIZE;
    let end = (start + BATCH_SIZE).min(spec.reps);
    let n = spec.n as f64;
    let prior = logit(spec.c);
    let shift_scale = spec.tau * n.sqrt();
    let mut tally = Tally::default();
    for _ in start..end {
        let noise: f64 = rng.sample(StandardNormal);
        let z = match spec.truth {
            Truth::NullTrue => noise,
            Truth::Mixture => {
                let null: bool = rng.random_bool(spec.c);
                let effect: f64 = rng.sample(StandardNormal);
                if null {
                    noise
                } else {
                    noise + shift_scale * effect
                }
            }
        };
        if z.abs() > crit {
            tally.rejections += 1;
            if prior + log_conjugate_bf01_real(z, n, spec.tau) > 0.0 {
                tally.conflicts += 1;
            }
        }
    }
    tally
}

/// Estimates how often a dataset is both significant at `alpha` and gives the
/// point null posterior probability above one half. `workers` pins the rayon
/// pool size; the estimate is identical for every choice.
pub fn simulate_conflict_rate(
    spec: &SimulationSpec,
    workers: Option<usize>,
) -> Result<SimulationEstimate> {
    spec.validate()?;
    let crit = critical_z(spec.alpha);
    let batches = spec.reps.div_ceil(BATCH_SIZE);
    let run = || {
        (0..batches)
            .into_par_iter()
            .map(|b| run_batch(spec, b, crit))
            .reduce(Tally::default, |a, b| a + b)
    };
    let tally = match workers {
        Some(k) => {
            if k == 0 {
                return Err(Error::invalid("workers", "at least one worker is required"));
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::Domain(format!("could not start worker pool: {e}")))?
                .install(run)
        }
        None => run(),
    };
    let reps = spec.reps as f64;
    let rate = tally.conflicts as f64 / reps;
    Ok(SimulationEstimate {
        rate,
        std_error: (rate * (1.0 - rate) / reps).sqrt(),
        conflicts: tally.conflicts,
        rejections: tally.rejections,
        reps: spec.reps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: u64, reps: u64, seed: u64, truth: Truth) -> SimulationSpec {
        SimulationSpec {
            n,
            alpha: 0.05,
            tau: 1.0,
            c: 0.5,
            truth,
            reps,
            seed,
        }
    }

    #[test]
    fn single_replicate_is_bernoulli() {
        for seed in 0..20 {
            let r =
                simulate_conflict_rate(&spec(1_000_000, 1, seed, Truth::NullTrue), None).unwrap();
            assert!(r.rate == 0.0 || r.rate == 1.0);
        }
    }

    #[test]
    fn conflicts_are_a_subset_of_rejections() {
        let r = simulate_conflict_rate(&spec(10, 20_000, 7, Truth::NullTrue), None).unwrap();
        assert!(r.conflicts <= r.rejections);
        assert!(r.rate <= 0.05 + 3.0 * (0.05f64 * 0.95 / 20_000.0).sqrt());
        // at n = 10 no rejected z reaches posterior 1/2
        assert_eq!(r.conflicts, 0);
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let s = spec(1_000_000, 10_000, 42, Truth::Mixture);
        let a = simulate_conflict_rate(&s, Some(1)).unwrap();
        let b = simulate_conflict_rate(&s, Some(4)).unwrap();
        let c = simulate_conflict_rate(&s, None).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.rate.to_bits(), b.rate.to_bits());
    }

    #[test]
    fn seed_changes_draws() {
        let a = simulate_conflict_rate(&spec(1_000_000, 5_000, 1, Truth::NullTrue), None).unwrap();
        let b = simulate_conflict_rate(&spec(1_000_000, 5_000, 2, Truth::NullTrue), None).unwrap();
        assert_ne!(a.conflicts, b.conflicts);
    }

    #[test]
    fn rejects_invalid_spec() {
        assert!(simulate_conflict_rate(&spec(10, 0, 1, Truth::NullTrue), None).is_err());
        assert!(simulate_conflict_rate(&spec(10, 5, 1, Truth::NullTrue), Some(0)).is_err());
    }
}
