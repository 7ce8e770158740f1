use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input violated its precondition (range, finiteness, ordering).
    #[error("invalid `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    /// The inputs are individually valid but the requested quantity is not
    /// defined for them.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("no sign change over bracket [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("root finder did not converge after {iterations} iterations (last iterate {last})")]
    RootNonConvergence { iterations: usize, last: f64 },

    #[error(
        "quadrature did not converge within {subdivisions} subdivisions \
         (best estimate {estimate}, error estimate {error_estimate})"
    )]
    QuadratureNonConvergence {
        subdivisions: usize,
        estimate: f64,
        error_estimate: f64,
    },

    #[error("no sample size below the search cap n = {cap} reaches the target posterior")]
    SearchCapped { cap: u64 },

    /// Wraps an error raised by one stage of a composite computation.
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// The innermost error, skipping any stage wrappers.
    pub fn root_cause(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root_cause(),
            other => other,
        }
    }

    /// True for failures of an iterative numerical method, as opposed to
    /// rejected inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self.root_cause(),
            Error::NoSignChange { .. }
                | Error::RootNonConvergence { .. }
                | Error::QuadratureNonConvergence { .. }
                | Error::SearchCapped { .. }
        )
    }

    pub fn kind(&self) -> &'static str {
        match self.root_cause() {
            Error::InvalidArgument { .. } => "invalid-argument",
            Error::Domain(_) => "domain",
            Error::NoSignChange { .. } => "no-sign-change",
            Error::RootNonConvergence { .. } => "root-non-convergence",
            Error::QuadratureNonConvergence { .. } => "quadrature-non-convergence",
            Error::SearchCapped { .. } => "search-capped",
            Error::Stage { .. } => unreachable!("root_cause never returns a stage wrapper"),
        }
    }
}

pub(crate) fn check_probability(name: &'static str, p: f64) -> Result<f64> {
    if p.is_finite() && p > 0.0 && p < 1.0 {
        Ok(p)
    } else {
        Err(Error::invalid(
            name,
            format!("{p} is not in the open interval (0, 1)"),
        ))
    }
}

pub(crate) fn check_positive(name: &'static str, x: f64) -> Result<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(Error::invalid(
            name,
            format!("{x} is not a positive finite number"),
        ))
    }
}

pub(crate) fn check_finite(name: &'static str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::invalid(name, format!("{x} is not finite")))
    }
}

pub(crate) fn check_sample_size(n: u64) -> Result<u64> {
    if n >= 1 {
        Ok(n)
    } else {
        Err(Error::invalid("n", "sample size must be at least 1"))
    }
}
