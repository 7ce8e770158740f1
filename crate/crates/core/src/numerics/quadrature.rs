//! Globally adaptive Gauss–Kronrod (7, 15) quadrature.
//!
//! The interval with the largest error estimate is bisected until the summed
//! estimate falls under `max(abs_tol, rel_tol * |value|)`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSettings {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let s = Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol.is_finite() && self.abs_tol > 0.0) {
            return Err(Error::invalid("abs_tol", "must be positive"));
        }
        if !(self.rel_tol.is_finite() && self.rel_tol > 0.0) {
            return Err(Error::invalid("rel_tol", "must be positive"));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::invalid("max_subdivisions", "must be at least 1"));
        }
        Ok(())
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_3,
    0.949_107_912_342_758_524_526_189_684_047_9,
    0.864_864_423_359_769_072_789_712_788_640_9,
    0.741_531_185_599_394_439_863_864_773_280_8,
    0.586_087_235_467_691_130_294_144_845_693_0,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_2,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_2,
    0.104_790_010_322_250_183_839_876_322_541_5,
    0.140_653_259_715_525_918_745_189_590_510_2,
    0.169_004_726_639_267_902_826_583_426_598_6,
    0.190_350_578_064_785_409_913_256_402_421_0,
    0.204_432_940_075_298_892_414_161_999_234_6,
    0.209_482_141_084_727_828_012_999_174_891_7,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_1,
    0.279_705_391_489_276_667_901_467_771_423_8,
    0.381_830_050_505_118_944_950_369_775_488_98,
    0.417_959_183_673_469_387_755_102_040_816_3,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            // deterministic tie-break on position
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Panel {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (j, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Panel {
        lo,
        hi,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Integrates `f` over `[lo, hi]`.
pub fn integrate<F>(f: F, lo: f64, hi: f64, settings: &QuadratureSettings) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    integrate_with_breaks(f, lo, hi, &[], settings)
}

/// Like [`integrate`], but starts from panels split at `breaks` (points
/// outside `(lo, hi)` are ignored). Useful when the integrand has a sharp
/// feature whose location is known.
pub fn integrate_with_breaks<F>(
    f: F,
    lo: f64,
    hi: f64,
    breaks: &[f64],
    settings: &QuadratureSettings,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    settings.validate()?;
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::invalid(
            "bounds",
            "integration limits must be finite",
        ));
    }
    if !(lo < hi) {
        return Err(Error::invalid(
            "bounds",
            format!("lower limit {lo} is not below upper limit {hi}"),
        ));
    }

    let mut edges: Vec<f64> = std::iter::once(lo)
        .chain(breaks.iter().copied().filter(|&b| b > lo && b < hi))
        .chain(std::iter::once(hi))
        .collect();
    edges.sort_by(f64::total_cmp);
    edges.dedup();

    let mut heap: BinaryHeap<Panel> = edges
        .windows(2)
        .map(|w| gauss_kronrod(&f, w[0], w[1]))
        .collect();
    let (mut value, mut error) = heap
        .iter()
        .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));

    if !value.is_finite() {
        return Err(Error::Domain(format!(
            "integrand is not finite on [{lo}, {hi}]"
        )));
    }

    while error > settings.target(value) {
        if heap.len() >= settings.max_subdivisions.max(edges.len() - 1) {
            return Err(Error::QuadratureNonConvergence {
                subdivisions: heap.len(),
                estimate: value,
                error_estimate: error,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(mid > worst.lo && mid < worst.hi) {
            // panel cannot be split further in floating point
            return Err(Error::QuadratureNonConvergence {
                subdivisions: heap.len() + 1,
                estimate: value,
                error_estimate: error,
            });
        }
        let left = gauss_kronrod(&f, worst.lo, mid);
        let right = gauss_kronrod(&f, mid, worst.hi);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if heap.len().is_multiple_of(64) {
            // re-sum to bound the drift of the running totals
            value = heap.iter().map(|p| p.value).sum();
            error = heap.iter().map(|p| p.error).sum();
        }
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::special::norm_ln_pdf;

    #[test]
    fn polynomial_is_exact() {
        let s = QuadratureSettings::default();
        let v = integrate(|x| x * x, 0.0, 1.0, &s).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn normal_density_normalizes() {
        let s = QuadratureSettings::default();
        let v = integrate(|x| norm_ln_pdf(x).exp(), -8.0, 8.0, &s).unwrap();
        assert!((v - 1.0).abs() < 1e-10);
    }

    #[test]
    fn gaussian_bump_matches_riemann_oracle() {
        // Midpoint Riemann sum with 10^6 nodes, computed once offline.
        let f = |t: f64| (-50.0 * (0.196 - t).powi(2)).exp();
        let n = 1_000_000;
        let h = 0.6 / n as f64;
        let oracle: f64 = (0..n).map(|i| f(-0.3 + (i as f64 + 0.5) * h)).sum::<f64>() * h;
        assert!((oracle - 0.21327).abs() < 5e-6);
        let v = integrate(f, -0.3, 0.3, &QuadratureSettings::default()).unwrap();
        assert!((v - oracle).abs() < 1e-10);
        assert!((v - 0.213_271_377_590_507_4).abs() < 1e-12);
    }

    #[test]
    fn narrow_peak_found_with_breakpoint() {
        let s = QuadratureSettings::default();
        let sd = 1e-2;
        let f = |x: f64| norm_ln_pdf((x - 0.3) / sd).exp() / sd;
        let v = integrate_with_breaks(f, -10.0, 10.0, &[0.3], &s).unwrap();
        assert!((v - 1.0).abs() < 1e-9, "{v}");
    }

    #[test]
    fn exhausted_budget_reports_best_estimate() {
        let s = QuadratureSettings::new(1e-15, 1e-15, 3).unwrap();
        let err = integrate(|x: f64| x.abs().sqrt(), -1.0, 1.0, &s).unwrap_err();
        match err {
            Error::QuadratureNonConvergence { estimate, .. } => {
                assert!((estimate - 4.0 / 3.0).abs() < 1e-2)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let s = QuadratureSettings::default();
        assert!(integrate(|x| x, 1.0, 0.0, &s).is_err());
        assert!(integrate(|x| x, 0.0, f64::INFINITY, &s).is_err());
        assert!(QuadratureSettings::new(0.0, 1e-10, 10).is_err());
        assert!(QuadratureSettings::new(1e-12, -1.0, 10).is_err());
        assert!(QuadratureSettings::new(1e-12, 1e-10, 0).is_err());
    }

    #[test]
    fn additivity() {
        let s = QuadratureSettings::default();
        let f = |x: f64| (x.sin() + 2.0) * (-x * x).exp();
        let whole = integrate(f, -2.0, 3.0, &s).unwrap();
        let parts = integrate(f, -2.0, 0.7, &s).unwrap() + integrate(f, 0.7, 3.0, &s).unwrap();
        assert!((whole - parts).abs() < 3e-10 * whole.abs());
    }
}
