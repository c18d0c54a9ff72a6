//! Rosenblatt–Parzen kernel density estimate with a Gaussian kernel, and the
//! standard-deviation estimators built on it and on sign counts.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::estimators::sample_mean;
use crate::normal;
use crate::summation::CompensatedSum;

/// Beyond this many bandwidths a kernel term is below `e^-50` of the peak and
/// cannot change the `f64` sum.
const KERNEL_CUTOFF: f64 = 10.0;

/// Series terms per block; with `x ≤ 1/8` the remainder is below `x^16/16! < 1e-27`.
const MOMENT_TERMS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BandwidthRule {
    #[default]
    PowerLaw,
}

/// `a_n = scale_factor · n^(-exponent)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandwidthSchedule {
    rule: BandwidthRule,
    exponent: f64,
    scale_factor: f64,
}

impl BandwidthSchedule {
    pub fn power_law(exponent: f64, scale_factor: f64) -> Result<Self> {
        if !(exponent > 0.0 && exponent < 1.0) {
            return Err(Error::Domain(format!("bandwidth exponent {exponent} not in (0, 1)")));
        }
        if !(scale_factor > 0.0 && scale_factor.is_finite()) {
            return Err(Error::Domain(format!("bandwidth scale {scale_factor} must be positive")));
        }
        Ok(BandwidthSchedule {
            rule: BandwidthRule::PowerLaw,
            exponent,
            scale_factor,
        })
    }

    pub fn rule(&self) -> BandwidthRule {
        self.rule
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn scale_factor(&self) -> f64 {
        self.scale_factor
    }

    /// Bandwidth `a_n` for a sample of size `n ≥ 1`.
    pub fn bandwidth(&self, n: usize) -> f64 {
        match self.rule {
            BandwidthRule::PowerLaw => self.scale_factor * (n as f64).powf(-self.exponent),
        }
    }
}

impl Default for BandwidthSchedule {
    /// `a_n = n^(-1/5)`.
    fn default() -> Self {
        BandwidthSchedule {
            rule: BandwidthRule::PowerLaw,
            exponent: 0.2,
            scale_factor: 1.0,
        }
    }
}

/// Known mean `a`, fallback `σ0` and tail start `n0` for the σ-estimators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaEstimateConfig {
    pub known_mean: f64,
    pub fallback_sigma: f64,
    pub n0: usize,
}

impl SigmaEstimateConfig {
    pub fn new(known_mean: f64, fallback_sigma: f64, n0: usize) -> Result<Self> {
        if !(fallback_sigma > 0.0 && fallback_sigma.is_finite()) {
            return Err(Error::Domain(format!("fallback sigma {fallback_sigma} must be positive")));
        }
        if n0 == 0 {
            return Err(Error::Domain("n0 must be >= 1".into()));
        }
        Ok(SigmaEstimateConfig {
            known_mean,
            fallback_sigma,
            n0,
        })
    }

    fn check_window(&self, len: usize) -> Result<()> {
        if len == 0 {
            return Err(Error::Domain("empty window".into()));
        }
        if self.n0 > len {
            return Err(Error::Domain(format!("n0 = {} exceeds window length {len}", self.n0)));
        }
        Ok(())
    }

    fn accept(&self, v: f64) -> f64 {
        if v > 0.0 && v.is_finite() && v != self.fallback_sigma {
            v
        } else {
            self.fallback_sigma
        }
    }
}

/// `f_n(x) = (n a_n)^-1 Σ φ((x_i - x) / a_n)` with `a_n` taken at `n = window.len()`.
pub fn kernel_density_at(window: &[f64], x: f64, schedule: &BandwidthSchedule) -> Result<f64> {
    if window.is_empty() {
        return Err(Error::Domain("empty window".into()));
    }
    let n = window.len();
    let h = schedule.bandwidth(n);
    let mut acc = CompensatedSum::new();
    acc.extend(window.iter().map(|&xi| normal::pdf((xi - x) / h)));
    Ok(acc.value() / (n as f64 * h))
}

/// `f_n` evaluated at each point of `grid`.
pub fn kernel_density_grid(window: &[f64], grid: &[f64], schedule: &BandwidthSchedule) -> Result<Vec<f64>> {
    grid.iter().map(|&x| kernel_density_at(window, x, schedule)).collect()
}

fn sigma_from_density(density: f64) -> f64 {
    1.0 / (TAU.sqrt() * density)
}

/// `T̃⁽¹⁾_n = 1 / (√(2π) f_n(a))` on the whole window.
pub fn sigma_kernel_at(window: &[f64], known_mean: f64, schedule: &BandwidthSchedule) -> Result<f64> {
    let d = kernel_density_at(window, known_mean, schedule)?;
    if d <= 0.0 {
        return Err(Error::EstimateUndefined(format!(
            "kernel density at {known_mean} underflows to zero"
        )));
    }
    Ok(sigma_from_density(d))
}

/// σ-estimator from the kernel density at the known mean: the supremum of
/// `T̃⁽¹⁾_n` over `n ∈ [n0, N]`, with the `σ0` fallback.
///
/// Every `n` in the tail uses its own bandwidth. Only points within
/// ten widest bandwidths of `a` are visited. The tail is cut
/// into blocks over which `D²·(s_n - s_start) ≤ 1/8`, where `s_n = 1/(2a_n²)`
/// and `D` is the cutoff radius; inside a block the kernel sum over the
/// points already seen at the block start is the series
/// `Σ_k (-(s_n - s_start))^k / k! · Σ_i d_i^(2k) e^(-d_i² s_start)`,
/// truncated after sixteen terms, and points arriving inside the
/// block are summed directly.
pub fn sigma_kernel_estimate(
    window: &[f64],
    cfg: &SigmaEstimateConfig,
    schedule: &BandwidthSchedule,
) -> Result<f64> {
    cfg.check_window(window.len())?;
    sigma_kernel_at(window, cfg.known_mean, schedule)?;

    let a = cfg.known_mean;
    let len = window.len();
    let widest = (cfg.n0..=len)
        .map(|n| schedule.bandwidth(n))
        .fold(0.0f64, f64::max);
    let radius = KERNEL_CUTOFF * widest;
    let radius2 = radius * radius;
    // (index, d²) for the points that can matter.
    let near: Vec<(usize, f64)> = window
        .iter()
        .enumerate()
        .filter(|(_, &x)| (x - a).abs() <= radius)
        .map(|(i, &x)| (i, (x - a) * (x - a)))
        .collect();
    let s_of = |n: usize| {
        let h = schedule.bandwidth(n);
        0.5 / (h * h)
    };
    let visible_at = |n: usize| near.partition_point(|&(i, _)| i < n);

    let mut best: Option<f64> = None;
    let mut n = cfg.n0;
    while n <= len {
        let s0 = s_of(n);
        let seen = visible_at(n);
        let mut moments = [CompensatedSum::new(); MOMENT_TERMS];
        for &(_, q) in &near[..seen] {
            let mut p = (-q * s0).exp();
            for m in moments.iter_mut() {
                m.add(p);
                p *= q;
            }
        }
        let mut coeffs = [0.0; MOMENT_TERMS];
        let mut factorial = 1.0;
        for (k, (c, m)) in coeffs.iter_mut().zip(&moments).enumerate() {
            if k > 0 {
                factorial *= k as f64;
            }
            *c = m.value() / factorial;
        }

        loop {
            let s = s_of(n);
            let delta = s - s0;
            let series = coeffs.iter().rev().fold(0.0, |acc, &c| acc * -delta + c);
            let mut acc = CompensatedSum::new();
            acc.add(series);
            acc.extend(near[seen..visible_at(n)].iter().map(|&(_, q)| (-q * s).exp()));
            let density = acc.value() / (TAU.sqrt() * n as f64 * schedule.bandwidth(n));
            if density > 0.0 {
                let v = sigma_from_density(density);
                best = Some(best.map_or(v, |b| b.max(v)));
            }
            n += 1;
            if n > len || radius2 * (s_of(n) - s0) > 0.125 {
                break;
            }
        }
    }
    match best {
        Some(v) => Ok(cfg.accept(v)),
        None => Err(Error::EstimateUndefined(
            "kernel density at the known mean is zero throughout the tail".into(),
        )),
    }
}

fn sign_quantile(nonpositive: usize, n: usize) -> Result<f64> {
    let u = nonpositive as f64 / n as f64;
    if nonpositive == 0 || nonpositive == n {
        return Err(Error::EstimateUndefined(format!(
            "sign fraction {u} at n = {n}; Φ⁻¹ diverges"
        )));
    }
    let q = normal::quantile(u);
    if q == 0.0 {
        return Err(Error::DivisionByZero(format!("Φ⁻¹({u}) = 0 at n = {n}")));
    }
    Ok(q)
}

fn require_nonzero_mean(a: f64) -> Result<()> {
    if a == 0.0 || !a.is_finite() {
        return Err(Error::Domain(format!("known mean must be finite and non-zero, got {a}")));
    }
    Ok(())
}

/// `T̃⁽²⁾_n = -a / Φ⁻¹(#{x_i ≤ 0} / n)` on the whole window.
pub fn sigma_signcount_at(window: &[f64], known_mean: f64) -> Result<f64> {
    require_nonzero_mean(known_mean)?;
    if window.is_empty() {
        return Err(Error::Domain("empty window".into()));
    }
    let k = window.iter().filter(|&&x| x <= 0.0).count();
    Ok(-known_mean / sign_quantile(k, window.len())?)
}

/// `T̃⁽³⁾_n = -(Σ x_i) / (n Φ⁻¹(#{x_i ≤ 0} / n))` on the whole window.
pub fn sigma_mean_signcount_at(window: &[f64]) -> Result<f64> {
    let mean = sample_mean(window)?;
    let k = window.iter().filter(|&&x| x <= 0.0).count();
    Ok(-mean / sign_quantile(k, window.len())?)
}

/// Supremum over `n ∈ [n0, N]` of a per-prefix statistic, skipping prefixes
/// where it is undefined. Errors with the last failure if every prefix fails.
fn tail_supremum<F>(window: &[f64], n0: usize, mut per_prefix: F) -> Result<f64>
where
    F: FnMut(usize, usize, f64) -> Result<f64>,
{
    let mut nonpositive = 0usize;
    let mut sum = CompensatedSum::new();
    let mut best: Option<f64> = None;
    let mut last_err = None;
    for (i, &x) in window.iter().enumerate() {
        let n = i + 1;
        if x <= 0.0 {
            nonpositive += 1;
        }
        sum.add(x);
        if n < n0 {
            continue;
        }
        match per_prefix(n, nonpositive, sum.value() / n as f64) {
            Ok(v) => best = Some(best.map_or(v, |b| b.max(v))),
            Err(e) => last_err = Some(e),
        }
    }
    match (best, last_err) {
        (Some(v), _) => Ok(v),
        (None, Some(e)) => Err(e),
        (None, None) => Err(Error::Domain("empty tail".into())),
    }
}

/// σ-estimator for a Gaussian with known non-zero mean `a`: tail supremum of
/// `T̃⁽²⁾_n`, with the `σ0` fallback.
pub fn sigma_signcount_estimate(window: &[f64], cfg: &SigmaEstimateConfig) -> Result<f64> {
    require_nonzero_mean(cfg.known_mean)?;
    cfg.check_window(window.len())?;
    let a = cfg.known_mean;
    let v = tail_supremum(window, cfg.n0, |n, k, _| Ok(-a / sign_quantile(k, n)?))?;
    Ok(cfg.accept(v))
}

/// σ-estimator when the mean is unknown too: tail supremum of `T̃⁽³⁾_n`, with
/// the `σ0` fallback. `cfg.known_mean` is ignored.
pub fn sigma_mean_signcount_estimate(window: &[f64], cfg: &SigmaEstimateConfig) -> Result<f64> {
    cfg.check_window(window.len())?;
    let v = tail_supremum(window, cfg.n0, |n, k, mean| Ok(-mean / sign_quantile(k, n)?))?;
    Ok(cfg.accept(v))
}

/// Square root of the sample variance, divided by `n` or (corrected) `n - 1`.
pub fn sample_sd(window: &[f64], corrected: bool) -> Result<f64> {
    let n = window.len();
    let min = if corrected { 2 } else { 1 };
    if n < min {
        return Err(Error::Domain(format!(
            "{} standard deviation needs at least {min} points, got {n}",
            if corrected { "corrected" } else { "sample" }
        )));
    }
    let mean = sample_mean(window)?;
    let mut acc = CompensatedSum::new();
    acc.extend(window.iter().map(|&x| (x - mean) * (x - mean)));
    let denom = if corrected { n - 1 } else { n } as f64;
    Ok((acc.value() / denom).sqrt())
}
