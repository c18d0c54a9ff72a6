//! Location and distribution-value estimators on finite windows.
//!
//! All estimators take the window as a plain slice `x_1..x_n`. The infinite
//! sample estimators (upper/lower limits, fractional Cesàro limit) are
//! approximated on a finite window by extrema over the tail `[n0, N]` of the
//! running estimator trace, or by a running-mean convergence diagnostic.

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::summation::CompensatedSum;

/// Running estimator values `T̃_1, ..., T̃_N`, where `T̃_n` uses `x_1..x_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorTrace {
    values: Vec<f64>,
}

impl EstimatorTrace {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("a trace needs at least one value".into()));
        }
        Ok(EstimatorTrace { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at the 1-based index `n`.
    pub fn at(&self, n: usize) -> Option<f64> {
        n.checked_sub(1).and_then(|i| self.values.get(i)).copied()
    }
}

/// Upper and lower extrema of a trace over `[n0, N]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailExtrema {
    pub sup: f64,
    pub inf: f64,
}

/// Which tail limit stands in for the estimator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimitKind {
    UpperLimit,
    LowerLimit,
}

fn nonempty(window: &[f64]) -> Result<()> {
    if window.is_empty() {
        Err(Error::Domain("empty window".into()))
    } else {
        Ok(())
    }
}

fn count_at_most(window: &[f64], x_star: f64) -> usize {
    window.iter().filter(|&&x| x <= x_star).count()
}

/// `#{x_i ≤ x_star} / n`, the consistent estimate of `F_θ(x_star)`.
pub fn cdf_point_estimate(window: &[f64], x_star: f64) -> Result<f64> {
    nonempty(window)?;
    Ok(count_at_most(window, x_star) as f64 / window.len() as f64)
}

/// Estimate of the useful signal `θ` in `ξ_k = θ + Δ_k`, `Δ_k ~ noise`:
/// `-F⁻¹(#{x_i ≤ 0} / n)`.
///
/// Fails with [`Error::EstimateUndefined`] when every point, or no point, is
/// non-positive; the quantile is infinite there.
pub fn sign_count_estimate(window: &[f64], noise: &DistributionSpec) -> Result<f64> {
    let u = cdf_point_estimate(window, 0.0)?;
    if u == 0.0 || u == 1.0 {
        return Err(Error::EstimateUndefined(format!(
            "sign fraction is {u} on {} points",
            window.len()
        )));
    }
    Ok(-noise.quantile(u)?)
}

pub fn sample_mean(window: &[f64]) -> Result<f64> {
    nonempty(window)?;
    let mut acc = CompensatedSum::new();
    acc.extend(window.iter().copied());
    Ok(acc.value() / window.len() as f64)
}

/// Running means `m_n = (x_1 + ... + x_n) / n`.
pub fn running_means(window: &[f64]) -> Vec<f64> {
    let mut acc = CompensatedSum::new();
    window
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            acc.add(x);
            acc.value() / (i + 1) as f64
        })
        .collect()
}

/// `T̃_n = #{x_i ≤ x_star, i ≤ n} / n` for every `n`, in one pass.
pub fn trace(window: &[f64], x_star: f64) -> Result<EstimatorTrace> {
    nonempty(window)?;
    let mut hits = 0usize;
    let values = window
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            if x <= x_star {
                hits += 1;
            }
            hits as f64 / (i + 1) as f64
        })
        .collect();
    EstimatorTrace::new(values)
}

/// Max and min of `T̃_m` over `m ∈ [n0, N]`.
pub fn tail_extrema(trace: &EstimatorTrace, n0: usize) -> Result<TailExtrema> {
    let n = trace.len();
    if n0 == 0 || n0 > n {
        return Err(Error::Domain(format!("n0 = {n0} outside 1..={n}")));
    }
    let tail = &trace.values[n0 - 1..];
    let (sup, inf) = tail
        .iter()
        .fold((f64::NEG_INFINITY, f64::INFINITY), |(s, i), &v| (s.max(v), i.min(v)));
    Ok(TailExtrema { sup, inf })
}

/// `⌈N/2⌉`, the default start of the tail window.
pub fn default_n0(len: usize) -> usize {
    len.div_ceil(2).max(1)
}

/// The objective estimator of `θ = F_θ(x_star)`: the tail upper (or lower)
/// limit of the trace when it lies in `Θ ∖ {θ0}`, and `θ0` otherwise.
pub fn objective_cdf_estimate<P>(
    window: &[f64],
    x_star: f64,
    param_set_contains: P,
    fallback: f64,
    n0: usize,
    which: LimitKind,
) -> Result<f64>
where
    P: Fn(f64) -> bool,
{
    let extrema = tail_extrema(&trace(window, x_star)?, n0)?;
    let v = match which {
        LimitKind::UpperLimit => extrema.sup,
        LimitKind::LowerLimit => extrema.inf,
    };
    Ok(if param_set_contains(v) && v != fallback {
        v
    } else {
        fallback
    })
}

/// Finite-window proxy for "the running means converge": accept when every
/// `m_n` with `n ≥ ⌈N/2⌉` lies within `tol` of `m_N`, and report `m_N`.
pub fn cesaro_limit(means: &[f64], tol: f64) -> Option<f64> {
    let last = *means.last()?;
    let start = default_n0(means.len()) - 1;
    let spread = means[start..]
        .iter()
        .fold(0.0f64, |acc, &m| acc.max((m - last).abs()));
    (spread <= tol).then_some(last)
}

/// `x - ⌊x⌋`, in `[0, 1)`.
pub fn fractional_part(x: f64) -> f64 {
    let f = x - x.floor();
    // Tiny negative inputs round up to exactly 1; that is 0 modulo 1.
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

/// `Σ_{k ≤ depth} 1{x_k > 0} / 2^k`.
pub fn binary_shadow(window: &[f64], depth: usize) -> Result<f64> {
    if depth > window.len() {
        return Err(Error::Domain(format!(
            "shadow depth {depth} exceeds window length {}",
            window.len()
        )));
    }
    Ok(window[..depth]
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0.0)
        .map(|(k, _)| 0.5f64.powi(k as i32 + 1))
        .sum())
}

/// `min(53, N)`: beyond 53 terms the shadow no longer changes in `f64`.
pub fn default_shadow_depth(len: usize) -> usize {
    len.min(53)
}

/// The strong objective estimator with values in `[0, 1]`.
///
/// When the running means converge (see [`cesaro_limit`]) to `L`, returns 1
/// if `L` is within `convergence_tol` of 1 and the fractional part of `L`
/// otherwise. Non-convergent windows are mapped to their binary shadow.
pub fn strong_fractional_estimate(
    window: &[f64],
    convergence_tol: f64,
    shadow_depth: usize,
) -> Result<f64> {
    if window.len() < 4 {
        return Err(Error::Domain(format!(
            "the convergence diagnostic needs at least 4 points, got {}",
            window.len()
        )));
    }
    match cesaro_limit(&running_means(window), convergence_tol) {
        Some(limit) if (limit - 1.0).abs() <= convergence_tol => Ok(1.0),
        Some(limit) => Ok(fractional_part(limit)),
        None => binary_shadow(window, shadow_depth),
    }
}
