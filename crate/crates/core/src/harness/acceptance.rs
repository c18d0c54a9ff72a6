//! The acceptance checks behind `--check`. Each returns one outcome with a
//! one-line detail; tolerances and wall-clock budgets are the constants below.

use std::fmt;
use std::time::{Duration, Instant};

use super::config::{EstimatorId, ExperimentConfig, OutputFormat};
use super::report::emit_report;
use super::tables::{self, TableId};
use super::{run_experiment, run_experiment_sequential};
use crate::coin::{
    bernoulli_sample, cesaro_estimate, classify_objectivity, prevalence_monte_carlo, Cardinality,
    ObjectivityVerdict, ParameterSetDescriptor,
};
use crate::density::{self, BandwidthSchedule, SigmaEstimateConfig};
use crate::distributions::{sample_via_weyl, DistributionKind, DistributionSpec};
use crate::estimators;
use crate::normal;
use crate::rng::CounterRng;
use crate::weyl::IrrationalId;

pub const TABLE_BUDGET: Duration = Duration::from_secs(1);
pub const CONSISTENCY_TOL: f64 = 0.007;
pub const CONSISTENCY_N: usize = 100_000;
pub const CONSISTENCY_BUDGET: Duration = Duration::from_secs(2);
pub const HEAVY_TAIL_N: usize = 1000;
pub const HEAVY_TAIL_SIGN_TOL: f64 = 0.05;
pub const HEAVY_TAIL_MEAN_GAP: f64 = 1.0;
pub const KDE_SUP_TOL: f64 = 0.02;
pub const KDE_GRID_POINTS: usize = 101;
pub const SIGMA_KERNEL_TOL: f64 = 0.5;
pub const KERNEL_BUDGET: Duration = Duration::from_secs(10);
pub const ROUND_TRIP_TOL: f64 = 1e-9;
pub const PREVALENCE_MIN: f64 = 0.99;
pub const CESARO_TOL: f64 = 0.01;
pub const CESARO_N: usize = 100_000;
pub const COIN_BUDGET: Duration = Duration::from_secs(30);
pub const ORACLE_WINDOWS: usize = 100;

/// Working precision used for every Weyl window here; enough for `n < 2^64`.
const BITS: u32 = 128;

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<28} {:>8.3}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

fn timed(id: u8, name: &'static str, budget: Option<Duration>, body: impl FnOnce() -> (bool, String)) -> CriterionOutcome {
    let start = Instant::now();
    let (mut passed, mut detail) = body();
    let elapsed = start.elapsed();
    if let Some(b) = budget {
        if elapsed > b {
            passed = false;
            detail = format!("{detail}; over budget {:.1}s", b.as_secs_f64());
        }
    }
    CriterionOutcome {
        id,
        name,
        passed,
        detail,
        elapsed,
    }
}

fn table_check(id: u8, name: &'static str, which: TableId) -> CriterionOutcome {
    timed(id, name, Some(TABLE_BUDGET), || {
        let report = tables::reproduce_table(which);
        let checks = tables::check_against_published(which, &report);
        let failed: Vec<String> = checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| match c.actual {
                Some(a) => format!("n={} {}: {a} vs {}", c.cell.n, c.cell.column, c.cell.expected),
                None => format!("n={} {}: ERR", c.cell.n, c.cell.column),
            })
            .collect();
        let worst = checks
            .iter()
            .filter_map(|c| Some((c.actual? - c.cell.expected).abs() / c.cell.tolerance))
            .fold(0.0f64, f64::max);
        let corrected = checks.iter().filter(|c| c.cell.is_corrected()).count();
        if failed.is_empty() {
            (
                true,
                format!(
                    "{} cells, worst |err|/tol = {worst:.1e}, {corrected} recomputed cells",
                    checks.len()
                ),
            )
        } else {
            (false, format!("{} of {} cells off: {}", failed.len(), checks.len(), failed.join("; ")))
        }
    })
}

pub fn criterion_table1() -> CriterionOutcome {
    table_check(1, "table 1 reproduction", TableId::Table1)
}

pub fn criterion_table2() -> CriterionOutcome {
    table_check(2, "table 2 reproduction", TableId::Table2)
}

pub fn criterion_table3() -> CriterionOutcome {
    table_check(3, "table 3 reproduction", TableId::Table3)
}

pub fn criterion_consistency() -> CriterionOutcome {
    timed(4, "consistency sweep", Some(CONSISTENCY_BUDGET), || {
        let mut ok = true;
        let mut parts = Vec::new();
        for theta in [0.0, 1.0, 2.0] {
            let spec = DistributionSpec::gaussian(theta, 1.0).expect("valid");
            let err = sample_via_weyl(&spec, CONSISTENCY_N, IrrationalId::Pi, BITS)
                .and_then(|w| estimators::cdf_point_estimate(w.values(), 0.0))
                .map(|v| (v - normal::cdf(-theta)).abs());
            match err {
                Ok(e) => {
                    ok &= e <= CONSISTENCY_TOL;
                    parts.push(format!("theta={theta}: {e:.2e}"));
                }
                Err(e) => {
                    ok = false;
                    parts.push(format!("theta={theta}: {e}"));
                }
            }
        }
        (ok, parts.join(", "))
    })
}

pub fn criterion_heavy_tail() -> CriterionOutcome {
    timed(5, "heavy-tail contrast", None, || {
        let spec = DistributionSpec::cauchy(1.0, 1.0).expect("valid");
        let noise = DistributionSpec::standard(DistributionKind::Cauchy);
        let r = sample_via_weyl(&spec, HEAVY_TAIL_N, IrrationalId::Pi, BITS).and_then(|w| {
            Ok((
                estimators::sign_count_estimate(w.values(), &noise)?,
                estimators::sample_mean(w.values())?,
            ))
        });
        match r {
            Ok((t, m)) => (
                (t - 1.0).abs() <= HEAVY_TAIL_SIGN_TOL && (m - 1.0).abs() >= HEAVY_TAIL_MEAN_GAP,
                format!("sign_count = {t:.6}, mean = {m:.6}"),
            ),
            Err(e) => (false, e.to_string()),
        }
    })
}

/// `max_x |f_n(x) - φ(x)|` over the check grid on `[-4, 4]`.
pub fn kde_sup_error(n: usize) -> crate::Result<f64> {
    let w = sample_via_weyl(&DistributionSpec::standard(DistributionKind::Gaussian), n, IrrationalId::Pi, BITS)?;
    let grid: Vec<f64> = (0..KDE_GRID_POINTS)
        .map(|i| -4.0 + 8.0 * i as f64 / (KDE_GRID_POINTS - 1) as f64)
        .collect();
    let f = density::kernel_density_grid(w.values(), &grid, &BandwidthSchedule::default())?;
    Ok(grid
        .iter()
        .zip(&f)
        .map(|(&x, &fx)| (fx - normal::pdf(x)).abs())
        .fold(0.0, f64::max))
}

pub fn criterion_kernel() -> CriterionOutcome {
    timed(6, "kernel convergence", Some(KERNEL_BUDGET), || {
        let r = (|| {
            let small = kde_sup_error(1_000)?;
            let large = kde_sup_error(100_000)?;
            let n = 100_000;
            let w = sample_via_weyl(&DistributionSpec::gaussian(3.0, 5.0)?, n, IrrationalId::Pi, BITS)?;
            let cfg = SigmaEstimateConfig::new(3.0, 1.0, estimators::default_n0(n))?;
            let sigma = density::sigma_kernel_estimate(w.values(), &cfg, &BandwidthSchedule::default())?;
            Ok::<_, crate::Error>((small, large, sigma))
        })();
        match r {
            Ok((small, large, sigma)) => (
                large <= KDE_SUP_TOL && large < small && (sigma - 5.0).abs() <= SIGMA_KERNEL_TOL,
                format!("sup err N=1e3: {small:.4}, N=1e5: {large:.4}; sigma_kernel = {sigma:.4}"),
            ),
            Err(e) => (false, e.to_string()),
        }
    })
}

/// `{1e-6, ..., 0.1, 0.2, ..., 0.9, ..., 1 - 1e-6}`.
pub fn round_trip_grid() -> Vec<f64> {
    let mut g: Vec<f64> = (1..=6).rev().map(|k| 10f64.powi(-k)).collect();
    g.extend((2..=8).map(|k| k as f64 / 10.0));
    g.extend((1..=6).map(|k| 1.0 - 10f64.powi(-k)));
    g
}

pub fn criterion_round_trip() -> CriterionOutcome {
    timed(7, "quantile round trip", None, || {
        let specs = [
            DistributionSpec::standard(DistributionKind::Gaussian),
            DistributionSpec::gaussian(3.0, 5.0).expect("valid"),
            DistributionSpec::standard(DistributionKind::Cauchy),
            DistributionSpec::cauchy(1.0, 0.5).expect("valid"),
        ];
        let mut worst = 0.0f64;
        let mut failures = Vec::new();
        for spec in &specs {
            for &u in &round_trip_grid() {
                match spec.quantile(u) {
                    Ok(x) => {
                        let e = (spec.cdf(x) - u).abs();
                        worst = worst.max(e);
                        if e > ROUND_TRIP_TOL {
                            failures.push(format!("{} u={u}: {e:.2e}", spec.kind()));
                        }
                    }
                    Err(e) => failures.push(format!("{} u={u}: {e}", spec.kind())),
                }
            }
        }
        (
            failures.is_empty(),
            if failures.is_empty() {
                format!("{} points, worst {worst:.2e}", specs.len() * round_trip_grid().len())
            } else {
                failures.join("; ")
            },
        )
    })
}

/// The existence conditions stated directly: objective iff at most
/// countable and 1/2 excluded; strong iff moreover finite.
fn objectivity_predicate(kind: Cardinality, contains_half: bool) -> ObjectivityVerdict {
    let objective = kind != Cardinality::Uncountable && !contains_half;
    let strong = objective && kind == Cardinality::FiniteList;
    if strong {
        ObjectivityVerdict::StrongObjectiveExists
    } else if objective {
        ObjectivityVerdict::ObjectiveExistsNotStrong
    } else {
        ObjectivityVerdict::NoObjectiveEstimate
    }
}

pub fn criterion_coin_group() -> CriterionOutcome {
    timed(8, "coin group", Some(COIN_BUDGET), || {
        let mut ok = true;
        let mut parts = Vec::new();

        match prevalence_monte_carlo(0.02, 10_000, 10_000, 3) {
            Ok(p) => {
                ok &= p >= PREVALENCE_MIN;
                parts.push(format!("prevalence {p:.4}"));
            }
            Err(e) => {
                ok = false;
                parts.push(e.to_string());
            }
        }

        let mut worst = 0.0f64;
        let mut cesaro_ok = true;
        for theta in [0.1, 0.3, 0.5, 0.7, 0.9] {
            for seed in 0..10u64 {
                let est = bernoulli_sample(theta, CESARO_N, seed).and_then(|s| cesaro_estimate(&s, 0.05, CESARO_TOL));
                match est {
                    Ok(v) => {
                        let e = (v - theta).abs();
                        worst = worst.max(e);
                        cesaro_ok &= e <= CESARO_TOL;
                    }
                    Err(_) => cesaro_ok = false,
                }
            }
        }
        ok &= cesaro_ok;
        parts.push(format!("cesaro worst {worst:.4}"));

        let fixtures = [
            (ParameterSetDescriptor::finite(vec![0.3, 0.7]), ObjectivityVerdict::StrongObjectiveExists),
            (
                Ok(ParameterSetDescriptor::countably_infinite(false)),
                ObjectivityVerdict::ObjectiveExistsNotStrong,
            ),
            (ParameterSetDescriptor::finite(vec![0.5, 0.9]), ObjectivityVerdict::NoObjectiveEstimate),
        ];
        let mut classified = 0;
        for (desc, want) in fixtures {
            if desc.is_ok_and(|d| classify_objectivity(&d) == want) {
                classified += 1;
            }
        }
        let rng = CounterRng::new(78);
        let mut draws = rng.uniforms(0);
        let mut next = || draws.next().expect("endless stream");
        for _ in 0..20 {
            let len = 2 + (next() * 6.0) as usize;
            let mut elems: Vec<f64> = Vec::with_capacity(len);
            while elems.len() < len {
                // Half the draws come from the quarter grid so 1/2 shows up often.
                let e = if next() < 0.5 {
                    (1 + (next() * 3.0) as usize) as f64 / 4.0
                } else {
                    next().max(1e-3)
                };
                if !elems.contains(&e) {
                    elems.push(e);
                }
            }
            let contains_half = elems.contains(&0.5);
            if let Ok(d) = ParameterSetDescriptor::finite(elems) {
                if classify_objectivity(&d) == objectivity_predicate(Cardinality::FiniteList, contains_half) {
                    classified += 1;
                }
            }
        }
        ok &= classified == 23;
        parts.push(format!("classifier {classified}/23"));
        (ok, parts.join(", "))
    })
}

/// `T̃_n` by recounting the prefix for every `n`.
fn naive_trace(w: &[f64], x_star: f64) -> Vec<f64> {
    (1..=w.len())
        .map(|n| w[..n].iter().filter(|&&x| x <= x_star).count() as f64 / n as f64)
        .collect()
}

/// `depth`-bit integer read left to right, divided by `2^depth`.
fn shadow_oracle(w: &[f64], depth: usize) -> f64 {
    let mut acc: u64 = 0;
    for &x in &w[..depth] {
        acc = (acc << 1) | (x > 0.0) as u64;
    }
    acc as f64 / (1u64 << depth) as f64
}

pub fn criterion_oracles() -> CriterionOutcome {
    timed(9, "brute-force oracles", None, || {
        let rng = CounterRng::new(9);
        let mut draws = rng.uniforms(0);
        let mut next = || draws.next().expect("endless stream");
        let mut mismatches = Vec::new();
        for case in 0..ORACLE_WINDOWS {
            let len = 1 + (next() * 20.0) as usize;
            // Small integers make ties with the probe common.
            let w: Vec<f64> = (0..len).map(|_| (next() * 7.0).floor() - 3.0).collect();
            let x_star = (next() * 5.0).floor() - 2.0;
            let naive = naive_trace(&w, x_star);
            let incremental = match estimators::trace(&w, x_star) {
                Ok(t) => t,
                Err(e) => {
                    mismatches.push(format!("case {case}: {e}"));
                    continue;
                }
            };
            if incremental.values() != naive.as_slice() {
                mismatches.push(format!("case {case}: trace"));
            }
            for n0 in 1..=len {
                let tail = &naive[n0 - 1..];
                let mut sup = f64::NEG_INFINITY;
                let mut inf = f64::INFINITY;
                for &v in tail {
                    if v > sup {
                        sup = v;
                    }
                    if v < inf {
                        inf = v;
                    }
                }
                match estimators::tail_extrema(&incremental, n0) {
                    Ok(e) if e.sup == sup && e.inf == inf => {}
                    _ => mismatches.push(format!("case {case}: extrema at n0={n0}")),
                }
            }
            for depth in 0..=len {
                match estimators::binary_shadow(&w, depth) {
                    Ok(v) if v == shadow_oracle(&w, depth) => {}
                    _ => mismatches.push(format!("case {case}: shadow at depth {depth}")),
                }
            }
        }
        (
            mismatches.is_empty(),
            if mismatches.is_empty() {
                format!("{ORACLE_WINDOWS} windows agree exactly")
            } else {
                mismatches.join("; ")
            },
        )
    })
}

pub fn criterion_determinism() -> CriterionOutcome {
    timed(10, "determinism", None, || {
        let mut configs: Vec<ExperimentConfig> = TableId::ALL.iter().map(|&t| tables::builtin_config(t)).collect();
        configs.push(ExperimentConfig {
            caption: "all estimators, pseudo-random".into(),
            n_grid: vec![5, 50, 500],
            estimators: EstimatorId::ALL.to_vec(),
            generator: super::SampleGenerator::Pseudo { seed: 5 },
            ..ExperimentConfig::default()
        });
        let pool = match rayon::ThreadPoolBuilder::new().num_threads(4).build() {
            Ok(p) => p,
            Err(e) => return (false, e.to_string()),
        };
        let mut ok = true;
        let mut bytes = 0;
        for cfg in &configs {
            let emit = |r: crate::Result<super::ReportTable>| r.map(|t| emit_report(&t, OutputFormat::Csv));
            let runs = [
                emit(run_experiment(cfg)),
                emit(run_experiment(cfg)),
                emit(pool.install(|| run_experiment(cfg))),
                emit(run_experiment_sequential(cfg)),
            ];
            match &runs[0] {
                Ok(first) => {
                    bytes += first.len();
                    ok &= runs.iter().all(|r| r.as_ref().is_ok_and(|s| s == first));
                }
                Err(_) => ok = false,
            }
        }
        (
            ok,
            format!("{} configs x 4 runs (2 default, 4-thread pool, sequential), {bytes} bytes each pass", configs.len()),
        )
    })
}

/// Every criterion, in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    vec![
        criterion_table1(),
        criterion_table2(),
        criterion_table3(),
        criterion_consistency(),
        criterion_heavy_tail(),
        criterion_kernel(),
        criterion_round_trip(),
        criterion_coin_group(),
        criterion_oracles(),
        criterion_determinism(),
    ]
}
