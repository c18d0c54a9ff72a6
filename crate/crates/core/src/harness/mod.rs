//! Experiment runner: one deterministic sample window, every selected
//! estimator on each prefix length of the n-grid, and a report of the values.

pub mod acceptance;
pub mod config;
pub mod report;
pub mod tables;

use rayon::prelude::*;

use crate::density::{self, SigmaEstimateConfig};
use crate::distributions::{sample_pseudo, sample_via_weyl, SampleWindow};
use crate::error::Result;
use crate::estimators::{self, LimitKind};

pub use config::{
    ConfigOverrides, EstimatorId, ExperimentConfig, N0Rule, OutputFormat, OutputSpec, SampleGenerator,
};
pub use report::{emit_report, Cell, ReportRow, ReportTable};
pub use tables::{reproduce_table, TableId};

/// Builds the single window of length `max(n_grid)` that every row reads from.
pub fn build_window(cfg: &ExperimentConfig) -> Result<SampleWindow> {
    let spec = cfg.sample_spec()?;
    match cfg.generator {
        SampleGenerator::Weyl {
            alpha,
            precision_bits,
        } => sample_via_weyl(&spec, cfg.max_n(), alpha, precision_bits),
        SampleGenerator::Pseudo { seed } => sample_pseudo(&spec, cfg.max_n(), seed),
    }
}

/// Value of one estimator on a prefix.
pub fn evaluate(cfg: &ExperimentConfig, id: EstimatorId, prefix: &[f64]) -> Result<f64> {
    let n = prefix.len();
    let n0 = cfg.n0_rule.for_len(n);
    let sigma_cfg = || SigmaEstimateConfig::new(cfg.known_mean(), cfg.fallback_sigma, n0);
    let in_unit = |v: f64| (0.0..=1.0).contains(&v);
    match id {
        EstimatorId::SignCount => estimators::sign_count_estimate(prefix, &cfg.noise),
        EstimatorId::Mean => estimators::sample_mean(prefix),
        EstimatorId::CdfPoint => estimators::cdf_point_estimate(prefix, cfg.probe),
        EstimatorId::UpperLimit => estimators::objective_cdf_estimate(
            prefix,
            cfg.probe,
            in_unit,
            cfg.fallback_theta,
            n0,
            LimitKind::UpperLimit,
        ),
        EstimatorId::LowerLimit => estimators::objective_cdf_estimate(
            prefix,
            cfg.probe,
            in_unit,
            cfg.fallback_theta,
            n0,
            LimitKind::LowerLimit,
        ),
        EstimatorId::StrongFractional => estimators::strong_fractional_estimate(
            prefix,
            cfg.convergence_tol,
            estimators::default_shadow_depth(n),
        ),
        EstimatorId::BinaryShadow => estimators::binary_shadow(prefix, estimators::default_shadow_depth(n)),
        EstimatorId::Sd => density::sample_sd(prefix, false),
        EstimatorId::SdCorrected => density::sample_sd(prefix, true),
        EstimatorId::SigmaKernel => density::sigma_kernel_estimate(prefix, &sigma_cfg()?, &cfg.bandwidth),
        EstimatorId::SigmaSignCountAt => density::sigma_signcount_at(prefix, cfg.known_mean()),
        EstimatorId::SigmaMeanSignCountAt => density::sigma_mean_signcount_at(prefix),
        EstimatorId::SigmaSignCount => density::sigma_signcount_estimate(prefix, &sigma_cfg()?),
        EstimatorId::SigmaMeanSignCount => density::sigma_mean_signcount_estimate(prefix, &sigma_cfg()?),
    }
}

fn row(cfg: &ExperimentConfig, window: &SampleWindow, n: usize) -> ReportRow {
    let cells = match window.prefix(n) {
        Ok(prefix) => cfg
            .estimators
            .iter()
            .map(|&id| Cell::from(evaluate(cfg, id, prefix)))
            .collect(),
        Err(e) => vec![Cell::Error(e.to_string()); cfg.estimators.len()],
    };
    ReportRow { n, cells }
}

fn assemble(cfg: &ExperimentConfig, rows: Vec<ReportRow>) -> ReportTable {
    ReportTable {
        caption: cfg.caption.clone(),
        columns: cfg.estimators.iter().map(|e| e.name().to_string()).collect(),
        rows,
        metadata: report::metadata(cfg),
    }
}

/// Evaluates every row, concurrently over rows; output order follows `n_grid`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ReportTable> {
    cfg.validate()?;
    let window = build_window(cfg)?;
    let rows = cfg.n_grid.par_iter().map(|&n| row(cfg, &window, n)).collect();
    Ok(assemble(cfg, rows))
}

/// [`run_experiment`] on the calling thread only.
pub fn run_experiment_sequential(cfg: &ExperimentConfig) -> Result<ReportTable> {
    cfg.validate()?;
    let window = build_window(cfg)?;
    let rows = cfg.n_grid.iter().map(|&n| row(cfg, &window, n)).collect();
    Ok(assemble(cfg, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::DistributionSpec;
    use crate::Error;

    #[test]
    fn all_positive_prefix_gives_error_cell() {
        let cfg = ExperimentConfig {
            noise: DistributionSpec::gaussian(0.0, 0.01).unwrap(),
            theta: 5.0,
            n_grid: vec![10],
            estimators: vec![EstimatorId::SignCount, EstimatorId::Mean],
            ..ExperimentConfig::default()
        };
        let report = run_experiment(&cfg).unwrap();
        assert!(matches!(report.rows[0].cells[0], Cell::Error(_)));
        assert!(matches!(report.rows[0].cells[1], Cell::Value(v) if (v - 5.0).abs() < 0.01));
    }

    #[test]
    fn invalid_config_is_rejected() {
        let cfg = ExperimentConfig {
            n_grid: vec![20, 10],
            ..ExperimentConfig::default()
        };
        assert!(matches!(run_experiment(&cfg), Err(Error::Config { field, .. }) if field == "n-grid"));
    }

    #[test]
    fn rows_match_direct_prefix_evaluation() {
        let cfg = ExperimentConfig {
            n_grid: vec![7, 40, 100],
            estimators: EstimatorId::ALL.to_vec(),
            theta: 3.0,
            noise: DistributionSpec::gaussian(0.0, 5.0).unwrap(),
            ..ExperimentConfig::default()
        };
        let report = run_experiment(&cfg).unwrap();
        let full = build_window(&cfg).unwrap();
        for r in &report.rows {
            for (j, &id) in cfg.estimators.iter().enumerate() {
                let direct = Cell::from(evaluate(&cfg, id, &full.values()[..r.n]));
                assert_eq!(r.cells[j], direct, "{id} at n = {}", r.n);
            }
        }
        assert_eq!(report, run_experiment_sequential(&cfg).unwrap());
    }
}
