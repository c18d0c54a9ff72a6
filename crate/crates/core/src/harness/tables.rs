//! Built-in reproductions of the three published tables, and the published
//! values they are checked against.
//!
//! ## Published table discrepancies
//!
//! In the standard-deviation table the two sign-count columns are printed in
//! swapped positions relative to their labels: the column labelled as the
//! known-mean estimator `-a/Φ⁻¹(u_n)` holds `-x̄_n/Φ⁻¹(u_n)` and vice versa.
//! The built-in config therefore orders its columns as `sd, sd_corrected,
//! sigma_mean_signcount_n, sigma_signcount_n`, which lines up with the
//! printed positions while keeping each column's name faithful to its
//! formula. Five printed cells do not match any evaluation of their formula
//! on the shared sample (the `n = 400` sample deviations repeat the `n = 200`
//! row, and three `-x̄_n/Φ⁻¹(u_n)` cells disagree in the second decimal).
//! Those cells are pinned to values recomputed with 40-digit arithmetic; see
//! [`PublishedCell::expected`].

use std::fmt;
use std::str::FromStr;

use super::config::{EstimatorId, ExperimentConfig};
use super::report::ReportTable;
use super::run_experiment;
use crate::distributions::{DistributionKind, DistributionSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableId {
    /// Useful signal `θ = 1`, standard Gaussian noise.
    Table1,
    /// Useful signal `θ = 1`, standard Cauchy noise.
    Table2,
    /// Standard deviation `σ = 5` of a Gaussian with mean 3.
    Table3,
}

impl TableId {
    pub const ALL: [TableId; 3] = [TableId::Table1, TableId::Table2, TableId::Table3];

    pub fn number(self) -> u8 {
        match self {
            TableId::Table1 => 1,
            TableId::Table2 => 2,
            TableId::Table3 => 3,
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().trim_start_matches("table").trim() {
            "1" => Ok(TableId::Table1),
            "2" => Ok(TableId::Table2),
            "3" => Ok(TableId::Table3),
            other => Err(Error::config("table", format!("`{other}`: expected 1, 2 or 3"))),
        }
    }
}

pub fn builtin_config(which: TableId) -> ExperimentConfig {
    let signal = |kind, caption: &str| ExperimentConfig {
        caption: caption.into(),
        noise: DistributionSpec::standard(kind),
        theta: 1.0,
        n_grid: (50..=1000).step_by(50).collect(),
        estimators: vec![EstimatorId::SignCount, EstimatorId::Mean],
        ..ExperimentConfig::default()
    };
    match which {
        TableId::Table1 => signal(
            DistributionKind::Gaussian,
            "Table 1: estimates of the useful signal theta = 1 under standard Gaussian noise",
        ),
        TableId::Table2 => signal(
            DistributionKind::Cauchy,
            "Table 2: estimates of the useful signal theta = 1 under standard Cauchy noise",
        ),
        TableId::Table3 => ExperimentConfig {
            caption: "Table 3: estimates of the standard deviation sigma = 5 (mean a = 3)".into(),
            noise: DistributionSpec::gaussian(0.0, 5.0).expect("valid scale"),
            theta: 3.0,
            n_grid: (200..=2000).step_by(200).collect(),
            estimators: vec![
                EstimatorId::Sd,
                EstimatorId::SdCorrected,
                EstimatorId::SigmaMeanSignCountAt,
                EstimatorId::SigmaSignCountAt,
            ],
            fallback_sigma: 1.0,
            ..ExperimentConfig::default()
        },
    }
}

/// Runs the built-in config for `which`.
pub fn reproduce_table(which: TableId) -> ReportTable {
    run_experiment(&builtin_config(which)).expect("built-in configs are valid")
}

/// One printed table cell and the value a correct run must produce.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PublishedCell {
    pub table: TableId,
    pub n: usize,
    /// Report column name.
    pub column: &'static str,
    pub published: f64,
    /// Equal to `published` unless the printed cell is a transcription error.
    pub expected: f64,
    pub tolerance: f64,
}

impl PublishedCell {
    pub fn is_corrected(&self) -> bool {
        self.published != self.expected
    }
}

const TABLE1: [(usize, f64, f64); 20] = [
    (50, 0.994457883, 1.146952654),
    (100, 1.036433389, 1.010190601),
    (150, 1.022241387, 1.064790041),
    (200, 1.036433389, 1.037987511),
    (250, 1.027893346, 1.045296447),
    (300, 1.036433389, 1.044049728),
    (350, 1.030325691, 1.034339407),
    (400, 1.036433389, 1.045181911),
    (450, 1.031679632, 1.023083495),
    (500, 1.036433389, 1.044635371),
    (550, 1.04034032, 1.034899747),
    (600, 1.036433389, 1.043940988),
    (650, 1.03313984, 1.036321771),
    (700, 1.030325691, 1.037905202),
    (750, 1.033578332, 1.03728633),
    (800, 1.03108705, 1.032630945),
    (850, 1.033913784, 1.037321098),
    (900, 1.031679632, 1.026202323),
    (950, 1.034178696, 1.036669278),
    (1000, 1.036433389, 1.031131694),
];

const TABLE2: [(usize, f64, f64); 20] = [
    (50, 1.20879235, 2.555449288),
    (100, 0.939062506, 1.331789564),
    (150, 1.06489184, 71.87525566),
    (200, 1.00000000, 54.09578271),
    (250, 1.06489184, 64.59240343),
    (300, 1.021166379, 54.03265563),
    (350, 1.027297114, 56.39846672),
    (400, 1.031919949, 49.58316089),
    (450, 1.0070058, 44.00842613),
    (500, 1.038428014, 45.14322051),
    (550, 1.017284476, 41.08688757),
    (600, 1.042790358, 41.30221291),
    (650, 1.014605804, 38.1800532),
    (700, 1.027297114, 38.03399768),
    (750, 1.012645994, 35.57956117),
    (800, 1.015832638, 35.25149408),
    (850, 1.018652839, 33.28723503),
    (900, 1.0070058, 31.4036155),
    (950, 1.023420701, 31.27321466),
    (1000, 1.012645994, 29.73405416),
];

/// `(n, S_n, S'_n, -x̄_n/Φ⁻¹(u_n), -a/Φ⁻¹(u_n))` in printed column order.
const TABLE3: [(usize, f64, f64, f64, f64); 10] = [
    (200, 4.992413159, 5.004941192, 5.205401325, 4.895457577),
    (400, 4.992413159, 5.004941192, 5.141812921, 4.835655399),
    (600, 5.10523925, 5.109498942, 5.211046737, 4.855457413),
    (800, 5.106390271, 5.109584761, 5.19369988, 4.92581015),
    (1000, 5.066642282, 5.069177505, 5.028142523, 4.944169095),
    (1200, 5.072294934, 5.074409712, 5.235885276, 4.935995814),
    (1400, 5.081110418, 5.082926073, 5.249446371, 4.96528786),
    (1600, 5.079219075, 5.080807075, 5.205452797, 4.9564705),
    (1800, 5.060850283, 5.06225666, 5.207913228, 4.963326232),
    (2000, 5.063112113, 5.064378366, 5.239119585, 4.981223889),
];

/// 40-digit recomputations replacing the printed transcription errors.
const TABLE3_CORRECTIONS: [(usize, &str, f64); 5] = [
    (400, "sd", 5.07062604204829),
    (400, "sd_corrected", 5.07697623369383),
    (400, "sigma_mean_signcount_n", 5.19979565203758),
    (1000, "sigma_mean_signcount_n", 5.2007030281941),
    (1600, "sigma_mean_signcount_n", 5.21615892179547),
];

pub const SIGNAL_TOLERANCE: f64 = 1e-4;
/// Sample means of Cauchy windows amplify the quantile error near `u = 0, 1`.
pub const CAUCHY_MEAN_TOLERANCE: f64 = 0.1;
pub const SIGMA_TOLERANCE: f64 = 1e-4;

/// Every printed cell of `which`, with its acceptance value and tolerance.
pub fn published_cells(which: TableId) -> Vec<PublishedCell> {
    let cell = |n, column, published, tolerance| PublishedCell {
        table: which,
        n,
        column,
        published,
        expected: published,
        tolerance,
    };
    match which {
        TableId::Table1 => TABLE1
            .iter()
            .flat_map(|&(n, t, m)| {
                [
                    cell(n, "sign_count", t, SIGNAL_TOLERANCE),
                    cell(n, "mean", m, SIGNAL_TOLERANCE),
                ]
            })
            .collect(),
        TableId::Table2 => TABLE2
            .iter()
            .flat_map(|&(n, t, m)| {
                [
                    cell(n, "sign_count", t, SIGNAL_TOLERANCE),
                    cell(n, "mean", m, CAUCHY_MEAN_TOLERANCE),
                ]
            })
            .collect(),
        TableId::Table3 => TABLE3
            .iter()
            .flat_map(|&(n, s, s1, t_mean, t_known)| {
                [
                    cell(n, "sd", s, SIGMA_TOLERANCE),
                    cell(n, "sd_corrected", s1, SIGMA_TOLERANCE),
                    cell(n, "sigma_mean_signcount_n", t_mean, SIGMA_TOLERANCE),
                    cell(n, "sigma_signcount_n", t_known, SIGMA_TOLERANCE),
                ]
            })
            .map(|mut c| {
                if let Some(&(_, _, v)) = TABLE3_CORRECTIONS
                    .iter()
                    .find(|&&(n, col, _)| n == c.n && col == c.column)
                {
                    c.expected = v;
                }
                c
            })
            .collect(),
    }
}

/// A fixture comparison result.
#[derive(Debug, Clone, PartialEq)]
pub struct CellCheck {
    pub cell: PublishedCell,
    /// `None` when the report holds an error marker or lacks the cell.
    pub actual: Option<f64>,
}

impl CellCheck {
    pub fn passed(&self) -> bool {
        self.actual
            .is_some_and(|a| (a - self.cell.expected).abs() <= self.cell.tolerance)
    }
}

/// Compares a report against the fixtures of `which`.
pub fn check_against_published(which: TableId, report: &ReportTable) -> Vec<CellCheck> {
    published_cells(which)
        .into_iter()
        .map(|cell| CellCheck {
            actual: report.cell(cell.n, cell.column).and_then(|c| c.value()),
            cell,
        })
        .collect()
}
