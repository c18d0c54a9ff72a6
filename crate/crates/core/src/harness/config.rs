//! Experiment configuration and its `key = value` text form.
//!
//! The same keys are accepted in a config file, on the command line (as
//! `--key value`), and echoed as report metadata, so an emitted report's
//! header is itself a valid config file.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::density::BandwidthSchedule;
use crate::distributions::{DistributionKind, DistributionSpec};
use crate::error::{Error, Result};
use crate::weyl::{self, IrrationalId};

use super::tables::TableId;

/// Estimators a report column can hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EstimatorId {
    /// `-F⁻¹(#{x ≤ 0}/n)` with the noise CDF.
    SignCount,
    Mean,
    /// `#{x ≤ probe}/n`.
    CdfPoint,
    /// Tail supremum of the CDF-point trace, with fallback.
    UpperLimit,
    /// Tail infimum of the CDF-point trace, with fallback.
    LowerLimit,
    StrongFractional,
    BinaryShadow,
    Sd,
    SdCorrected,
    SigmaKernel,
    /// Per-n `-a / Φ⁻¹(u_n)`.
    SigmaSignCountAt,
    /// Per-n `-x̄_n / Φ⁻¹(u_n)`.
    SigmaMeanSignCountAt,
    SigmaSignCount,
    SigmaMeanSignCount,
}

impl EstimatorId {
    pub const ALL: [EstimatorId; 14] = [
        EstimatorId::SignCount,
        EstimatorId::Mean,
        EstimatorId::CdfPoint,
        EstimatorId::UpperLimit,
        EstimatorId::LowerLimit,
        EstimatorId::StrongFractional,
        EstimatorId::BinaryShadow,
        EstimatorId::Sd,
        EstimatorId::SdCorrected,
        EstimatorId::SigmaKernel,
        EstimatorId::SigmaSignCountAt,
        EstimatorId::SigmaMeanSignCountAt,
        EstimatorId::SigmaSignCount,
        EstimatorId::SigmaMeanSignCount,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EstimatorId::SignCount => "sign_count",
            EstimatorId::Mean => "mean",
            EstimatorId::CdfPoint => "cdf_point",
            EstimatorId::UpperLimit => "limsup",
            EstimatorId::LowerLimit => "liminf",
            EstimatorId::StrongFractional => "strong_fractional",
            EstimatorId::BinaryShadow => "binary_shadow",
            EstimatorId::Sd => "sd",
            EstimatorId::SdCorrected => "sd_corrected",
            EstimatorId::SigmaKernel => "sigma_kernel",
            EstimatorId::SigmaSignCountAt => "sigma_signcount_n",
            EstimatorId::SigmaMeanSignCountAt => "sigma_mean_signcount_n",
            EstimatorId::SigmaSignCount => "sigma_signcount",
            EstimatorId::SigmaMeanSignCount => "sigma_mean_signcount",
        }
    }
}

impl fmt::Display for EstimatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EstimatorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        EstimatorId::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| {
                let known: Vec<_> = EstimatorId::ALL.iter().map(|e| e.name()).collect();
                Error::config("estimators", format!("unknown estimator `{s}`; known: {}", known.join(", ")))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SampleGenerator {
    Weyl { alpha: IrrationalId, precision_bits: u32 },
    Pseudo { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum N0Rule {
    /// `⌈n/2⌉` for a row of size `n`.
    HalfN,
    Fixed(usize),
}

impl N0Rule {
    pub fn for_len(self, n: usize) -> usize {
        match self {
            N0Rule::HalfN => crate::estimators::default_n0(n),
            N0Rule::Fixed(k) => k,
        }
    }
}

impl fmt::Display for N0Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            N0Rule::HalfN => f.write_str("half"),
            N0Rule::Fixed(k) => write!(f, "{k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Markdown,
}

impl OutputFormat {
    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Markdown => "md",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OutputSpec {
    pub format: OutputFormat,
    /// `None` writes to standard output.
    pub path: Option<PathBuf>,
}

/// Everything needed to regenerate one report.
///
/// Observations are `x_k = θ + Δ_k` with `Δ_k` drawn from `noise`, so the
/// sampled distribution is `noise` shifted by `theta`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub caption: String,
    pub noise: DistributionSpec,
    pub theta: f64,
    pub probe: f64,
    pub n_grid: Vec<usize>,
    pub estimators: Vec<EstimatorId>,
    pub generator: SampleGenerator,
    pub n0_rule: N0Rule,
    pub output: OutputSpec,
    /// `θ0` for the limsup/liminf estimators and the Cesàro fallbacks.
    pub fallback_theta: f64,
    /// `σ0` for the σ-estimators.
    pub fallback_sigma: f64,
    pub convergence_tol: f64,
    pub bandwidth: BandwidthSchedule,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            caption: "custom experiment".into(),
            noise: DistributionSpec::standard(DistributionKind::Gaussian),
            theta: 1.0,
            probe: 0.0,
            n_grid: (50..=1000).step_by(50).collect(),
            estimators: vec![EstimatorId::SignCount, EstimatorId::Mean],
            generator: SampleGenerator::Weyl {
                alpha: IrrationalId::Pi,
                precision_bits: 128,
            },
            n0_rule: N0Rule::HalfN,
            output: OutputSpec::default(),
            fallback_theta: 0.5,
            fallback_sigma: 1.0,
            convergence_tol: 1e-2,
            bandwidth: BandwidthSchedule::default(),
        }
    }
}

impl ExperimentConfig {
    /// Distribution of the observations.
    pub fn sample_spec(&self) -> Result<DistributionSpec> {
        self.noise.shifted(self.theta)
    }

    /// Mean of a Gaussian observation model (`a` in the σ-estimators).
    pub fn known_mean(&self) -> f64 {
        self.noise.location() + self.theta
    }

    pub fn max_n(&self) -> usize {
        self.n_grid.iter().copied().max().unwrap_or(0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_grid.is_empty() {
            return Err(Error::config("n-grid", "empty"));
        }
        if self.n_grid[0] == 0 {
            return Err(Error::config("n-grid", "sizes must be >= 1"));
        }
        if self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::config("n-grid", "must be strictly ascending"));
        }
        if self.estimators.is_empty() {
            return Err(Error::config("estimators", "empty"));
        }
        if !self.theta.is_finite() {
            return Err(Error::config("theta", "must be finite"));
        }
        if !self.probe.is_finite() {
            return Err(Error::config("probe", "must be finite"));
        }
        self.sample_spec().map_err(|e| Error::config("loc", e.to_string()))?;
        if let N0Rule::Fixed(0) = self.n0_rule {
            return Err(Error::config("n0", "must be >= 1"));
        }
        if let SampleGenerator::Weyl { precision_bits, .. } = self.generator {
            let need = weyl::min_precision_bits(self.max_n() as u64);
            if precision_bits < need || precision_bits > weyl::TABLE_BITS {
                return Err(Error::config(
                    "precision-bits",
                    format!(
                        "{precision_bits} outside [{need}, {}] for n up to {}",
                        weyl::TABLE_BITS,
                        self.max_n()
                    ),
                ));
            }
        }
        if !(self.fallback_sigma > 0.0) {
            return Err(Error::config("fallback-sigma", "must be positive"));
        }
        if !(self.convergence_tol > 0.0) {
            return Err(Error::config("convergence-tol", "must be positive"));
        }
        Ok(())
    }

    /// The config as `key = value` pairs, in the text-config vocabulary.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        let mut pairs = vec![
            ("caption".to_string(), self.caption.clone()),
            ("dist".into(), self.noise.kind().name().into()),
            ("loc".into(), fmt_f64(self.noise.location())),
            ("scale".into(), fmt_f64(self.noise.scale())),
            ("theta".into(), fmt_f64(self.theta)),
            ("probe".into(), fmt_f64(self.probe)),
            ("n-grid".into(), fmt_grid(&self.n_grid)),
            (
                "estimators".into(),
                self.estimators.iter().map(|e| e.name()).collect::<Vec<_>>().join(","),
            ),
        ];
        match self.generator {
            SampleGenerator::Weyl {
                alpha,
                precision_bits,
            } => {
                pairs.push(("gen".into(), "weyl".into()));
                pairs.push(("alpha".into(), alpha.name().into()));
                pairs.push(("precision-bits".into(), precision_bits.to_string()));
            }
            SampleGenerator::Pseudo { seed } => {
                pairs.push(("gen".into(), "pseudo".into()));
                pairs.push(("seed".into(), seed.to_string()));
                pairs.push(("rng".into(), crate::rng::GENERATOR_NAME.into()));
            }
        }
        pairs.push(("n0".into(), self.n0_rule.to_string()));
        pairs.push(("fallback-theta".into(), fmt_f64(self.fallback_theta)));
        pairs.push(("fallback-sigma".into(), fmt_f64(self.fallback_sigma)));
        pairs.push(("convergence-tol".into(), fmt_f64(self.convergence_tol)));
        pairs.push((
            "bandwidth".into(),
            format!(
                "{}*n^-{}",
                fmt_f64(self.bandwidth.scale_factor()),
                fmt_f64(self.bandwidth.exponent())
            ),
        ));
        pairs
    }
}

fn fmt_f64(v: f64) -> String {
    // `{}` on f64 is the shortest round-tripping form.
    format!("{v}")
}

fn fmt_grid(grid: &[usize]) -> String {
    if grid.len() >= 3 {
        let step = grid[1] - grid[0];
        if grid.windows(2).all(|w| w[1] - w[0] == step) {
            return format!("{}:{}:{}", grid[0], grid[grid.len() - 1], step);
        }
    }
    grid.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
}

/// Parses `a:b:step`, a comma list, or a single size.
pub fn parse_grid(s: &str) -> Result<Vec<usize>> {
    let bad = |why: &str| Error::config("n-grid", format!("`{s}`: {why}"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad("not a positive integer"));
    let parts: Vec<&str> = s.split(':').collect();
    let grid = match parts.as_slice() {
        [a, b, step] => {
            let (a, b, step) = (num(a)?, num(b)?, num(step)?);
            if step == 0 || a == 0 || a > b {
                return Err(bad("need 1 <= a <= b and step >= 1"));
            }
            (a..=b).step_by(step).collect()
        }
        [list] => list.split(',').map(num).collect::<Result<Vec<_>>>()?,
        _ => return Err(bad("expected a:b:step or a comma list")),
    };
    Ok(grid)
}

/// Parses `scale*n^-exponent`.
pub fn parse_bandwidth(s: &str) -> Result<BandwidthSchedule> {
    let bad = || Error::config("bandwidth", format!("`{s}`: expected scale*n^-exponent"));
    let (scale, exp) = s.trim().split_once("*n^-").ok_or_else(bad)?;
    let scale: f64 = scale.trim().parse().map_err(|_| bad())?;
    let exp: f64 = exp.trim().parse().map_err(|_| bad())?;
    BandwidthSchedule::power_law(exp, scale).map_err(|e| Error::config("bandwidth", e.to_string()))
}

/// Optional settings collected from a config file and/or flags.
/// Later sources override earlier ones via [`ConfigOverrides::merge`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigOverrides {
    pub table: Option<String>,
    pub dist: Option<String>,
    pub loc: Option<String>,
    pub scale: Option<String>,
    pub theta: Option<String>,
    pub probe: Option<String>,
    pub n_grid: Option<String>,
    pub estimators: Option<String>,
    pub gen: Option<String>,
    pub alpha: Option<String>,
    pub precision_bits: Option<String>,
    pub seed: Option<String>,
    pub n0: Option<String>,
    pub format: Option<String>,
    pub out: Option<String>,
    /// The keys below have no flag and are read from config files only.
    pub caption: Option<String>,
    pub fallback_theta: Option<String>,
    pub fallback_sigma: Option<String>,
    pub convergence_tol: Option<String>,
    /// `scale*n^-exponent`.
    pub bandwidth: Option<String>,
}

impl ConfigOverrides {
    /// Sets one key. Keys are the long flag names without dashes prefix.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let slot = match key.trim() {
            "table" => &mut self.table,
            "dist" => &mut self.dist,
            "loc" => &mut self.loc,
            "scale" => &mut self.scale,
            "theta" => &mut self.theta,
            "probe" => &mut self.probe,
            "n-grid" | "n_grid" => &mut self.n_grid,
            "estimators" => &mut self.estimators,
            "gen" => &mut self.gen,
            "alpha" => &mut self.alpha,
            "precision-bits" | "precision_bits" => &mut self.precision_bits,
            "seed" => &mut self.seed,
            "n0" => &mut self.n0,
            "format" => &mut self.format,
            "out" => &mut self.out,
            "caption" => &mut self.caption,
            "fallback-theta" | "fallback_theta" => &mut self.fallback_theta,
            "fallback-sigma" | "fallback_sigma" => &mut self.fallback_sigma,
            "convergence-tol" | "convergence_tol" => &mut self.convergence_tol,
            "bandwidth" => &mut self.bandwidth,
            // Echoed report metadata that is not an input.
            "rng" | "version" => return Ok(()),
            other => return Err(Error::config(other, "unknown key")),
        };
        *slot = Some(value.trim().to_string());
        Ok(())
    }

    /// Parses `key = value` lines; blank lines and `#` comments are skipped.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut o = ConfigOverrides::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::config(format!("line {}", lineno + 1), format!("expected `key = value`, got `{line}`"))
            })?;
            o.set(k, v)?;
        }
        Ok(o)
    }

    /// `other`'s values win where present.
    pub fn merge(self, other: ConfigOverrides) -> ConfigOverrides {
        macro_rules! pick {
            ($($f:ident),*) => { ConfigOverrides { $($f: other.$f.or(self.$f)),* } };
        }
        pick!(
            table, dist, loc, scale, theta, probe, n_grid, estimators, gen, alpha, precision_bits, seed, n0,
            format, out, caption, fallback_theta, fallback_sigma, convergence_tol, bandwidth
        )
    }

    /// Builds a validated config: start from the selected table (or the
    /// default experiment), then apply each present key.
    pub fn resolve(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.table {
            Some(t) => super::tables::builtin_config(
                t.parse::<TableId>().map_err(|e| Error::config("table", e.to_string()))?,
            ),
            None => ExperimentConfig::default(),
        };
        let customised = [
            &self.dist, &self.loc, &self.scale, &self.theta, &self.probe, &self.n_grid,
            &self.estimators, &self.gen, &self.alpha, &self.precision_bits, &self.seed, &self.n0,
        ]
        .iter()
        .any(|o| o.is_some());
        if customised && self.table.is_some() {
            cfg.caption = format!("{} (modified)", cfg.caption);
        }
        if let Some(v) = &self.caption {
            cfg.caption = v.clone();
        }

        let real = |field: &str, v: &str| -> Result<f64> {
            let x: f64 = v.parse().map_err(|_| Error::config(field, format!("`{v}` is not a number")))?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(Error::config(field, "must be finite"))
            }
        };

        let mut kind = cfg.noise.kind();
        let mut loc = cfg.noise.location();
        let mut scale = cfg.noise.scale();
        if let Some(v) = &self.dist {
            kind = v.parse().map_err(|_| Error::config("dist", format!("`{v}`: expected gaussian or cauchy")))?;
        }
        if let Some(v) = &self.loc {
            loc = real("loc", v)?;
        }
        if let Some(v) = &self.scale {
            scale = real("scale", v)?;
        }
        cfg.noise = DistributionSpec::new(kind, loc, scale).map_err(|e| Error::config("scale", e.to_string()))?;
        if let Some(v) = &self.theta {
            cfg.theta = real("theta", v)?;
        }
        if let Some(v) = &self.probe {
            cfg.probe = real("probe", v)?;
        }
        if let Some(v) = &self.n_grid {
            cfg.n_grid = parse_grid(v)?;
        }
        if let Some(v) = &self.estimators {
            cfg.estimators = v
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(str::parse)
                .collect::<Result<Vec<_>>>()?;
        }

        let (mut alpha, mut bits) = match cfg.generator {
            SampleGenerator::Weyl { alpha, precision_bits } => (alpha, precision_bits),
            SampleGenerator::Pseudo { .. } => (IrrationalId::Pi, 128),
        };
        let mut seed = match cfg.generator {
            SampleGenerator::Pseudo { seed } => seed,
            SampleGenerator::Weyl { .. } => 0,
        };
        if let Some(v) = &self.alpha {
            alpha = v.parse().map_err(|_| Error::config("alpha", format!("`{v}`: expected pi, sqrt2 or phi")))?;
        }
        if let Some(v) = &self.precision_bits {
            bits = v.parse().map_err(|_| Error::config("precision-bits", format!("`{v}` is not an integer")))?;
        }
        if let Some(v) = &self.seed {
            seed = v.parse().map_err(|_| Error::config("seed", format!("`{v}` is not an integer")))?;
        }
        let use_pseudo = match self.gen.as_deref().map(str::trim) {
            Some("weyl") => false,
            Some("pseudo") => true,
            Some(other) => return Err(Error::config("gen", format!("`{other}`: expected weyl or pseudo"))),
            None => matches!(cfg.generator, SampleGenerator::Pseudo { .. }),
        };
        cfg.generator = if use_pseudo {
            SampleGenerator::Pseudo { seed }
        } else {
            SampleGenerator::Weyl {
                alpha,
                precision_bits: bits,
            }
        };

        if let Some(v) = &self.fallback_theta {
            cfg.fallback_theta = real("fallback-theta", v)?;
        }
        if let Some(v) = &self.fallback_sigma {
            cfg.fallback_sigma = real("fallback-sigma", v)?;
        }
        if let Some(v) = &self.convergence_tol {
            cfg.convergence_tol = real("convergence-tol", v)?;
        }
        if let Some(v) = &self.bandwidth {
            cfg.bandwidth = parse_bandwidth(v)?;
        }
        if let Some(v) = &self.n0 {
            cfg.n0_rule = match v.trim() {
                "half" => N0Rule::HalfN,
                k => N0Rule::Fixed(
                    k.parse()
                        .map_err(|_| Error::config("n0", format!("`{k}`: expected half or an integer")))?,
                ),
            };
        }
        if let Some(v) = &self.format {
            cfg.output.format = match v.trim() {
                "csv" => OutputFormat::Csv,
                "md" | "markdown" => OutputFormat::Markdown,
                other => return Err(Error::config("format", format!("`{other}`: expected csv or md"))),
            };
        }
        if let Some(v) = &self.out {
            cfg.output.path = Some(PathBuf::from(v));
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_forms() {
        assert_eq!(parse_grid("50:200:50").unwrap(), vec![50, 100, 150, 200]);
        assert_eq!(parse_grid("10").unwrap(), vec![10]);
        assert_eq!(parse_grid("3,5,9").unwrap(), vec![3, 5, 9]);
        assert!(parse_grid("5:1:1").is_err());
        assert!(parse_grid("1:5:0").is_err());
        assert!(parse_grid("x").is_err());
        assert_eq!(fmt_grid(&[50, 100, 150]), "50:150:50");
        assert_eq!(fmt_grid(&[10]), "10");
    }

    #[test]
    fn text_config_round_trips_through_metadata() {
        let text = "# comment\ndist = cauchy\ntheta = 2.5\nn-grid = 10:30:10\nestimators = sign_count,mean\nn0 = 4\n";
        let cfg = ConfigOverrides::parse_text(text).unwrap().resolve().unwrap();
        assert_eq!(cfg.noise.kind(), DistributionKind::Cauchy);
        assert_eq!(cfg.theta, 2.5);
        assert_eq!(cfg.n_grid, vec![10, 20, 30]);
        assert_eq!(cfg.n0_rule, N0Rule::Fixed(4));

        let echoed: String = cfg.to_pairs().iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
        let again = ConfigOverrides::parse_text(&echoed).unwrap().resolve().unwrap();
        assert_eq!(again.noise, cfg.noise);
        assert_eq!(again.n_grid, cfg.n_grid);
        assert_eq!(again.estimators, cfg.estimators);
        assert_eq!(again.generator, cfg.generator);
        assert_eq!(again, cfg);
    }

    #[test]
    fn file_only_keys() {
        let text = "fallback-sigma = 2\nconvergence-tol = 0.001\nbandwidth = 0.5*n^-0.25\ncaption = run A";
        let cfg = ConfigOverrides::parse_text(text).unwrap().resolve().unwrap();
        assert_eq!(cfg.fallback_sigma, 2.0);
        assert_eq!(cfg.convergence_tol, 0.001);
        assert_eq!(cfg.bandwidth, BandwidthSchedule::power_law(0.25, 0.5).unwrap());
        assert_eq!(cfg.caption, "run A");
        assert!(parse_bandwidth("n^-0.2").is_err());
        assert!(parse_bandwidth("1*n^-2").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = ConfigOverrides::parse_text("theta = 2\nformat = md").unwrap();
        let mut flags = ConfigOverrides::default();
        flags.set("theta", "3").unwrap();
        let cfg = file.merge(flags).resolve().unwrap();
        assert_eq!(cfg.theta, 3.0);
        assert_eq!(cfg.output.format, OutputFormat::Markdown);
    }

    #[test]
    fn config_errors_name_the_field() {
        let check = |k: &str, v: &str, field: &str| {
            let mut o = ConfigOverrides::default();
            o.set(k, v).unwrap();
            match o.resolve() {
                Err(Error::Config { field: f, .. }) => assert_eq!(f, field, "{k}={v}"),
                other => panic!("{k}={v}: {other:?}"),
            }
        };
        check("n-grid", "30,20", "n-grid");
        check("estimators", "nope", "estimators");
        check("scale", "-1", "scale");
        check("theta", "abc", "theta");
        check("gen", "dice", "gen");
        check("precision-bits", "64", "precision-bits");
        check("n0", "0", "n0");
        check("format", "xml", "format");
        check("table", "4", "table");
        assert!(matches!(
            ConfigOverrides::parse_text("bogus = 1"),
            Err(Error::Config { .. })
        ));
        assert!(ConfigOverrides::parse_text("no equals sign").is_err());
    }

    #[test]
    fn pseudo_generator_selection() {
        let mut o = ConfigOverrides::default();
        o.set("gen", "pseudo").unwrap();
        o.set("seed", "17").unwrap();
        assert_eq!(o.resolve().unwrap().generator, SampleGenerator::Pseudo { seed: 17 });
    }
}
