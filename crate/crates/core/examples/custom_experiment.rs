//! Building an experiment from `key = value` text and running every estimator.

use equistat::harness::{emit_report, run_experiment, ConfigOverrides, OutputFormat};

const CONFIG: &str = "
# Shifted Cauchy noise sampled along the golden-ratio sequence.
dist = cauchy
loc = 0
scale = 0.5
theta = 0.25
probe = 0
n-grid = 250:1000:250
estimators = sign_count,mean,cdf_point,limsup,liminf,strong_fractional,binary_shadow
alpha = phi
precision-bits = 96
";

fn main() -> equistat::Result<()> {
    let cfg = ConfigOverrides::parse_text(CONFIG)?.resolve()?;
    let report = run_experiment(&cfg)?;
    print!("{}", emit_report(&report, OutputFormat::Csv));
    Ok(())
}
