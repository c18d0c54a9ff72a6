//! Standard-deviation estimators on a Gaussian with mean 3 and σ = 5.

use equistat::density::{
    sample_sd, sigma_kernel_estimate, sigma_mean_signcount_estimate, sigma_signcount_estimate, BandwidthSchedule,
    SigmaEstimateConfig,
};
use equistat::distributions::sample_via_weyl;
use equistat::estimators::default_n0;
use equistat::harness::{emit_report, reproduce_table, OutputFormat, TableId};
use equistat::{DistributionSpec, IrrationalId};

fn main() -> equistat::Result<()> {
    let report = reproduce_table(TableId::Table3);
    print!("{}", emit_report(&report, OutputFormat::Markdown).split("\n### Metadata").next().unwrap());

    let n = 100_000;
    let w = sample_via_weyl(&DistributionSpec::gaussian(3.0, 5.0)?, n, IrrationalId::Pi, 128)?;
    let cfg = SigmaEstimateConfig::new(3.0, 1.0, default_n0(n))?;
    println!("\nN = {n}, tail from n0 = {}:", cfg.n0);
    println!("  sample sd          {:.5}", sample_sd(w.values(), false)?);
    println!("  kernel             {:.5}", sigma_kernel_estimate(w.values(), &cfg, &BandwidthSchedule::default())?);
    println!("  sign count, a = 3  {:.5}", sigma_signcount_estimate(w.values(), &cfg)?);
    println!("  sign count, mean   {:.5}", sigma_mean_signcount_estimate(w.values(), &cfg)?);
    Ok(())
}
