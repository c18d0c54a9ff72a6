//! Under Cauchy noise the sign-count estimator settles while the mean does not.

use equistat::distributions::sample_via_weyl;
use equistat::estimators::{running_means, sign_count_estimate};
use equistat::{DistributionKind, DistributionSpec, IrrationalId};

fn main() -> equistat::Result<()> {
    let noise = DistributionSpec::standard(DistributionKind::Cauchy);
    let theta = 1.0;
    let w = sample_via_weyl(&noise.shifted(theta)?, 100_000, IrrationalId::Pi, 128)?;
    let means = running_means(w.values());

    println!("{:>7}  {:>10}  {:>12}", "n", "sign_count", "mean");
    for n in [100, 1_000, 10_000, 100_000] {
        let t = sign_count_estimate(&w.values()[..n], &noise)?;
        println!("{n:>7}  {t:>10.6}  {:>12.4}", means[n - 1]);
    }
    let largest = w.values().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    println!("largest observation: {largest:.3e}");
    Ok(())
}
