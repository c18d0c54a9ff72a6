//! Gaussian-kernel density estimates against the true density.

use equistat::density::{kernel_density_at, kernel_density_grid, BandwidthSchedule};
use equistat::distributions::sample_via_weyl;
use equistat::{normal, DistributionKind, DistributionSpec, IrrationalId};

fn main() -> equistat::Result<()> {
    let spec = DistributionSpec::standard(DistributionKind::Gaussian);
    let schedule = BandwidthSchedule::default();
    let grid: Vec<f64> = (0..=16).map(|i| -4.0 + 0.5 * i as f64).collect();

    for n in [100, 1_000, 10_000, 100_000] {
        let w = sample_via_weyl(&spec, n, IrrationalId::Pi, 128)?;
        let f = kernel_density_grid(w.values(), &grid, &schedule)?;
        let sup = grid
            .iter()
            .zip(&f)
            .map(|(&x, &fx)| (fx - normal::pdf(x)).abs())
            .fold(0.0, f64::max);
        println!(
            "n = {n:>6}, a_n = {:.4}: f_n(0) = {:.5}, sup error {sup:.5}",
            schedule.bandwidth(n),
            kernel_density_at(w.values(), 0.0, &schedule)?
        );
    }
    println!("phi(0) = {:.5}", normal::pdf(0.0));

    let wide = BandwidthSchedule::power_law(0.1, 2.0)?;
    let w = sample_via_weyl(&spec, 10_000, IrrationalId::Pi, 128)?;
    println!("oversmoothed (2 n^-0.1) f_n(0) = {:.5}", kernel_density_at(w.values(), 0.0, &wide)?);
    Ok(())
}
