//! The strong estimator with values in [0, 1]: fractional Cesàro limit or binary shadow.

use equistat::distributions::sample_via_weyl;
use equistat::estimators::{binary_shadow, default_shadow_depth, strong_fractional_estimate};
use equistat::{DistributionSpec, IrrationalId};

fn main() -> equistat::Result<()> {
    let tol = 1e-2;
    for mean in [0.3, 3.7, -1.25, 1.0] {
        let w = sample_via_weyl(&DistributionSpec::gaussian(mean, 1.0)?, 50_000, IrrationalId::Sqrt2, 128)?;
        let est = strong_fractional_estimate(w.values(), tol, default_shadow_depth(w.len()))?;
        println!("Gaussian mean {mean:>5}: estimate {est:.4}");
    }

    let alternating: Vec<f64> = (1..=40).map(|k| (-2f64).powi(k)).collect();
    println!(
        "(-2)^k, k = 1..40: estimate {:.8}, shadow {:.8}",
        strong_fractional_estimate(&alternating, tol, 10)?,
        binary_shadow(&alternating, 10)?
    );
    Ok(())
}
