//! Deterministic and pseudo-random samples through a quantile function.

use equistat::distributions::{sample_pseudo, sample_via_weyl};
use equistat::estimators::{cdf_point_estimate, sample_mean};
use equistat::rng::{CounterRng, GENERATOR_NAME};
use equistat::{DistributionSpec, IrrationalId};

fn main() -> equistat::Result<()> {
    let spec = DistributionSpec::gaussian(1.0, 1.0)?;
    let weyl = sample_via_weyl(&spec, 10_000, IrrationalId::Pi, 128)?;
    let pseudo = sample_pseudo(&spec, 10_000, 42)?;

    println!("x_1..x_4 (weyl):   {:?}", &weyl.values()[..4]);
    println!("x_1..x_4 (pseudo): {:?}", &pseudo.values()[..4]);
    for (name, w) in [("weyl", &weyl), ("pseudo", &pseudo)] {
        println!(
            "{name:>6}: mean {:.5}, share <= 0 {:.5} (target {:.5})",
            sample_mean(w.values())?,
            cdf_point_estimate(w.values(), 0.0)?,
            spec.cdf(0.0)
        );
    }

    // Any draw of the counter-based generator is addressable directly.
    let rng = CounterRng::new(42);
    let tenth = rng.open_uniforms(0).nth(9).unwrap();
    println!("{GENERATOR_NAME}: word 9 of stream 0 = {:#018x}, uniform {tenth}", rng.word_at(0, 9));

    let cauchy = DistributionSpec::cauchy(0.0, 2.0)?;
    for u in [1e-9, 0.25, 0.5, 0.999] {
        let x = cauchy.quantile(u)?;
        println!("cauchy(0, 2): quantile({u}) = {x:.6e}, cdf back = {}", cauchy.cdf(x));
    }
    Ok(())
}
