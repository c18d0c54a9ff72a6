//! Coin tossing in {0,1}^N: Cesàro estimates, prevalence, and which parameter
//! sets admit objective estimates.

use equistat::coin::{
    bernoulli_sample, bits_to_unit, cesaro_estimate, classify_objectivity, prevalence_monte_carlo,
    ParameterSetDescriptor,
};

fn main() -> equistat::Result<()> {
    for theta in [0.1, 0.5, 0.9] {
        let s = bernoulli_sample(theta, 100_000, 7)?;
        println!(
            "theta {theta}: cesaro {:.4}, binary image {:.6}",
            cesaro_estimate(&s, 0.25, 1e-2)?,
            bits_to_unit(&s)
        );
    }

    for eps in [0.005, 0.01, 0.02] {
        println!("share of 10^4 Haar sequences (N = 10^4) with |m_N - 1/2| <= {eps}: {:.4}", prevalence_monte_carlo(eps, 10_000, 10_000, 3)?);
    }

    let sets = [
        ("{0.3, 0.7}", ParameterSetDescriptor::finite(vec![0.3, 0.7])?),
        ("{0.5, 0.9}", ParameterSetDescriptor::finite(vec![0.5, 0.9])?),
        ("countable, 1/2 excluded", ParameterSetDescriptor::countably_infinite(false)),
        ("countable, 1/2 included", ParameterSetDescriptor::countably_infinite(true)),
        ("uncountable", ParameterSetDescriptor::uncountable(false)),
    ];
    for (name, d) in &sets {
        println!("{name:>24}: {:?}", classify_objectivity(d));
    }
    Ok(())
}
