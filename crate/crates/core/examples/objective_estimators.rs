//! Tail limits of the running CDF estimate, with a fallback outside Θ ∖ {θ0}.

use equistat::distributions::sample_via_weyl;
use equistat::estimators::{default_n0, objective_cdf_estimate, tail_extrema, trace, LimitKind};
use equistat::{normal, DistributionSpec, IrrationalId};

fn main() -> equistat::Result<()> {
    let n = 10_000;
    let w = sample_via_weyl(&DistributionSpec::gaussian(1.0, 1.0)?, n, IrrationalId::Pi, 128)?;
    let t = trace(w.values(), 0.0)?;
    println!("target F(0) = Phi(-1) = {:.6}", normal::cdf(-1.0));
    for n0 in [10, 100, 1_000, default_n0(n)] {
        let e = tail_extrema(&t, n0)?;
        println!("n0 = {n0:>5}: sup {:.6}, inf {:.6}", e.sup, e.inf);
    }

    let theta0 = 0.9;
    let unit = |v: f64| (0.0..=1.0).contains(&v);
    let below_tenth = |v: f64| v < 0.1;
    for (label, which) in [("upper", LimitKind::UpperLimit), ("lower", LimitKind::LowerLimit)] {
        let inside = objective_cdf_estimate(w.values(), 0.0, unit, theta0, default_n0(n), which)?;
        let outside = objective_cdf_estimate(w.values(), 0.0, below_tenth, theta0, default_n0(n), which)?;
        println!("{label}: Θ = [0, 1] -> {inside:.6}; Θ = [0, 0.1) -> {outside}");
    }
    Ok(())
}
