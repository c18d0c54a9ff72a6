//! Location-scale families with strictly increasing continuous CDFs, and
//! inverse-transform sampling of equidistributed sequences through them.
//!
//! If `(u_k)` is uniformly distributed on `(0, 1)` and `F` is a strictly
//! increasing continuous CDF, then `(F⁻¹(u_k))` is equidistributed with respect
//! to `F`. Feeding a Weyl sequence through [`DistributionSpec::quantile`] is
//! therefore a fully deterministic sampler.

use std::f64::consts::{FRAC_1_PI, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::normal;
use crate::rng::CounterRng;
use crate::weyl::{self, IrrationalId, WeylStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DistributionKind {
    Gaussian,
    Cauchy,
}

impl DistributionKind {
    pub fn name(self) -> &'static str {
        match self {
            DistributionKind::Gaussian => "gaussian",
            DistributionKind::Cauchy => "cauchy",
        }
    }
}

impl fmt::Display for DistributionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DistributionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gaussian" | "normal" => Ok(DistributionKind::Gaussian),
            "cauchy" => Ok(DistributionKind::Cauchy),
            other => Err(Error::Domain(format!("unknown distribution `{other}`"))),
        }
    }
}

/// A member of a location-scale family: `F((x - location) / scale)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionSpec {
    kind: DistributionKind,
    location: f64,
    scale: f64,
}

impl DistributionSpec {
    pub fn new(kind: DistributionKind, location: f64, scale: f64) -> Result<Self> {
        if !location.is_finite() {
            return Err(Error::Domain(format!("location {location} is not finite")));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::Domain(format!("scale {scale} must be positive and finite")));
        }
        Ok(DistributionSpec {
            kind,
            location,
            scale,
        })
    }

    /// The standard member (location 0, scale 1).
    pub fn standard(kind: DistributionKind) -> Self {
        DistributionSpec {
            kind,
            location: 0.0,
            scale: 1.0,
        }
    }

    pub fn gaussian(location: f64, scale: f64) -> Result<Self> {
        Self::new(DistributionKind::Gaussian, location, scale)
    }

    pub fn cauchy(location: f64, scale: f64) -> Result<Self> {
        Self::new(DistributionKind::Cauchy, location, scale)
    }

    pub fn kind(&self) -> DistributionKind {
        self.kind
    }

    pub fn location(&self) -> f64 {
        self.location
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// The same family shifted by `delta`.
    pub fn shifted(&self, delta: f64) -> Result<Self> {
        Self::new(self.kind, self.location + delta, self.scale)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let z = (x - self.location) / self.scale;
        match self.kind {
            DistributionKind::Gaussian => normal::cdf(z),
            DistributionKind::Cauchy => cauchy_cdf(z),
        }
    }

    /// `F⁻¹(u)` for `0 < u < 1`.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::Domain(format!(
                "quantile is only finite on (0, 1); got {u}"
            )));
        }
        let z = match self.kind {
            DistributionKind::Gaussian => normal::quantile(u),
            DistributionKind::Cauchy => cauchy_quantile(u),
        };
        Ok(self.location + self.scale * z)
    }

    pub fn density(&self, x: f64) -> f64 {
        let z = (x - self.location) / self.scale;
        let f = match self.kind {
            DistributionKind::Gaussian => normal::pdf(z),
            DistributionKind::Cauchy => FRAC_1_PI / (1.0 + z * z),
        };
        f / self.scale
    }
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(loc={}, scale={})", self.kind, self.location, self.scale)
    }
}

fn cauchy_cdf(z: f64) -> f64 {
    // atan(1/|z|)/π keeps relative accuracy far out in either tail.
    if z < -1.0 {
        (-1.0 / z).atan() * FRAC_1_PI
    } else if z > 1.0 {
        1.0 - (1.0 / z).atan() * FRAC_1_PI
    } else {
        0.5 + z.atan() * FRAC_1_PI
    }
}

fn cauchy_quantile(u: f64) -> f64 {
    // tan(π(u - 1/2)) written as a cotangent of the smaller tail mass.
    if u < 0.5 {
        -1.0 / (PI * u).tan()
    } else if u > 0.5 {
        1.0 / (PI * (1.0 - u)).tan()
    } else {
        0.0
    }
}

/// How a [`SampleWindow`] was produced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generator {
    /// `x_k = F⁻¹({k·α})`.
    WeylInverseCdf {
        alpha: IrrationalId,
        precision_bits: u32,
    },
    /// `x_k = F⁻¹(u_k)` with `u_k` from the counter-based generator.
    PseudoRandom { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Provenance {
    pub generator: Generator,
    pub source: DistributionSpec,
}

/// A finite prefix `x_1, ..., x_N` of a sample.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleWindow {
    values: Vec<f64>,
    provenance: Provenance,
}

impl SampleWindow {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The first `n` values.
    pub fn prefix(&self, n: usize) -> Result<&[f64]> {
        if n == 0 || n > self.values.len() {
            return Err(Error::Domain(format!(
                "prefix length {n} outside 1..={}",
                self.values.len()
            )));
        }
        Ok(&self.values[..n])
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

impl AsRef<[f64]> for SampleWindow {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// Deterministic sample `x_k = quantile(spec, {k·α})`, `k = 1..len`.
pub fn sample_via_weyl(
    spec: &DistributionSpec,
    len: usize,
    alpha: IrrationalId,
    precision_bits: u32,
) -> Result<SampleWindow> {
    if len == 0 {
        return Err(Error::Domain("sample length must be >= 1".into()));
    }
    // The last index carries the strictest precision requirement.
    weyl::weyl_term(len as u64, alpha, precision_bits)?;
    let values = WeylStream::new(alpha)
        .take(len)
        .map(|u| spec.quantile(u.get()))
        .collect::<Result<Vec<_>>>()?;
    Ok(SampleWindow {
        values,
        provenance: Provenance {
            generator: Generator::WeylInverseCdf {
                alpha,
                precision_bits,
            },
            source: *spec,
        },
    })
}

/// Pseudo-random sample through the counter-based generator (stream 0 of `seed`).
pub fn sample_pseudo(spec: &DistributionSpec, len: usize, seed: u64) -> Result<SampleWindow> {
    if len == 0 {
        return Err(Error::Domain("sample length must be >= 1".into()));
    }
    let values = CounterRng::new(seed)
        .open_uniforms(0)
        .take(len)
        .map(|u| spec.quantile(u))
        .collect::<Result<Vec<_>>>()?;
    Ok(SampleWindow {
        values,
        provenance: Provenance {
            generator: Generator::PseudoRandom { seed },
            source: *spec,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn std_gauss() -> DistributionSpec {
        DistributionSpec::standard(DistributionKind::Gaussian)
    }

    fn std_cauchy() -> DistributionSpec {
        DistributionSpec::standard(DistributionKind::Cauchy)
    }

    #[test]
    fn cauchy_closed_forms() {
        assert_eq!(std_cauchy().cdf(0.0), 0.5);
        assert!((std_cauchy().cdf(1.0) - 0.75).abs() < 1e-16);
        assert!((std_cauchy().quantile(0.75).unwrap() - 1.0).abs() < 1e-15);
        assert!((std_cauchy().density(0.0) - 1.0 / PI).abs() < 1e-17);
    }

    #[test]
    fn gaussian_values() {
        assert_eq!(std_gauss().quantile(0.5).unwrap(), 0.0);
        assert!((std_gauss().density(0.0) - 0.398_942_280_401_432_7).abs() < 1e-16);
        let d = DistributionSpec::gaussian(3.0, 5.0).unwrap().density(3.0);
        assert!((d - 1.0 / (5.0 * (2.0 * PI).sqrt())).abs() < 1e-16);
    }

    #[test]
    fn quantile_domain() {
        for u in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(matches!(std_gauss().quantile(u), Err(Error::Domain(_))));
            assert!(matches!(std_cauchy().quantile(u), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn spec_validation() {
        assert!(DistributionSpec::gaussian(0.0, 0.0).is_err());
        assert!(DistributionSpec::gaussian(0.0, -1.0).is_err());
        assert!(DistributionSpec::cauchy(f64::INFINITY, 1.0).is_err());
        assert_eq!("normal".parse::<DistributionKind>().unwrap(), DistributionKind::Gaussian);
    }

    #[test]
    fn location_scale_equivariance_is_exact() {
        let s = DistributionSpec::cauchy(-2.0, 3.5).unwrap();
        for u in [1e-6, 0.1, 0.5, 0.9, 1.0 - 1e-6] {
            let want = -2.0 + 3.5 * std_cauchy().quantile(u).unwrap();
            assert_eq!(s.quantile(u).unwrap(), want);
        }
    }

    #[test]
    fn weyl_sample_first_values() {
        let u1 = PI - 3.0;
        let g = sample_via_weyl(&DistributionSpec::gaussian(1.0, 1.0).unwrap(), 1, IrrationalId::Pi, 128)
            .unwrap();
        // Φ⁻¹(π − 3) from a 50-digit reference.
        assert!((g.values()[0] - (1.0 - 1.073_191_269_188_711_3)).abs() < 1e-12);
        let c = sample_via_weyl(&DistributionSpec::cauchy(1.0, 1.0).unwrap(), 1, IrrationalId::Pi, 128)
            .unwrap();
        let want = 1.0 + (PI * (u1 - 0.5)).tan();
        assert!((c.values()[0] - want).abs() < 1e-12);
        let s = DistributionSpec::gaussian(3.0, 5.0).unwrap();
        let w = sample_via_weyl(&s, 2, IrrationalId::Pi, 128).unwrap();
        let z1 = std_gauss().quantile(u1).unwrap();
        let z2 = std_gauss().quantile(2.0 * PI - 6.0).unwrap();
        assert!((w.values()[0] - (3.0 + 5.0 * z1)).abs() < 1e-13);
        assert!((w.values()[1] - (3.0 + 5.0 * z2)).abs() < 1e-13);
        assert_eq!(
            w.provenance().generator,
            Generator::WeylInverseCdf {
                alpha: IrrationalId::Pi,
                precision_bits: 128
            }
        );
    }

    #[test]
    fn pseudo_sample_is_seeded() {
        let s = std_gauss();
        let a = sample_pseudo(&s, 100, 9).unwrap();
        let b = sample_pseudo(&s, 100, 9).unwrap();
        let c = sample_pseudo(&s, 100, 10).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.values(), c.values());
    }

    #[test]
    fn window_prefix_bounds() {
        let w = sample_via_weyl(&std_gauss(), 5, IrrationalId::Pi, 128).unwrap();
        assert_eq!(w.prefix(3).unwrap().len(), 3);
        assert!(w.prefix(0).is_err());
        assert!(w.prefix(6).is_err());
        assert!(sample_via_weyl(&std_gauss(), 0, IrrationalId::Pi, 128).is_err());
        assert!(matches!(
            sample_via_weyl(&std_gauss(), 5000, IrrationalId::Pi, 70),
            Err(Error::Precision(_))
        ));
    }
}
