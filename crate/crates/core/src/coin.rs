//! The coin-tossing group `{0,1}^N`: Bernoulli samples, Cesàro-mean
//! estimation of `θ`, a Monte Carlo witness for the prevalence of sequences
//! whose means tend to 1/2 under the Haar measure `μ_{1/2}^N`, the binary
//! expansion map to `[0, 1]`, and the existence classifier for objective
//! estimates on subsets of `(0, 1)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::estimators::cesaro_limit;
use crate::rng::{self, CounterRng};

#[derive(Debug, Clone, PartialEq)]
pub enum BitProvenance {
    /// Built from a literal pattern; the string describes it.
    Deterministic(String),
    /// Bit `k` of stream `stream` of the counter-based generator keyed by `seed`.
    Seeded { seed: u64, stream: u64, theta: f64 },
}

/// A finite prefix of an element of `{0,1}^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinarySequence {
    bits: Vec<u8>,
    provenance: BitProvenance,
}

impl BinarySequence {
    pub fn from_bits(bits: Vec<u8>, description: impl Into<String>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Domain("binary sequence needs at least one bit".into()));
        }
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::Domain(format!("{b} is not a bit")));
        }
        Ok(BinarySequence {
            bits,
            provenance: BitProvenance::Deterministic(description.into()),
        })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn provenance(&self) -> &BitProvenance {
        &self.provenance
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().map(|&b| b as usize).sum()
    }

    /// Cesàro means `(x_1 + ... + x_n) / n`. Exact: the sums are integers.
    pub fn running_means(&self) -> Vec<f64> {
        let mut ones = 0usize;
        self.bits
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                ones += b as usize;
                ones as f64 / (i + 1) as f64
            })
            .collect()
    }

    /// The sequence with every bit flipped.
    pub fn flipped(&self) -> Self {
        BinarySequence {
            bits: self.bits.iter().map(|&b| 1 - b).collect(),
            provenance: BitProvenance::Deterministic(format!("flip of {:?}", self.provenance)),
        }
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("theta = {theta} outside (0, 1)")))
    }
}

fn seeded_bits(theta: f64, len: usize, rng: &CounterRng, stream: u64) -> Vec<u8> {
    rng.words(stream)
        .take(len)
        .map(|w| (rng::half_open(w) < theta) as u8)
        .collect()
}

/// `len` independent `μ_θ` coin tosses: bit `k` is 1 iff the `k`-th uniform
/// draw of stream 0 under `seed` is below `theta`. `theta = 0.5` samples the
/// Haar measure of the group.
pub fn bernoulli_sample(theta: f64, len: usize, seed: u64) -> Result<BinarySequence> {
    check_theta(theta)?;
    if len == 0 {
        return Err(Error::Domain("sample length must be >= 1".into()));
    }
    let rng = CounterRng::new(seed);
    Ok(BinarySequence {
        bits: seeded_bits(theta, len, &rng, 0),
        provenance: BitProvenance::Seeded {
            seed,
            stream: 0,
            theta,
        },
    })
}

/// The Cesàro-mean estimator of `θ`: the limit of the running means when the
/// convergence diagnostic accepts one inside `(0, 1) ∖ {θ0}`, else `θ0`.
pub fn cesaro_estimate(seq: &BinarySequence, fallback: f64, convergence_tol: f64) -> Result<f64> {
    if seq.len() < 4 {
        return Err(Error::Domain(format!(
            "the convergence diagnostic needs at least 4 bits, got {}",
            seq.len()
        )));
    }
    Ok(match cesaro_limit(&seq.running_means(), convergence_tol) {
        Some(l) if l > 0.0 && l < 1.0 && l != fallback => l,
        _ => fallback,
    })
}

/// `Σ_{k ≤ N} x_k / 2^k`.
pub fn bits_to_unit(seq: &BinarySequence) -> f64 {
    seq.bits
        .iter()
        .enumerate()
        .filter(|(_, &b)| b == 1)
        .map(|(k, _)| 0.5f64.powi(k as i32 + 1))
        .sum()
}

/// `|m_N - 1/2| ≤ ε` decided on integers, so it is symmetric under bit flips.
fn mean_near_half(ones: usize, len: usize, epsilon: f64) -> bool {
    let twice_dev = (2 * ones).abs_diff(len) as f64;
    twice_dev <= 2.0 * epsilon * len as f64
}

/// Fraction of `trials` Haar-random sequences of length `len` whose mean is
/// within `epsilon` of 1/2. Trial `t` uses stream `t` of the generator keyed
/// by `seed`, so the result does not depend on evaluation order.
pub fn prevalence_monte_carlo(epsilon: f64, len: usize, trials: usize, seed: u64) -> Result<f64> {
    prevalence_impl(epsilon, len, trials, seed, false)
}

/// [`prevalence_monte_carlo`] on the bit-flipped trials.
pub fn prevalence_monte_carlo_flipped(epsilon: f64, len: usize, trials: usize, seed: u64) -> Result<f64> {
    prevalence_impl(epsilon, len, trials, seed, true)
}

fn prevalence_impl(epsilon: f64, len: usize, trials: usize, seed: u64, flip: bool) -> Result<f64> {
    if trials == 0 || len == 0 {
        return Err(Error::Domain("trials and length must be >= 1".into()));
    }
    if !(epsilon > 0.0) {
        return Err(Error::Domain(format!("epsilon = {epsilon} must be positive")));
    }
    let rng = CounterRng::new(seed);
    let hits = (0..trials as u64)
        .into_par_iter()
        .filter(|&t| {
            let ones = seeded_bits(0.5, len, &rng, t).iter().filter(|&&b| b == 1).count();
            let ones = if flip { len - ones } else { ones };
            mean_near_half(ones, len, epsilon)
        })
        .count();
    Ok(hits as f64 / trials as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cardinality {
    FiniteList,
    CountablyInfinite,
    Uncountable,
}

/// A parameter set `Θ ⊆ (0, 1)`. Only finite sets carry their elements;
/// for infinite ones the caller asserts the cardinality and whether 1/2 is in.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterSetDescriptor {
    kind: Cardinality,
    elements: Vec<f64>,
    contains_half: bool,
}

impl ParameterSetDescriptor {
    pub fn finite(elements: Vec<f64>) -> Result<Self> {
        if elements.len() < 2 {
            return Err(Error::Domain(format!(
                "a parameter set needs at least 2 elements, got {}",
                elements.len()
            )));
        }
        if let Some(e) = elements.iter().find(|&&e| !(e > 0.0 && e < 1.0)) {
            return Err(Error::Domain(format!("{e} is outside (0, 1)")));
        }
        for (i, a) in elements.iter().enumerate() {
            if elements[..i].contains(a) {
                return Err(Error::Domain(format!("{a} listed twice")));
            }
        }
        let contains_half = elements.contains(&0.5);
        Ok(ParameterSetDescriptor {
            kind: Cardinality::FiniteList,
            elements,
            contains_half,
        })
    }

    pub fn countably_infinite(contains_half: bool) -> Self {
        ParameterSetDescriptor {
            kind: Cardinality::CountablyInfinite,
            elements: Vec::new(),
            contains_half,
        }
    }

    pub fn uncountable(contains_half: bool) -> Self {
        ParameterSetDescriptor {
            kind: Cardinality::Uncountable,
            elements: Vec::new(),
            contains_half,
        }
    }

    pub fn kind(&self) -> Cardinality {
        self.kind
    }

    pub fn elements(&self) -> &[f64] {
        &self.elements
    }

    pub fn contains_half(&self) -> bool {
        self.contains_half
    }

    /// The same set with 1/2 added.
    pub fn with_half(&self) -> Self {
        let mut d = self.clone();
        if d.kind == Cardinality::FiniteList && !d.contains_half {
            d.elements.push(0.5);
        }
        d.contains_half = true;
        d
    }
}

/// Ordered from weakest to strongest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ObjectivityVerdict {
    NoObjectiveEstimate,
    ObjectiveExistsNotStrong,
    StrongObjectiveExists,
}

/// Whether `{μ_θ^N : θ ∈ Θ}` admits an objective (resp. strong objective)
/// consistent estimate: objective iff `Θ` is at most countable and excludes
/// 1/2; strong iff `Θ` is moreover finite.
pub fn classify_objectivity(desc: &ParameterSetDescriptor) -> ObjectivityVerdict {
    match (desc.kind, desc.contains_half) {
        (_, true) | (Cardinality::Uncountable, _) => ObjectivityVerdict::NoObjectiveEstimate,
        (Cardinality::FiniteList, false) => ObjectivityVerdict::StrongObjectiveExists,
        (Cardinality::CountablyInfinite, false) => ObjectivityVerdict::ObjectiveExistsNotStrong,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_is_deterministic_and_validated() {
        let a = bernoulli_sample(0.3, 500, 11).unwrap();
        let b = bernoulli_sample(0.3, 500, 11).unwrap();
        assert_eq!(a, b);
        assert!(bernoulli_sample(0.0, 10, 1).is_err());
        assert!(bernoulli_sample(1.0, 10, 1).is_err());
        assert!(bernoulli_sample(0.5, 0, 1).is_err());
    }

    #[test]
    fn bits_validation() {
        assert!(BinarySequence::from_bits(vec![0, 2], "bad").is_err());
        assert!(BinarySequence::from_bits(vec![], "empty").is_err());
    }

    #[test]
    fn cesaro_alternating() {
        let bits: Vec<u8> = (0..1000).map(|i| (i % 2) as u8).collect();
        let s = BinarySequence::from_bits(bits, "alternating").unwrap();
        assert_eq!(cesaro_estimate(&s, 0.9, 0.01).unwrap(), 0.5);
    }

    #[test]
    fn cesaro_boundary_limit_falls_back() {
        let s = BinarySequence::from_bits(vec![1; 100], "ones").unwrap();
        assert_eq!(cesaro_estimate(&s, 0.3, 0.01).unwrap(), 0.3);
        let z = BinarySequence::from_bits(vec![0; 100], "zeros").unwrap();
        assert_eq!(cesaro_estimate(&z, 0.3, 0.01).unwrap(), 0.3);
        let short = BinarySequence::from_bits(vec![0, 1, 1], "short").unwrap();
        assert!(cesaro_estimate(&short, 0.3, 0.01).is_err());
    }

    #[test]
    fn cesaro_limit_equal_to_fallback() {
        let bits: Vec<u8> = (0..1000).map(|i| (i % 2) as u8).collect();
        let s = BinarySequence::from_bits(bits, "alternating").unwrap();
        assert_eq!(cesaro_estimate(&s, 0.5, 0.01).unwrap(), 0.5);
    }

    #[test]
    fn cesaro_divergent_falls_back() {
        // Blocks of doubling length oscillate the mean between ~1/3 and ~2/3.
        let mut bits = Vec::new();
        let mut bit = 0u8;
        let mut block = 1;
        while bits.len() < 4000 {
            bits.extend(std::iter::repeat(bit).take(block));
            bit ^= 1;
            block *= 2;
        }
        let s = BinarySequence::from_bits(bits, "doubling blocks").unwrap();
        assert_eq!(cesaro_estimate(&s, 0.25, 0.01).unwrap(), 0.25);
    }

    #[test]
    fn bits_to_unit_examples() {
        let one = BinarySequence::from_bits(vec![1, 0, 0, 0], "").unwrap();
        assert_eq!(bits_to_unit(&one), 0.5);
        let alt: Vec<u8> = (0..52).map(|i| (i % 2) as u8).collect();
        let alt = BinarySequence::from_bits(alt, "").unwrap();
        assert_eq!(bits_to_unit(&alt), (1.0 - 4f64.powi(-26)) / 3.0);
        let ones = BinarySequence::from_bits(vec![1; 53], "").unwrap();
        assert_eq!(bits_to_unit(&ones), 1.0 - 2f64.powi(-53));
    }

    #[test]
    fn prevalence_edge_cases() {
        assert_eq!(prevalence_monte_carlo(1.0, 10, 50, 1).unwrap(), 1.0);
        // With N = 10 only exactly five ones qualifies.
        let frac = prevalence_monte_carlo(1e-4, 10, 100, 4).unwrap();
        let rng = CounterRng::new(4);
        let exact = (0..100u64)
            .filter(|&t| seeded_bits(0.5, 10, &rng, t).iter().filter(|&&b| b == 1).count() == 5)
            .count();
        assert_eq!(frac, exact as f64 / 100.0);
        assert!(prevalence_monte_carlo(0.0, 10, 10, 1).is_err());
        assert!(prevalence_monte_carlo(0.1, 10, 0, 1).is_err());
    }

    #[test]
    fn classifier_fixtures() {
        let d = ParameterSetDescriptor::finite(vec![0.3, 0.7]).unwrap();
        assert_eq!(classify_objectivity(&d), ObjectivityVerdict::StrongObjectiveExists);
        let d = ParameterSetDescriptor::countably_infinite(false);
        assert_eq!(classify_objectivity(&d), ObjectivityVerdict::ObjectiveExistsNotStrong);
        let d = ParameterSetDescriptor::finite(vec![0.5, 0.9]).unwrap();
        assert_eq!(classify_objectivity(&d), ObjectivityVerdict::NoObjectiveEstimate);
        let d = ParameterSetDescriptor::uncountable(false);
        assert_eq!(classify_objectivity(&d), ObjectivityVerdict::NoObjectiveEstimate);
    }

    #[test]
    fn descriptor_validation() {
        assert!(ParameterSetDescriptor::finite(vec![0.3]).is_err());
        assert!(ParameterSetDescriptor::finite(vec![0.3, 0.3]).is_err());
        assert!(ParameterSetDescriptor::finite(vec![0.3, 1.0]).is_err());
        let d = ParameterSetDescriptor::finite(vec![0.3, 0.7]).unwrap();
        assert!(!d.contains_half());
        assert!(d.with_half().contains_half());
        assert_eq!(d.with_half().elements().len(), 3);
    }

    #[test]
    fn verdict_order() {
        assert!(ObjectivityVerdict::NoObjectiveEstimate < ObjectivityVerdict::ObjectiveExistsNotStrong);
        assert!(ObjectivityVerdict::ObjectiveExistsNotStrong < ObjectivityVerdict::StrongObjectiveExists);
    }
}
