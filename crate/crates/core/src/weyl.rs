//! Weyl sequences `{n·α}` computed in exact fixed-point arithmetic.
//!
//! Each irrational is stored as its integer part plus 1024 fractional bits.
//! Multiplying the fractional bits by `n` and discarding the carry out of the
//! top limb yields `{n·α}` to 1024 bits, which is then rounded once to `f64`.
//! The result is the correctly rounded fractional part for every `n` with
//! `64 + bitlen(n) <= 1024`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Number of fractional bits shipped for each constant.
pub const TABLE_BITS: u32 = 1024;

const LIMBS: usize = (TABLE_BITS / 64) as usize;

// Fractional bits, most significant limb first.
const PI_FRAC: [u64; LIMBS] = [
    0x243f6a8885a308d3, 0x13198a2e03707344, 0xa4093822299f31d0, 0x082efa98ec4e6c89,
    0x452821e638d01377, 0xbe5466cf34e90c6c, 0xc0ac29b7c97c50dd, 0x3f84d5b5b5470917,
    0x9216d5d98979fb1b, 0xd1310ba698dfb5ac, 0x2ffd72dbd01adfb7, 0xb8e1afed6a267e96,
    0xba7c9045f12c7f99, 0x24a19947b3916cf7, 0x0801f2e2858efc16, 0x636920d871574e69,
];

const SQRT2_FRAC: [u64; LIMBS] = [
    0x6a09e667f3bcc908, 0xb2fb1366ea957d3e, 0x3adec17512775099, 0xda2f590b0667322a,
    0x95f9060875714587, 0x5163fcdfb907b672, 0x1ee950bc8738f694, 0xf0090e6c7bf44ed1,
    0xa4405d0e855e3e9c, 0xa60b38c0237866f7, 0x956379222d108b14, 0x8c1578e45ef89c67,
    0x8dab5147176fd3b9, 0x9654c68663e7909b, 0xea5e241f06dcb05d, 0xd549411320819495,
];

const GOLDEN_FRAC: [u64; LIMBS] = [
    0x9e3779b97f4a7c15, 0xf39cc0605cedc834, 0x1082276bf3a27251, 0xf86c6a11d0c18e95,
    0x2767f0b153d27b7f, 0x0347045b5bf1827f, 0x01886f0928403002, 0xc1d64ba40f335e36,
    0xf06ad7ae9717877e, 0x85839d6effbd7dc6, 0x64d325d1c5371682, 0xcadd0cccfdffbbe1,
    0x626e33b8d04b4331, 0xbbf73c790d94f79d, 0x471c4ab3ed3d82a5, 0xfec507705e4ae6e5,
];

/// The irrational multiplier of a Weyl sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum IrrationalId {
    #[default]
    Pi,
    Sqrt2,
    GoldenRatio,
}

impl IrrationalId {
    /// Integer part of the constant.
    pub fn integer_part(self) -> u64 {
        match self {
            IrrationalId::Pi => 3,
            IrrationalId::Sqrt2 | IrrationalId::GoldenRatio => 1,
        }
    }

    /// The 1024 fractional bits, most significant 64-bit limb first.
    pub fn fraction_limbs(self) -> &'static [u64; LIMBS] {
        match self {
            IrrationalId::Pi => &PI_FRAC,
            IrrationalId::Sqrt2 => &SQRT2_FRAC,
            IrrationalId::GoldenRatio => &GOLDEN_FRAC,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            IrrationalId::Pi => "pi",
            IrrationalId::Sqrt2 => "sqrt2",
            IrrationalId::GoldenRatio => "phi",
        }
    }
}

impl fmt::Display for IrrationalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IrrationalId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pi" => Ok(IrrationalId::Pi),
            "sqrt2" => Ok(IrrationalId::Sqrt2),
            "phi" | "golden" | "goldenratio" => Ok(IrrationalId::GoldenRatio),
            other => Err(Error::Domain(format!("unknown irrational `{other}`"))),
        }
    }
}

/// A value in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
#[repr(transparent)]
pub struct UnitValue(f64);

impl UnitValue {
    pub fn new(value: f64) -> Result<Self> {
        if (0.0..1.0).contains(&value) {
            Ok(UnitValue(value))
        } else {
            Err(Error::Domain(format!("{value} is not in [0, 1)")))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl From<UnitValue> for f64 {
    fn from(u: UnitValue) -> f64 {
        u.0
    }
}

/// Smallest working precision (in bits of α) for which `{n·α}` is correct to
/// full double precision: `64 + bitlen(n)`.
pub fn min_precision_bits(n: u64) -> u32 {
    64 + (64 - n.leading_zeros())
}

fn check_precision(n: u64, precision_bits: u32) -> Result<()> {
    let need = min_precision_bits(n);
    if precision_bits < need {
        return Err(Error::Precision(format!(
            "{precision_bits} bits of alpha cannot resolve the fractional part at n = {n}; need at least {need}"
        )));
    }
    if precision_bits > TABLE_BITS {
        return Err(Error::Precision(format!(
            "{precision_bits} bits requested but the constant table holds {TABLE_BITS}"
        )));
    }
    Ok(())
}

/// Rounds a 1024-bit fraction to the nearest `f64` below 1.
fn limbs_to_unit(frac: &[u64; LIMBS]) -> f64 {
    let sticky = frac[2..].iter().any(|&l| l != 0) as u128;
    let top = ((frac[0] as u128) << 64) | frac[1] as u128 | sticky;
    let v = top as f64 * 2f64.powi(-128);
    // Rounding up to 1.0 would need {nα} within 2^-54 of 1; keep the codomain anyway.
    if v >= 1.0 {
        1.0 - f64::EPSILON / 2.0
    } else {
        v
    }
}

fn mul_fraction(alpha: &[u64; LIMBS], n: u64) -> [u64; LIMBS] {
    let mut out = [0u64; LIMBS];
    let mut carry: u128 = 0;
    for i in (0..LIMBS).rev() {
        let p = alpha[i] as u128 * n as u128 + carry;
        out[i] = p as u64;
        carry = p >> 64;
    }
    out
}

fn add_fraction(acc: &mut [u64; LIMBS], alpha: &[u64; LIMBS]) {
    let mut carry = false;
    for i in (0..LIMBS).rev() {
        let (s1, c1) = acc[i].overflowing_add(alpha[i]);
        let (s2, c2) = s1.overflowing_add(carry as u64);
        acc[i] = s2;
        carry = c1 || c2;
    }
}

/// `{n·α}`, the fractional part of the `n`-th multiple of `alpha`.
///
/// `precision_bits` is the number of bits of α the caller requires; it must be
/// at least [`min_precision_bits`]`(n)` and at most [`TABLE_BITS`]. The whole
/// table is always used, so any two admissible precisions give identical bits.
pub fn weyl_term(n: u64, alpha: IrrationalId, precision_bits: u32) -> Result<UnitValue> {
    if n == 0 {
        return Err(Error::Domain("Weyl sequences are 1-indexed; n must be >= 1".into()));
    }
    check_precision(n, precision_bits)?;
    Ok(UnitValue(limbs_to_unit(&mul_fraction(alpha.fraction_limbs(), n))))
}

/// Iterator over `{α}, {2α}, {3α}, ...` by exact repeated addition.
#[derive(Debug, Clone)]
pub struct WeylStream {
    alpha: IrrationalId,
    acc: [u64; LIMBS],
}

impl WeylStream {
    pub fn new(alpha: IrrationalId) -> Self {
        WeylStream {
            alpha,
            acc: [0; LIMBS],
        }
    }
}

impl Iterator for WeylStream {
    type Item = UnitValue;

    fn next(&mut self) -> Option<UnitValue> {
        add_fraction(&mut self.acc, self.alpha.fraction_limbs());
        Some(UnitValue(limbs_to_unit(&self.acc)))
    }
}

/// The first `len` terms `(weyl_term(1), ..., weyl_term(len))`.
pub fn weyl_prefix(len: usize, alpha: IrrationalId, precision_bits: u32) -> Result<Vec<UnitValue>> {
    if len == 0 {
        return Err(Error::Domain("prefix length must be >= 1".into()));
    }
    check_precision(len as u64, precision_bits)?;
    Ok(WeylStream::new(alpha).take(len).collect())
}

/// Fraction of `values` lying in the closed interval `[c, d]`.
pub fn discrepancy_fraction(values: &[UnitValue], c: f64, d: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::Domain("empty sequence".into()));
    }
    if !(0.0 <= c && c <= d && d <= 1.0) {
        return Err(Error::Domain(format!("[{c}, {d}] is not a subinterval of [0, 1]")));
    }
    let hits = values.iter().filter(|v| c <= v.0 && v.0 <= d).count();
    Ok(hits as f64 / values.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn first_terms_of_pi() {
        let t1 = weyl_term(1, IrrationalId::Pi, 128).unwrap().get();
        let t2 = weyl_term(2, IrrationalId::Pi, 128).unwrap().get();
        // Correctly rounded, unlike `PI - 3.0` which inherits PI's rounding error.
        assert_eq!(t1, 0.141_592_653_589_793_238_46);
        assert!((t1 - (PI - 3.0)).abs() < 2e-16);
        assert!((t2 - (2.0 * PI - 6.0)).abs() < 1e-15);
        // 7π − 21, from a 400-digit reference value.
        let t7 = weyl_term(7, IrrationalId::Pi, 128).unwrap().get();
        assert_eq!(t7, 0.9911485751285527);
    }

    #[test]
    fn sqrt2_and_golden() {
        let s = weyl_prefix(1, IrrationalId::Sqrt2, 128).unwrap();
        assert_eq!(s[0].get(), 0.414_213_562_373_095_048_80);
        let g = weyl_term(1, IrrationalId::GoldenRatio, 128).unwrap().get();
        assert!((g - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-16);
    }

    #[test]
    fn prefix_unrolls_definition() {
        let p = weyl_prefix(3, IrrationalId::Pi, 128).unwrap();
        for (k, v) in p.iter().enumerate() {
            let x = (k as f64 + 1.0) * PI;
            assert!((v.get() - (x - x.floor())).abs() < 1e-14);
        }
    }

    #[test]
    fn stream_matches_direct_multiplication() {
        for alpha in [IrrationalId::Pi, IrrationalId::Sqrt2, IrrationalId::GoldenRatio] {
            for (k, v) in WeylStream::new(alpha).take(5000).enumerate() {
                let n = k as u64 + 1;
                assert_eq!(v, weyl_term(n, alpha, 1024).unwrap(), "n = {n}");
            }
        }
        let big = u64::MAX / 3;
        let a = weyl_term(big, IrrationalId::Pi, 128).unwrap();
        let b = weyl_term(big, IrrationalId::Pi, 1024).unwrap();
        assert_eq!(a.get().to_bits(), b.get().to_bits());
    }

    #[test]
    fn precision_bounds() {
        assert_eq!(min_precision_bits(1), 65);
        assert_eq!(min_precision_bits(1000), 74);
        assert!(matches!(weyl_term(1000, IrrationalId::Pi, 73), Err(Error::Precision(_))));
        assert!(weyl_term(1000, IrrationalId::Pi, 74).is_ok());
        assert!(matches!(weyl_term(1, IrrationalId::Pi, 2048), Err(Error::Precision(_))));
        assert!(matches!(weyl_prefix(1 << 20, IrrationalId::Pi, 80), Err(Error::Precision(_))));
        assert!(matches!(weyl_term(0, IrrationalId::Pi, 128), Err(Error::Domain(_))));
    }

    #[test]
    fn discrepancy_examples() {
        let v: Vec<_> = [0.1, 0.6, 0.9].iter().map(|&x| UnitValue::new(x).unwrap()).collect();
        assert_eq!(discrepancy_fraction(&v, 0.0, 0.5).unwrap(), 1.0 / 3.0);
        let one = [UnitValue::new(0.25).unwrap()];
        assert_eq!(discrepancy_fraction(&one, 0.0, 1.0).unwrap(), 1.0);
        assert!(discrepancy_fraction(&[], 0.0, 1.0).is_err());
        assert!(discrepancy_fraction(&v, 0.6, 0.5).is_err());
        // closed at both ends
        assert_eq!(discrepancy_fraction(&v, 0.6, 0.9).unwrap(), 2.0 / 3.0);
    }

    #[test]
    fn equidistribution_at_depth() {
        let p = weyl_prefix(1000, IrrationalId::Pi, 128).unwrap();
        let half = p.iter().filter(|v| v.get() <= 0.5).count() as f64;
        assert!((half - 500.0).abs() <= 50.0);

        let p = weyl_prefix(10_000, IrrationalId::Pi, 128).unwrap();
        let f = discrepancy_fraction(&p, 0.2, 0.7).unwrap();
        assert!((f - 0.5).abs() <= 0.02, "{f}");
    }

    #[test]
    fn parse_names() {
        assert_eq!("pi".parse::<IrrationalId>().unwrap(), IrrationalId::Pi);
        assert_eq!("phi".parse::<IrrationalId>().unwrap(), IrrationalId::GoldenRatio);
        assert!("e".parse::<IrrationalId>().is_err());
    }
}
