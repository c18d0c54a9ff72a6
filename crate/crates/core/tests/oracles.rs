//! Independent oracles for the constant tables, the Weyl terms and the
//! Gaussian CDF/quantile.

use num_bigint::{BigInt, BigUint};

use equistat::normal;
use equistat::weyl::{self, IrrationalId, TABLE_BITS};

fn limbs_to_biguint(limbs: &[u64]) -> BigUint {
    limbs
        .iter()
        .fold(BigUint::from(0u32), |acc, &l| (acc << 64u32) + BigUint::from(l))
}

fn one(bits: u32) -> BigUint {
    BigUint::from(1u32) << bits
}

fn table(alpha: IrrationalId) -> BigUint {
    limbs_to_biguint(alpha.fraction_limbs())
}

#[test]
fn sqrt2_table_is_floor_of_root() {
    let root = (BigUint::from(2u32) << (2 * TABLE_BITS)).sqrt();
    assert_eq!(table(IrrationalId::Sqrt2), root - one(TABLE_BITS));
}

#[test]
fn golden_table_is_floor_of_phi() {
    let root5 = (BigUint::from(5u32) << (2 * TABLE_BITS)).sqrt();
    let phi = (one(TABLE_BITS) + root5) >> 1u32;
    assert_eq!(table(IrrationalId::GoldenRatio), phi - one(TABLE_BITS));
}

/// `atan(1/x) · 2^bits`, truncated per term.
fn atan_inv(x: u32, bits: u32) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = BigInt::from(1) << bits;
    power /= &x;
    let mut sum = BigInt::from(0);
    let mut k = 0u32;
    while power != BigInt::from(0) {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

#[test]
fn pi_table_matches_machin() {
    let guard = 64;
    let p = TABLE_BITS + guard;
    let pi = BigInt::from(16) * atan_inv(5, p) - BigInt::from(4) * atan_inv(239, p);
    let floor = (pi >> guard) - (BigInt::from(3) << TABLE_BITS);
    assert_eq!(floor.to_biguint().unwrap(), table(IrrationalId::Pi));
}

/// `{n√2}` from an integer square root at 256 fractional bits.
fn frac_n_sqrt2(n: u64) -> f64 {
    let bits = 256u32;
    let n = BigUint::from(n);
    let scaled = (BigUint::from(2u32) * &n * &n << (2 * bits)).sqrt();
    let frac = scaled % one(bits);
    // Keep 64 leading bits with a sticky bit, then let the u128→f64 cast round.
    let top = &frac >> (bits - 128);
    let sticky = (&frac % one(bits - 128)) != BigUint::from(0u32);
    let digits = top.to_u64_digits();
    let mut v: u128 = 0;
    for (i, d) in digits.iter().enumerate() {
        v |= (*d as u128) << (64 * i);
    }
    (v | sticky as u128) as f64 * 2f64.powi(-128)
}

#[test]
fn weyl_terms_match_integer_square_root() {
    let ns = (1..=3000u64).chain([1 << 20, (1 << 40) + 7, 1_000_000_000_000_000, u64::MAX / 3]);
    for n in ns {
        let got = weyl::weyl_term(n, IrrationalId::Sqrt2, TABLE_BITS).unwrap().get();
        assert_eq!(got, frac_n_sqrt2(n), "n = {n}");
    }
}

/// `Φ(x)` by the Maclaurin series `1/2 + φ(x) Σ x^(2k+1) / (2k+1)!!` near 0
/// and the Laplace continued fraction in the tails.
fn phi_oracle(x: f64) -> f64 {
    let pdf = (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
    if x.abs() < 2.0 {
        let mut term = x;
        let mut sum = x;
        let mut k = 0.0;
        while term.abs() > 1e-300 && term.abs() > sum.abs() * 1e-18 {
            k += 1.0;
            term *= x * x / (2.0 * k + 1.0);
            sum += term;
        }
        0.5 + pdf * sum
    } else {
        let z = x.abs();
        let mut cf = z;
        for k in (1..=300).rev() {
            cf = z + k as f64 / cf;
        }
        let tail = pdf / cf;
        if x < 0.0 {
            tail
        } else {
            1.0 - tail
        }
    }
}

#[test]
fn gaussian_cdf_matches_series_oracle() {
    let mut x = -37.0;
    while x <= 8.0 {
        let want = phi_oracle(x);
        let got = normal::cdf(x);
        // exp(-x²/2) carries a relative error growing like x² ε in both.
        let tol = if x < 0.0 { (2e-14 + 5e-16 * x * x) * want } else { 1e-15 };
        assert!((got - want).abs() <= tol.max(1e-310), "x = {x}: {got} vs {want}");
        x += 0.0625;
    }
    assert!((normal::cdf(-1.0) - 0.15865525393145705).abs() < 1e-16);
    assert!((normal::cdf(-2.0) - 0.022750131948179207).abs() < 1e-17);
}

fn bisect_quantile(p: f64) -> f64 {
    let (mut lo, mut hi) = (-40.0f64, 0.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if phi_oracle(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn gaussian_quantile_matches_bisection() {
    let mut ps: Vec<f64> = (1..=300).map(|k| 10f64.powi(-k)).collect();
    ps.extend((1..50).map(|k| k as f64 / 100.0));
    ps.extend([0.02425, 0.0242, 0.0243, 0.075, 0.425, 0.4999]);
    for p in ps {
        let want = bisect_quantile(p);
        let got = normal::quantile(p);
        assert!(((got - want) / want).abs() < 1e-12, "p = {p}: {got} vs {want}");
        if 1.0 - (1.0 - p) == p {
            assert_eq!(normal::quantile(1.0 - p), -normal::quantile(p), "p = {p}");
        }
    }
    assert_eq!(normal::quantile(0.5), 0.0);
}
