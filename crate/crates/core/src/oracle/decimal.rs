//! Rendering exact values as doubles through binary fixed point.
//!
//! π comes from Machin's formula and `ln ρ` from `k·ln 2 + 2·atanh(y)` with
//! `2^k <= ρ < 2^{k+1}`, so every series argument is at most 1/3.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::exact::{BigRational, ExactValue};

/// Working precision used when none is given.
pub const DEFAULT_DIGITS: u32 = 50;

const GUARD_BITS: u64 = 32;

/// Constants scaled by `2^bits`, each within a few units of the last place.
struct FixedPoint {
    bits: u64,
}

impl FixedPoint {
    fn for_digits(digits: u32) -> Self {
        let digits = digits.max(15);
        // log2(10) < 3.3220
        let bits = (u64::from(digits) * 33220).div_ceil(10000) + GUARD_BITS;
        FixedPoint { bits }
    }

    fn one(&self) -> BigInt {
        BigInt::one() << self.bits
    }

    /// `atanh(n/d)` for `0 <= n/d < 1`.
    fn atanh_ratio(&self, n: u64, d: u64) -> BigInt {
        if n == 0 {
            return BigInt::zero();
        }
        let (n, d) = (BigInt::from(n), BigInt::from(d));
        let (n2, d2) = (&n * &n, &d * &d);
        let mut power = self.one() * &n / &d;
        let mut sum = BigInt::zero();
        let mut k = 1u64;
        while !power.is_zero() {
            sum += &power / k;
            power = power * &n2 / &d2;
            k += 2;
        }
        sum
    }

    /// `atan(1/m)` for integer `m >= 2`.
    fn atan_inv(&self, m: u64) -> BigInt {
        let m2 = BigInt::from(m * m);
        let mut power = self.one() / m;
        let mut sum = BigInt::zero();
        let mut k = 1u64;
        let mut positive = true;
        while !power.is_zero() {
            let term = &power / k;
            if positive {
                sum += term;
            } else {
                sum -= term;
            }
            power /= &m2;
            k += 2;
            positive = !positive;
        }
        sum
    }

    fn pi(&self) -> BigInt {
        self.atan_inv(5) * 16 - self.atan_inv(239) * 4
    }

    fn ln2(&self) -> BigInt {
        self.atanh_ratio(1, 3) * 2
    }

    fn ln(&self, m: u64, ln2: &BigInt) -> BigInt {
        let k = 63 - m.leading_zeros() as u64;
        let base = 1u64 << k;
        // (m - 2^k)/(m + 2^k) lies in [0, 1/3)
        let rest = self.atanh_ratio(m - base, m + base) * 2;
        ln2 * k + rest
    }
}

fn scaled(coeff: &BigRational, constant: &BigInt) -> BigInt {
    coeff.numer() * constant / coeff.denom()
}

/// `v` evaluated at `digits` decimal digits of working precision (at least
/// 15), then rounded to the nearest double.
pub fn to_decimal(v: &ExactValue, digits: u32) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    let fp = FixedPoint::for_digits(digits);
    let mut acc = BigInt::zero();
    if !v.pi_coeff().is_zero() {
        acc += scaled(v.pi_coeff(), &fp.pi());
    }
    if !v.log_coeffs().is_empty() {
        let ln2 = fp.ln2();
        for (&prime, coeff) in v.log_coeffs() {
            let ln = if prime == 2 { ln2.clone() } else { fp.ln(prime, &ln2) };
            acc += scaled(coeff, &ln);
        }
    }
    BigRational::new(acc, fp.one())
        .to_f64()
        .unwrap_or(f64::NAN)
}
