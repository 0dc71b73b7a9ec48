//! Exact arithmetic shared by every other module.
//!
//! All coefficients are [`BigRational`]s. Closed-form results are
//! [`ExactValue`]s: a rational multiple of π plus rational multiples of
//! `ln ρ` for primes `ρ`. Because π and the logarithms of distinct primes are
//! linearly independent over ℚ, this representation is canonical and two
//! values are equal exactly when their fields are.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::DomainError;

pub use num_rational::BigRational;

/// Binomial coefficient `n choose k`, zero when `k` lies outside `0..=n`.
pub fn rational_binomial(n: u32, k: i64) -> BigRational {
    BigRational::from_integer(binomial(n, k))
}

pub(crate) fn binomial(n: u32, k: i64) -> BigInt {
    if k < 0 || k > i64::from(n) {
        return BigInt::zero();
    }
    let n = u64::from(n);
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc * (n - i) is always divisible by (i + 1) at this point
        acc = acc * (n - i) / (i + 1);
    }
    BigInt::from(acc)
}

/// `(-1)^k` as an `i32`.
pub(crate) fn neg_one_pow(k: u64) -> i32 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Prime factorization by trial division, primes ascending.
pub fn prime_factors(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        let mut e = 0;
        while m % d == 0 {
            m /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// `pi_coeff·π + Σ log_coeffs[ρ]·ln ρ` with every `ρ` prime and every stored
/// coefficient nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactValue {
    pi: BigRational,
    logs: BTreeMap<u64, BigRational>,
}

impl ExactValue {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `r·π`.
    pub fn pi(r: BigRational) -> Self {
        ExactValue {
            pi: r,
            logs: BTreeMap::new(),
        }
    }

    /// `coeff·ln m`, expanded over the primes dividing `m`.
    pub fn log_of_integer(m: i64, coeff: &BigRational) -> Result<Self, DomainError> {
        if m < 1 {
            return Err(DomainError::LogArgument(m));
        }
        let mut out = ExactValue::zero();
        out.add_log_assign(m as u64, coeff);
        Ok(out)
    }

    pub fn pi_coeff(&self) -> &BigRational {
        &self.pi
    }

    /// Coefficients keyed by prime, ascending.
    pub fn log_coeffs(&self) -> &BTreeMap<u64, BigRational> {
        &self.logs
    }

    pub fn log_coeff(&self, prime: u64) -> Option<&BigRational> {
        self.logs.get(&prime)
    }

    pub fn is_zero(&self) -> bool {
        self.pi.is_zero() && self.logs.is_empty()
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return ExactValue::zero();
        }
        ExactValue {
            pi: &self.pi * r,
            logs: self.logs.iter().map(|(&k, v)| (k, v * r)).collect(),
        }
    }

    pub(crate) fn add_pi_assign(&mut self, r: &BigRational) {
        self.pi += r;
    }

    /// `self += coeff·ln m` for `m >= 1`.
    pub(crate) fn add_log_assign(&mut self, m: u64, coeff: &BigRational) {
        if coeff.is_zero() {
            return;
        }
        for (prime, e) in prime_factors(m) {
            self.add_prime_log(prime, &(coeff * BigInt::from(e)));
        }
    }

    fn add_prime_log(&mut self, prime: u64, coeff: &BigRational) {
        let slot = self.logs.entry(prime).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.logs.remove(&prime);
        }
    }
}

impl Add<&ExactValue> for &ExactValue {
    type Output = ExactValue;

    fn add(self, rhs: &ExactValue) -> ExactValue {
        let mut out = self.clone();
        out.pi += &rhs.pi;
        for (&prime, coeff) in &rhs.logs {
            out.add_prime_log(prime, coeff);
        }
        out
    }
}

impl Add for ExactValue {
    type Output = ExactValue;

    fn add(self, rhs: ExactValue) -> ExactValue {
        &self + &rhs
    }
}

impl Neg for ExactValue {
    type Output = ExactValue;

    fn neg(self) -> ExactValue {
        self.scale(&-BigRational::one())
    }
}

/// Free-function spelling of `u + v`.
pub fn exact_add(u: &ExactValue, v: &ExactValue) -> ExactValue {
    u + v
}

/// Free-function spelling of `u.scale(r)`.
pub fn exact_scale(u: &ExactValue, r: &BigRational) -> ExactValue {
    u.scale(r)
}

/// Canonical text form: `1/3*pi - 5/8*ln(2) + 2*ln(3)`, or `0`.
impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(BigRational, String)> = Vec::new();
        if !self.pi.is_zero() {
            terms.push((self.pi.clone(), "pi".to_owned()));
        }
        for (prime, coeff) in &self.logs {
            terms.push((coeff.clone(), format!("ln({prime})")));
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (coeff, atom)) in terms.iter().enumerate() {
            if idx == 0 {
                write!(f, "{coeff}*{atom}")?;
            } else if coeff.is_negative() {
                write!(f, " - {}*{atom}", -coeff)?;
            } else {
                write!(f, " + {coeff}*{atom}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse exact value from {input:?}: {reason}")]
pub struct ParseExactError {
    input: String,
    reason: &'static str,
}

impl FromStr for ExactValue {
    type Err = ParseExactError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let fail = |reason| ParseExactError {
            input: input.to_owned(),
            reason,
        };
        let text = input.trim();
        if text == "0" {
            return Ok(ExactValue::zero());
        }
        if text.is_empty() {
            return Err(fail("empty input"));
        }
        let mut out = ExactValue::zero();
        let mut rest = text;
        let mut negate = false;
        loop {
            let (term, tail, next_negate) = match (rest.find(" + "), rest.find(" - ")) {
                (None, None) => (rest, None, false),
                (plus, minus) => {
                    let plus = plus.unwrap_or(usize::MAX);
                    let minus = minus.unwrap_or(usize::MAX);
                    let at = plus.min(minus);
                    (&rest[..at], Some(&rest[at + 3..]), minus < plus)
                }
            };
            let (coeff, atom) = term.split_once('*').ok_or_else(|| fail("term lacks `*`"))?;
            let mut coeff: BigRational = coeff
                .trim()
                .parse()
                .map_err(|_| fail("malformed rational coefficient"))?;
            if negate {
                coeff = -coeff;
            }
            let atom = atom.trim();
            if atom == "pi" {
                out.add_pi_assign(&coeff);
            } else if let Some(arg) = atom.strip_prefix("ln(").and_then(|a| a.strip_suffix(')')) {
                let m: u64 = arg.parse().map_err(|_| fail("malformed ln argument"))?;
                if m < 1 {
                    return Err(fail("ln argument must be >= 1"));
                }
                out.add_log_assign(m, &coeff);
            } else {
                return Err(fail("unknown atom, expected `pi` or `ln(n)`"));
            }
            match tail {
                Some(t) => {
                    rest = t;
                    negate = next_negate;
                }
                None => break,
            }
        }
        Ok(out)
    }
}
