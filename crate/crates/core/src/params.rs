use serde::Serialize;

use crate::error::DomainError;

/// Which closed form applies, decided by the parities of `a` and `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ParityCase {
    /// `a ≡ b (mod 2)`: the value is a rational multiple of π.
    SameParity,
    /// `a ≢ b (mod 2)`, which forces `a > b`: the value is a rational
    /// combination of logarithms.
    OppositeParity,
}

/// The integers `(a, b, c, p, q)` of
/// `[Sign(p)]^a ∫₀^∞ sin^a(|p|x) cos^c(|q|x) / x^b dx`.
///
/// Construction validates `a >= b >= 2` and `c >= 0`. With
/// [`IntegralParams::with_b1`] the conditionally convergent `b = 1`, odd `a`
/// family is also accepted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntegralParams {
    a: u32,
    b: u32,
    c: u32,
    p: i64,
    q: i64,
}

impl IntegralParams {
    pub fn new(a: i64, b: i64, c: i64, p: i64, q: i64) -> Result<Self, DomainError> {
        Self::build(a, b, c, p, q, false)
    }

    /// Like [`IntegralParams::new`] but also admits `b = 1` for odd `a`.
    pub fn with_b1(a: i64, b: i64, c: i64, p: i64, q: i64) -> Result<Self, DomainError> {
        Self::build(a, b, c, p, q, true)
    }

    pub fn build(a: i64, b: i64, c: i64, p: i64, q: i64, allow_b1: bool) -> Result<Self, DomainError> {
        let detail = || format!("a = {a}, b = {b}, c = {c}, p = {p}, q = {q}");
        if c < 0 {
            return Err(DomainError::constraint("c >= 0", detail()));
        }
        if b < 1 {
            return Err(DomainError::constraint("b >= 2", detail()));
        }
        if b == 1 {
            if !allow_b1 {
                return Err(DomainError::constraint(
                    "b >= 2 (b = 1 needs the extension flag)",
                    detail(),
                ));
            }
            if a % 2 == 0 {
                return Err(DomainError::constraint("a odd when b = 1", detail()));
            }
        }
        if a < b {
            return Err(DomainError::constraint("a >= b", detail()));
        }
        let to_u32 = |v: i64, name: &'static str| {
            u32::try_from(v).map_err(|_| DomainError::constraint(name, detail()))
        };
        let (a, b, c) = (
            to_u32(a, "a fits in 32 bits")?,
            to_u32(b, "b fits in 32 bits")?,
            to_u32(c, "c fits in 32 bits")?,
        );
        let span = u64::from(a)
            .checked_mul(p.unsigned_abs())
            .and_then(|ap| u64::from(c).checked_mul(q.unsigned_abs()).and_then(|cq| ap.checked_add(cq)))
            .filter(|&s| s <= i64::MAX as u64);
        if span.is_none() {
            return Err(DomainError::constraint("a*|p| + c*|q| fits in 63 bits", detail()));
        }
        Ok(IntegralParams { a, b, c, p, q })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// `a mod 2`.
    pub fn s(&self) -> u32 {
        self.a % 2
    }

    /// `c mod 2`.
    pub fn t(&self) -> u32 {
        self.c % 2
    }

    pub fn case(&self) -> ParityCase {
        if self.a % 2 == self.b % 2 {
            ParityCase::SameParity
        } else {
            ParityCase::OppositeParity
        }
    }

    /// Same exponents with `p` and `q` replaced.
    pub fn with_frequencies(&self, p: i64, q: i64) -> Result<Self, DomainError> {
        Self::build(
            i64::from(self.a),
            i64::from(self.b),
            i64::from(self.c),
            p,
            q,
            self.b == 1,
        )
    }

    /// Highest frequency present in the integrand numerator, `a|p| + c|q|`.
    pub fn max_frequency(&self) -> u64 {
        u64::from(self.a) * self.p.unsigned_abs() + u64::from(self.c) * self.q.unsigned_abs()
    }
}
