//! Finite trigonometric polynomials with exact coefficients.
//!
//! A [`TrigPoly`] is `Σ coeff·{1 | sin(f·x) | cos(f·x)}` over nonnegative
//! integer frequencies `f`. Powers of sines and cosines are reduced to this
//! form, products are re-expanded with the product-to-sum identities and
//! derivatives act term by term.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::DomainError;
use crate::exact::{binomial, neg_one_pow, BigRational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TrigKind {
    Const,
    Sin,
    Cos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrigTerm {
    pub kind: TrigKind,
    pub frequency: u64,
    pub coeff: BigRational,
}

/// Like terms are merged on insertion and zero coefficients are dropped, so
/// two polynomials are equal as functions iff they are equal as values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TrigPoly {
    terms: BTreeMap<(TrigKind, u64), BigRational>,
}

impl TrigPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(r: BigRational) -> Self {
        let mut out = Self::zero();
        out.add_term(TrigKind::Const, 0, r);
        out
    }

    /// Single term built from a possibly negative or zero frequency.
    pub fn single(kind: TrigKind, frequency: i64, coeff: BigRational) -> Self {
        let mut out = Self::zero();
        out.add_term(kind, frequency, coeff);
        out
    }

    /// Adds `coeff·kind(frequency·x)`, normalising `sin(-u) = -sin u`,
    /// `cos(-u) = cos u`, `sin 0 = 0` and `cos 0 = 1`.
    pub fn add_term(&mut self, kind: TrigKind, frequency: i64, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let (kind, frequency, coeff) = match kind {
            TrigKind::Const => (TrigKind::Const, 0, coeff),
            _ if frequency == 0 => match kind {
                TrigKind::Sin => return,
                _ => (TrigKind::Const, 0, coeff),
            },
            TrigKind::Sin if frequency < 0 => (TrigKind::Sin, frequency.unsigned_abs(), -coeff),
            _ => (kind, frequency.unsigned_abs(), coeff),
        };
        let slot = self.terms.entry((kind, frequency)).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&(kind, frequency));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = TrigTerm> + '_ {
        self.terms.iter().map(|(&(kind, frequency), coeff)| TrigTerm {
            kind,
            frequency,
            coeff: coeff.clone(),
        })
    }

    pub fn coeff(&self, kind: TrigKind, frequency: u64) -> Option<&BigRational> {
        self.terms.get(&(kind, frequency))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_kind(&self, kind: TrigKind) -> bool {
        self.terms.keys().any(|&(k, _)| k == kind)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        TrigPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, v * r)).collect(),
        }
    }

    /// Double-precision evaluation at `x`; coefficients are rounded first.
    pub fn eval(&self, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(kind, f), coeff)| {
                let c = coeff.to_f64().unwrap_or(f64::NAN);
                let fx = f as f64 * x;
                match kind {
                    TrigKind::Const => c,
                    TrigKind::Sin => c * fx.sin(),
                    TrigKind::Cos => c * fx.cos(),
                }
            })
            .sum()
    }

    /// Exact value at `x = 0`.
    pub fn eval_at_zero(&self) -> BigRational {
        self.terms
            .iter()
            .filter(|((kind, _), _)| *kind != TrigKind::Sin)
            .map(|(_, c)| c.clone())
            .sum()
    }

    /// Exact value at `x = π`, using `sin kπ = 0` and `cos kπ = (-1)^k`.
    pub fn eval_at_pi(&self) -> BigRational {
        self.terms
            .iter()
            .map(|(&(kind, f), c)| match kind {
                TrigKind::Const => c.clone(),
                TrigKind::Sin => BigRational::zero(),
                TrigKind::Cos if f % 2 == 0 => c.clone(),
                TrigKind::Cos => -c,
            })
            .sum()
    }

    /// Term-by-term `d/dx`.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (&(kind, f), c) in &self.terms {
            let fr = BigRational::from_integer(BigInt::from(f));
            match kind {
                TrigKind::Const => {}
                TrigKind::Sin => out.add_term(TrigKind::Cos, f as i64, c * fr),
                TrigKind::Cos => out.add_term(TrigKind::Sin, f as i64, -(c * fr)),
            }
        }
        out
    }

    pub fn nth_derivative(&self, h: u32) -> Self {
        (0..h).fold(self.clone(), |acc, _| acc.derivative())
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (&(kind, freq), c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let c = c.abs();
            let arg = if freq == 1 { "x".to_string() } else { format!("{freq}x") };
            match kind {
                TrigKind::Const => write!(f, "{c}")?,
                TrigKind::Sin => write!(f, "{c}*sin({arg})")?,
                TrigKind::Cos => write!(f, "{c}*cos({arg})")?,
            }
        }
        Ok(())
    }
}

fn pow2(n: u32) -> BigRational {
    BigRational::from_integer(BigInt::one() << n)
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Power reduction of `sin^a(p·x)`.
///
/// ```
/// use sincint::trig::{sin_power_expand, TrigKind};
/// // sin³u = (3 sin u − sin 3u)/4
/// let poly = sin_power_expand(3, 1).unwrap();
/// assert_eq!(poly.to_string(), "3/4*sin(x) - 1/4*sin(3x)");
/// assert!(!poly.has_kind(TrigKind::Cos));
/// ```
pub fn sin_power_expand(a: u32, p: u64) -> Result<TrigPoly, DomainError> {
    if a == 0 {
        return Err(DomainError::constraint("a >= 1", "sine power must be positive"));
    }
    let odd = a % 2 == 1;
    let mut out = TrigPoly::zero();
    if !odd {
        out.add_term(
            TrigKind::Const,
            0,
            BigRational::from_integer(binomial(a, i64::from(a / 2))) / pow2(a),
        );
    }
    let kind = if odd { TrigKind::Sin } else { TrigKind::Cos };
    for i in 0..=(a - 1) / 2 {
        let sign = neg_one_pow(u64::from(a / 2 - i));
        let coeff =
            BigRational::from_integer(binomial(a, i64::from(i)) * sign) * int(2) / pow2(a);
        out.add_term(kind, i64::from(a - 2 * i) * p as i64, coeff);
    }
    Ok(out)
}

/// Power reduction of `cos^c(q·x)`; `c = 0` gives the constant 1.
pub fn cos_power_expand(c: u32, q: u64) -> TrigPoly {
    if c == 0 {
        return TrigPoly::constant(BigRational::one());
    }
    let mut out = TrigPoly::zero();
    if c % 2 == 0 {
        out.add_term(
            TrigKind::Const,
            0,
            BigRational::from_integer(binomial(c, i64::from(c / 2))) / pow2(c),
        );
    }
    for i in 0..=(c - 1) / 2 {
        let coeff = BigRational::from_integer(binomial(c, i64::from(i))) * int(2) / pow2(c);
        out.add_term(TrigKind::Cos, i64::from(c - 2 * i) * q as i64, coeff);
    }
    out
}

/// Pointwise product re-expanded with the product-to-sum identities.
pub fn trig_product(u: &TrigPoly, v: &TrigPoly) -> TrigPoly {
    use TrigKind::*;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut out = TrigPoly::zero();
    for (&(ku, fu), cu) in &u.terms {
        for (&(kv, fv), cv) in &v.terms {
            let c = cu * cv;
            let (fu, fv) = (fu as i64, fv as i64);
            match (ku, kv) {
                (Const, _) => out.add_term(kv, fv, c),
                (_, Const) => out.add_term(ku, fu, c),
                (Sin, Sin) => {
                    let c = c * &half;
                    out.add_term(Cos, fu - fv, c.clone());
                    out.add_term(Cos, fu + fv, -c);
                }
                (Cos, Cos) => {
                    let c = c * &half;
                    out.add_term(Cos, fu - fv, c.clone());
                    out.add_term(Cos, fu + fv, c);
                }
                (Sin, Cos) => {
                    let c = c * &half;
                    out.add_term(Sin, fu + fv, c.clone());
                    out.add_term(Sin, fu - fv, c);
                }
                (Cos, Sin) => {
                    let c = c * &half;
                    out.add_term(Sin, fu + fv, c.clone());
                    out.add_term(Sin, fu - fv, -c);
                }
            }
        }
    }
    out
}

/// One summand `weight · (L)^h · {sin|cos}(L·x)` of the reduced expansion of
/// `sin^a(px) cos^c(qx)`, before the common `(-1)^…/2^{a+c-1}` prefactor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ReducedTerm {
    pub frequency: i64,
    pub weight: BigInt,
}

/// The three groups of the reduced expansion: the `(1-t)·C(c,c/2)` group
/// over `(a-2i)p`, the double sum over `(a-2i)p ± (c-2j)q` and the
/// `(1-s)·C(a,a/2)` group over `(c-2i)q`. Frequencies keep their sign.
pub(crate) fn reduced_terms(a: u32, c: u32, p: u64, q: u64) -> Vec<ReducedTerm> {
    let (p, q) = (p as i64, q as i64);
    let sign_a = BigInt::from(neg_one_pow(u64::from(a / 2)));
    let mut out = Vec::new();
    let i_max = (a - 1) / 2;
    if c % 2 == 0 {
        let c_mid = binomial(c, i64::from(c / 2));
        for i in 0..=i_max {
            out.push(ReducedTerm {
                frequency: i64::from(a - 2 * i) * p,
                weight: &sign_a * neg_one_pow(u64::from(i)) * binomial(a, i64::from(i)) * &c_mid,
            });
        }
    }
    if c >= 1 {
        for i in 0..=i_max {
            let ai = &sign_a * neg_one_pow(u64::from(i)) * binomial(a, i64::from(i));
            let fa = i64::from(a - 2 * i) * p;
            for j in 0..=(c - 1) / 2 {
                let w = &ai * binomial(c, i64::from(j));
                let fc = i64::from(c - 2 * j) * q;
                out.push(ReducedTerm {
                    frequency: fa + fc,
                    weight: w.clone(),
                });
                out.push(ReducedTerm {
                    frequency: fa - fc,
                    weight: w,
                });
            }
        }
    }
    if a % 2 == 0 && c >= 1 {
        let a_mid = binomial(a, i64::from(a / 2));
        for i in 0..=(c - 1) / 2 {
            out.push(ReducedTerm {
                frequency: i64::from(c - 2 * i) * q,
                weight: &a_mid * binomial(c, i64::from(i)),
            });
        }
    }
    out
}

/// `L^h` with `0^0 = 1`.
pub(crate) fn int_pow(l: i64, h: u32) -> BigInt {
    num_traits::pow(BigInt::from(l), h as usize)
}

/// `d^h/dx^h [sin^a(px) cos^c(qx)]` instantiated from the closed-form
/// derivative expansions: sine terms when `a` and `h` differ in parity,
/// constant and cosine terms otherwise.
///
/// [`derivative_by_differentiation`] computes the same polynomial by
/// differentiating the product expansion; the two always agree exactly.
pub fn derivative_expansion(a: u32, c: u32, p: u64, q: u64, h: u32) -> Result<TrigPoly, DomainError> {
    if a == 0 {
        return Err(DomainError::constraint("a >= 1", "sine power must be positive"));
    }
    let same = a % 2 == h % 2;
    let (kind, sign_h) = if same {
        (TrigKind::Cos, neg_one_pow(u64::from(h / 2)))
    } else {
        (TrigKind::Sin, neg_one_pow(u64::from((h + 1) / 2)))
    };
    let mut sum = TrigPoly::zero();
    for term in reduced_terms(a, c, p, q) {
        let coeff = term.weight * int_pow(term.frequency, h);
        sum.add_term(kind, term.frequency, BigRational::from_integer(coeff));
    }
    // The constant·constant product survives only undifferentiated.
    if h == 0 && a % 2 == 0 && c % 2 == 0 {
        let both = binomial(a, i64::from(a / 2)) * binomial(c, i64::from(c / 2));
        sum.add_term(
            TrigKind::Const,
            0,
            BigRational::new(both, BigInt::from(2)),
        );
    }
    Ok(sum.scale(&(int(i64::from(sign_h)) / pow2(a + c - 1))))
}

/// `d^h/dx^h [sin^a(px) cos^c(qx)]` by differentiating the product of the two
/// power reductions `h` times.
pub fn derivative_by_differentiation(
    a: u32,
    c: u32,
    p: u64,
    q: u64,
    h: u32,
) -> Result<TrigPoly, DomainError> {
    let product = trig_product(&sin_power_expand(a, p)?, &cos_power_expand(c, q));
    Ok(product.nth_derivative(h))
}
