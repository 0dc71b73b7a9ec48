//! Closed forms of `I = [Sign(p)]^a ∫₀^∞ sin^a(|p|x) cos^c(|q|x) / x^b dx`.
//!
//! Integrating by parts moves `b - 1` (same parity) or `b - 2` (opposite
//! parity) derivatives onto the numerator. With the numerator written as a
//! sum of `sin(L·x)` terms, the remaining integrals are elementary:
//!
//! * same parity: `∫ sin(Lx)/x dx = Sign(L)·π/2`, so `I` is a rational
//!   multiple of π;
//! * opposite parity: `∫ sin(Lx)/x² dx` diverges like `L·(1 + ln v - ln|L|)`
//!   as the cutoff `v → ∞`, but the divergent parts sum to a multiple of the
//!   boundary identity (see [`crate::identities`]) and cancel, leaving
//!   `Σ weight·L^{b-1}·ln|L|`.
//!
//! Terms with `L = 0` contribute nothing in either case.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::DomainError;
use crate::exact::{neg_one_pow, BigRational, ExactValue};
use crate::params::{IntegralParams, ParityCase};
use crate::trig::{int_pow, reduced_terms};

/// `[Sign(p)]^a` together with the parameters with `p, q` replaced by their
/// absolute values. `Sign(0)` counts as `+1`.
pub fn normalize_signs(params: &IntegralParams) -> (i32, IntegralParams) {
    let sign = if params.p() < 0 && params.a() % 2 == 1 { -1 } else { 1 };
    let normalized = params
        .with_frequencies(params.p().abs(), params.q().abs())
        .expect("absolute values stay within the validated span");
    (sign, normalized)
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn nonnegative(params: &IntegralParams) -> Result<(u64, u64), DomainError> {
    if params.p() < 0 || params.q() < 0 {
        return Err(DomainError::constraint(
            "p >= 0 and q >= 0",
            "normalize signs before calling a case formula",
        ));
    }
    Ok((params.p() as u64, params.q() as u64))
}

/// Same-parity closed form: a pure π term.
pub fn evaluate_case2(params: &IntegralParams) -> Result<ExactValue, DomainError> {
    if params.case() != ParityCase::SameParity {
        return Err(DomainError::constraint(
            "a ≡ b (mod 2)",
            format!("a = {}, b = {}", params.a(), params.b()),
        ));
    }
    let (p, q) = nonnegative(params)?;
    let (a, b, c) = (params.a(), params.b(), params.c());
    let mut braced = BigInt::zero();
    for term in reduced_terms(a, c, p, q) {
        if term.frequency == 0 {
            continue;
        }
        let contribution = term.weight * int_pow(term.frequency, b - 1);
        if term.frequency > 0 {
            braced += contribution;
        } else {
            braced -= contribution;
        }
    }
    let denom = (BigInt::one() << (a + c)) * factorial(b - 1);
    let prefactor = BigRational::new(BigInt::from(neg_one_pow(u64::from(b / 2))), denom);
    Ok(ExactValue::pi(prefactor * BigRational::from_integer(braced)))
}

/// Opposite-parity closed form: a rational combination of `ln ρ`.
pub fn evaluate_case1(params: &IntegralParams) -> Result<ExactValue, DomainError> {
    if params.case() != ParityCase::OppositeParity {
        return Err(DomainError::constraint(
            "a ≢ b (mod 2)",
            format!("a = {}, b = {}", params.a(), params.b()),
        ));
    }
    let (p, q) = nonnegative(params)?;
    let (a, b, c) = (params.a(), params.b(), params.c());
    let mut braced = ExactValue::zero();
    for term in reduced_terms(a, c, p, q) {
        if term.frequency == 0 {
            continue;
        }
        let coeff = BigRational::from_integer(term.weight * int_pow(term.frequency, b - 1));
        braced.add_log_assign(term.frequency.unsigned_abs(), &coeff);
    }
    let denom = (BigInt::one() << (a + c - 1)) * factorial(b - 1);
    let prefactor = BigRational::new(BigInt::from(neg_one_pow(u64::from((b + 1) / 2))), denom);
    Ok(braced.scale(&prefactor))
}

/// Exact value of the integral described by `params`.
///
/// ```
/// use sincint::{evaluate, IntegralParams};
/// let v = evaluate(&IntegralParams::new(3, 2, 0, 1, 0).unwrap()).unwrap();
/// assert_eq!(v.to_string(), "3/4*ln(3)");
/// ```
pub fn evaluate(params: &IntegralParams) -> Result<ExactValue, DomainError> {
    let (sign, normalized) = normalize_signs(params);
    if normalized.p() == 0 {
        return Ok(ExactValue::zero());
    }
    let value = match normalized.case() {
        ParityCase::SameParity => evaluate_case2(&normalized)?,
        ParityCase::OppositeParity => evaluate_case1(&normalized)?,
    };
    Ok(if sign < 0 { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: i64, b: i64, c: i64, p: i64, q: i64) -> IntegralParams {
        IntegralParams::new(a, b, c, p, q).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn pi(n: i64, d: i64) -> ExactValue {
        ExactValue::pi(r(n, d))
    }

    fn ln(m: i64, n: i64, d: i64) -> ExactValue {
        ExactValue::log_of_integer(m, &r(n, d)).unwrap()
    }

    #[test]
    fn sign_normalisation() {
        let (s, n) = normalize_signs(&params(3, 2, 0, -1, 2));
        assert_eq!((s, n.p(), n.q()), (-1, 1, 2));
        let (s, n) = normalize_signs(&params(4, 2, 0, -2, -3));
        assert_eq!((s, n.p(), n.q()), (1, 2, 3));
        let (s, n) = normalize_signs(&params(3, 3, 0, 0, 1));
        assert_eq!((s, n.p(), n.q()), (1, 0, 1));
    }

    #[test]
    fn same_parity_values() {
        assert_eq!(evaluate_case2(&params(2, 2, 0, 1, 0)).unwrap(), pi(1, 2));
        assert_eq!(evaluate_case2(&params(4, 4, 0, 1, 0)).unwrap(), pi(1, 3));
        assert_eq!(evaluate_case2(&params(3, 3, 0, 1, 0)).unwrap(), pi(3, 8));
        // sin x cos x = ½ sin 2x, so the integrand is ¼ sin²(2x)/x²
        assert_eq!(evaluate_case2(&params(2, 2, 2, 1, 1)).unwrap(), pi(1, 4));
        // d/dx sin⁴x = 4 sin³x cos x = sin 2x − ½ sin 4x, giving (π/2 − π/4)
        assert_eq!(evaluate(&params(4, 2, 0, 1, 0)).unwrap(), pi(1, 4));
        assert!(evaluate(&params(2, 2, 0, 0, 0)).unwrap().is_zero());
    }

    #[test]
    fn opposite_parity_values() {
        assert_eq!(evaluate_case1(&params(3, 2, 0, 1, 0)).unwrap(), ln(3, 3, 4));
        assert_eq!(evaluate_case1(&params(3, 2, 0, 2, 0)).unwrap(), ln(3, 3, 2));
        assert!(evaluate(&params(3, 2, 0, 0, 5)).unwrap().is_zero());
        assert_eq!(evaluate(&params(3, 2, 0, -1, 0)).unwrap(), ln(3, -3, 4));
    }

    #[test]
    fn frequency_zero_formulas_vanish_without_short_circuit() {
        for a in 2..=9 {
            for b in 2..=a {
                for c in 0..=4 {
                    for q in 0..=3 {
                        let pr = params(a, b, c, 0, q);
                        let v = match pr.case() {
                            ParityCase::SameParity => evaluate_case2(&pr),
                            ParityCase::OppositeParity => evaluate_case1(&pr),
                        };
                        assert!(v.unwrap().is_zero(), "{pr:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn case_functions_check_preconditions() {
        assert!(evaluate_case2(&params(3, 2, 0, 1, 0)).is_err());
        assert!(evaluate_case1(&params(3, 3, 0, 1, 0)).is_err());
        assert_eq!(
            evaluate_case2(&params(3, 3, 0, -1, 0)).unwrap_err().violated(),
            "p >= 0 and q >= 0"
        );
    }

    #[test]
    fn b1_extension() {
        let v = evaluate(&IntegralParams::with_b1(1, 1, 0, 1, 0).unwrap()).unwrap();
        assert_eq!(v, pi(1, 2));
        let v = evaluate(&IntegralParams::with_b1(3, 1, 0, 1, 0).unwrap()).unwrap();
        assert_eq!(v, pi(1, 4));
        let v = evaluate(&IntegralParams::with_b1(1, 1, 0, -7, 0).unwrap()).unwrap();
        assert_eq!(v, pi(-1, 2));
    }
}
