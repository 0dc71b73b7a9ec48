//! Exact closed forms for
//!
//! ```text
//! I(a, b, c, p, q) = [Sign(p)]^a ∫₀^∞ sin^a(|p|x) cos^c(|q|x) / x^b dx,   a >= b >= 2, c >= 0,
//! ```
//!
//! as rational multiples of π (when `a` and `b` have the same parity) or
//! rational combinations of logarithms of primes (when they differ), plus an
//! independent quadrature oracle to check them against.
//!
//! ```
//! use sincint::{evaluate, IntegralParams};
//!
//! let params = IntegralParams::new(3, 3, 0, 1, 0)?;
//! assert_eq!(evaluate(&params)?.to_string(), "3/8*pi");
//! # Ok::<(), sincint::DomainError>(())
//! ```
//!
//! The guide in `book/` walks through each module; its code listings are
//! compiled and run as doctests of this crate.

pub mod error;
pub mod evaluator;
pub mod exact;
pub mod identities;
pub mod oracle;
pub mod params;
pub mod selftest;
pub mod trig;

pub use error::DomainError;
pub use evaluator::{evaluate, evaluate_case1, evaluate_case2, normalize_signs};
pub use exact::{BigRational, ExactValue};
pub use oracle::{quadrature, to_decimal, verify, VerifyReport};
pub use params::{IntegralParams, ParityCase};

// Book chapters double as doctests so their listings cannot drift.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-values.md")]
    mod exact_values {}
    #[doc = include_str!("../../../book/src/trig-reduction.md")]
    mod trig_reduction {}
    #[doc = include_str!("../../../book/src/identities.md")]
    mod identities {}
    #[doc = include_str!("../../../book/src/closed-forms.md")]
    mod closed_forms {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
