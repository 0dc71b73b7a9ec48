//! Independent floating-point verification of exact results.

mod decimal;
mod quadrature;
mod report;

pub use decimal::{to_decimal, DEFAULT_DIGITS};
pub use quadrature::{
    quadrature, quadrature_with, QuadratureBudget, QuadratureError, QuadratureEstimate, DEFAULT_TOL,
    MIN_TOL,
};
pub use report::{verify, verify_value, VerifyReport};
