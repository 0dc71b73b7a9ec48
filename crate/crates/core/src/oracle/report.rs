use serde::{Serialize, Serializer};

use crate::error::DomainError;
use crate::evaluator::evaluate;
use crate::exact::ExactValue;
use crate::params::IntegralParams;

use super::decimal::{to_decimal, DEFAULT_DIGITS};
use super::quadrature::quadrature;

/// Exact value, its decimal rendering and the oracle's opinion of it.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub params: IntegralParams,
    pub exact: ExactValue,
    pub exact_decimal: f64,
    /// `None` when quadrature failed; `reason` then says why.
    pub oracle_estimate: Option<f64>,
    pub oracle_error_bound: Option<f64>,
    pub abs_diff: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub reason: Option<String>,
}

#[derive(Serialize)]
struct Wire<'a> {
    a: u32,
    b: u32,
    c: u32,
    p: i64,
    q: i64,
    exact: String,
    exact_decimal: f64,
    oracle: Option<f64>,
    error_bound: Option<f64>,
    abs_diff: Option<f64>,
    tol: f64,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'a str>,
}

impl Serialize for VerifyReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        Wire {
            a: self.params.a(),
            b: self.params.b(),
            c: self.params.c(),
            p: self.params.p(),
            q: self.params.q(),
            exact: self.exact.to_string(),
            exact_decimal: self.exact_decimal,
            oracle: self.oracle_estimate,
            error_bound: self.oracle_error_bound,
            abs_diff: self.abs_diff,
            tol: self.tolerance,
            pass: self.pass,
            reason: self.reason.as_deref(),
        }
        .serialize(serializer)
    }
}

/// Evaluate exactly, integrate numerically and compare.
pub fn verify(params: &IntegralParams, tol: f64) -> Result<VerifyReport, DomainError> {
    Ok(verify_value(params, evaluate(params)?, tol))
}

/// Compare a caller-supplied exact value against the oracle.
pub fn verify_value(params: &IntegralParams, exact: ExactValue, tol: f64) -> VerifyReport {
    let exact_decimal = to_decimal(&exact, DEFAULT_DIGITS);
    let mut report = VerifyReport {
        params: *params,
        exact,
        exact_decimal,
        oracle_estimate: None,
        oracle_error_bound: None,
        abs_diff: None,
        tolerance: tol,
        pass: false,
        reason: None,
    };
    match quadrature(params, tol) {
        Ok(q) => {
            let diff = (exact_decimal - q.estimate).abs();
            report.oracle_estimate = Some(q.estimate);
            report.oracle_error_bound = Some(q.error_bound);
            report.abs_diff = Some(diff);
            report.pass = diff <= tol + q.error_bound;
            if !report.pass {
                report.reason = Some(format!(
                    "|exact - oracle| = {diff:e} exceeds tol + error_bound = {:e}",
                    tol + q.error_bound
                ));
            }
        }
        Err(e) => report.reason = Some(e.to_string()),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::QuadratureError;

    fn params(a: i64, b: i64, c: i64, p: i64, q: i64) -> IntegralParams {
        IntegralParams::new(a, b, c, p, q).unwrap()
    }

    #[test]
    fn examples() {
        let rep = verify(&params(5, 3, 2, 2, 3), 1e-6).unwrap();
        assert!(rep.pass, "{rep:?}");
        let rep = verify(&params(2, 2, 0, 1, 0), 1e-6).unwrap();
        assert!(rep.pass && rep.abs_diff.unwrap() < 2e-6);
        let rep = verify(&params(3, 2, 0, 0, 1), 1e-6).unwrap();
        assert!(rep.pass);
        assert_eq!((rep.exact_decimal, rep.oracle_estimate), (0.0, Some(0.0)));
    }

    #[test]
    fn wrong_value_fails() {
        let pr = params(4, 4, 0, 1, 0);
        let rep = verify_value(&pr, -evaluate(&pr).unwrap(), 1e-6);
        assert!(!rep.pass);
        assert!(rep.reason.unwrap().contains("exceeds"));
    }

    #[test]
    fn quadrature_failure_is_reported() {
        let rep = verify(&params(2, 2, 0, 1, 0), 1e-12).unwrap();
        assert!(!rep.pass);
        assert_eq!(rep.oracle_estimate, None);
        assert_eq!(rep.reason.unwrap(), QuadratureError::Tolerance(1e-12).to_string());
    }

    #[test]
    fn json_field_names() {
        let rep = verify(&params(2, 2, 0, 1, 0), 1e-6).unwrap();
        let value: serde_json::Value = serde_json::to_value(&rep).unwrap();
        let mut keys: Vec<_> = value.as_object().unwrap().keys().cloned().collect();
        keys.sort();
        let mut expected = vec![
            "a", "b", "c", "p", "q", "exact", "exact_decimal", "oracle", "error_bound",
            "abs_diff", "tol", "pass",
        ];
        expected.sort();
        assert_eq!(keys, expected);
        assert_eq!(value["exact"], "1/2*pi");
        assert_eq!(value["pass"], true);
    }
}
