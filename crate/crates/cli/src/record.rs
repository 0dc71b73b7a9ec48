use serde::Serialize;
use sincint::oracle::{to_decimal, DEFAULT_DIGITS};
use sincint::{ExactValue, IntegralParams, VerifyReport};

/// One evaluated case as printed by `eval` and `batch`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct OutputRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decimal: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_diff: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

impl OutputRecord {
    pub fn with_raw(raw: [i64; 5]) -> Self {
        let [a, b, c, p, q] = raw;
        OutputRecord {
            a: Some(a),
            b: Some(b),
            c: Some(c),
            p: Some(p),
            q: Some(q),
            ..Self::default()
        }
    }

    pub fn evaluated(params: &IntegralParams, value: &ExactValue) -> Self {
        let mut out = Self::with_raw([
            i64::from(params.a()),
            i64::from(params.b()),
            i64::from(params.c()),
            params.p(),
            params.q(),
        ]);
        out.exact = Some(value.to_string());
        out.decimal = Some(to_decimal(value, DEFAULT_DIGITS));
        out
    }

    pub fn attach_verify(&mut self, report: &VerifyReport) {
        self.oracle = report.oracle_estimate;
        self.error_bound = report.oracle_error_bound;
        self.abs_diff = report.abs_diff;
        self.tol = Some(report.tolerance);
        self.pass = Some(report.pass);
        if let (false, Some(reason)) = (report.pass, &report.reason) {
            self.error = Some(reason.clone());
        }
    }

    pub fn json(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }

    pub fn plain(&self) -> String {
        let mut out = String::new();
        if let (Some(a), Some(b), Some(c), Some(p), Some(q)) = (self.a, self.b, self.c, self.p, self.q) {
            out.push_str(&format!("{a} {b} {c} {p} {q}: "));
        } else if let Some(line) = self.line {
            out.push_str(&format!("line {line}: "));
        }
        match (&self.exact, self.decimal) {
            (Some(exact), Some(decimal)) => out.push_str(&format!("{exact} = {decimal}")),
            _ => {
                out.push_str(self.status.unwrap_or("error"));
                if let Some(e) = &self.error {
                    out.push_str(&format!(": {e}"));
                }
            }
        }
        if let Some(pass) = self.pass {
            out.push_str(if pass { " [pass]" } else { " [FAIL]" });
        }
        out
    }
}
