//! Bulk certification: the identity sweep plus the oracle agreement grid.

use rayon::prelude::*;

use crate::error::DomainError;
use crate::exact::ExactValue;
use crate::identities::identity_sweep;
use crate::oracle::verify_value;
use crate::params::IntegralParams;

/// Parameter grid `2 <= a <= max_a`, `2 <= b <= a`, `c <= max_c`,
/// `1 <= p <= max_p`, `0 <= q <= max_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridBounds {
    pub max_a: u32,
    pub max_c: u32,
    pub max_p: u32,
    pub max_q: u32,
}

impl Default for GridBounds {
    fn default() -> Self {
        GridBounds {
            max_a: 10,
            max_c: 4,
            max_p: 5,
            max_q: 5,
        }
    }
}

impl GridBounds {
    pub fn params(&self) -> Vec<IntegralParams> {
        let mut out = Vec::new();
        for a in 2..=i64::from(self.max_a) {
            for b in 2..=a {
                for c in 0..=i64::from(self.max_c) {
                    for p in 1..=i64::from(self.max_p) {
                        for q in 0..=i64::from(self.max_q) {
                            out.push(IntegralParams::new(a, b, c, p, q).expect("grid is valid"));
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SelftestConfig {
    /// Bounds `(max_a, max_c, max_p, max_q)` of the identity sweep.
    pub identity: (u32, u32, u64, u64),
    pub grid: GridBounds,
    /// Quadrature tolerance; agreement is required within twice this.
    pub tol: f64,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            identity: (20, 6, 7, 7),
            grid: GridBounds::default(),
            tol: 1e-6,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SelftestSummary {
    pub identity_checked: usize,
    pub identity_failures: usize,
    pub grid_checked: usize,
    pub grid_failures: usize,
    /// Human-readable description of the first failing tuple, in
    /// enumeration order.
    pub first_failure: Option<String>,
}

impl SelftestSummary {
    pub fn passed(&self) -> bool {
        self.identity_failures == 0 && self.grid_failures == 0
    }
}

/// Run both checks using `evaluator` for the exact side of the grid.
pub fn run_selftest<F>(config: &SelftestConfig, evaluator: F) -> SelftestSummary
where
    F: Fn(&IntegralParams) -> Result<ExactValue, DomainError> + Sync,
{
    let (ma, mc, mp, mq) = config.identity;
    let sweep = identity_sweep(ma, mc, mp, mq);
    let mut summary = SelftestSummary {
        identity_checked: sweep.checked(),
        identity_failures: sweep.failures().count(),
        ..SelftestSummary::default()
    };
    if let Some(r) = sweep.failures().next() {
        summary.first_failure = Some(format!(
            "identity a={} c={} p={} q={} h={} is nonzero",
            r.a, r.c, r.p, r.q, r.h
        ));
    }

    let grid = config.grid.params();
    let limit = 2.0 * config.tol;
    let failures: Vec<Option<String>> = grid
        .par_iter()
        .map(|params| {
            let describe = |what: String| {
                Some(format!(
                    "grid a={} b={} c={} p={} q={}: {what}",
                    params.a(),
                    params.b(),
                    params.c(),
                    params.p(),
                    params.q()
                ))
            };
            match evaluator(params) {
                Err(e) => describe(e.to_string()),
                Ok(exact) => {
                    let report = verify_value(params, exact, config.tol);
                    match report.abs_diff {
                        Some(d) if d <= limit => None,
                        Some(d) => describe(format!("|exact - oracle| = {d:e} > {limit:e}")),
                        None => describe(report.reason.unwrap_or_default()),
                    }
                }
            }
        })
        .collect();
    summary.grid_checked = grid.len();
    summary.grid_failures = failures.iter().filter(|f| f.is_some()).count();
    if summary.first_failure.is_none() {
        summary.first_failure = failures.into_iter().flatten().next();
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluate;

    fn small() -> SelftestConfig {
        SelftestConfig {
            identity: (4, 2, 2, 2),
            grid: GridBounds {
                max_a: 4,
                max_c: 2,
                max_p: 2,
                max_q: 2,
            },
            tol: 1e-6,
        }
    }

    #[test]
    fn grid_enumeration() {
        let g = GridBounds {
            max_a: 3,
            max_c: 1,
            max_p: 1,
            max_q: 1,
        };
        assert_eq!(g.params().len(), 3 * 2 * 1 * 2);
        assert_eq!(GridBounds::default().params().len(), 45 * 5 * 5 * 6);
    }

    #[test]
    fn small_run_passes() {
        let summary = run_selftest(&small(), evaluate);
        assert!(summary.passed(), "{summary:?}");
        assert!(summary.identity_checked > 0 && summary.grid_checked > 0);
    }

    #[test]
    fn negated_prefactor_is_caught() {
        let summary = run_selftest(&small(), |p: &IntegralParams| evaluate(p).map(|v| -v));
        assert!(!summary.passed());
        assert!(summary.grid_failures > 0);
        assert!(summary.first_failure.unwrap().starts_with("grid a=2 b=2 c=0 p=1 q=0"));
    }
}
