//! Direct numerical integration of `sin^a(|p|x) cos^c(|q|x) / x^b` on the
//! half line, independent of every expansion used by the evaluator.
//!
//! The integral is split at `X = 2πM`. On `[0, X]` the integrand is smooth
//! (its limit at 0 is finite because `a >= b`) and is integrated with
//! adaptive 15-point Gauss–Kronrod panels no wider than a quarter of the
//! shortest period. The numerator `P(x)` has period 2π, so on the tail
//! repeated integration by parts against periodic antiderivatives gives
//!
//! ```text
//! ∫_X^∞ P(x) x^{-b} dx = Σ_{k<K} [Π_{j<k}(b+j)] m_k X^{1-b-k}/(b+k-1) + R_K,
//! |R_K| <= [Π_{j<K}(b+j)] sup|Q_K| X^{1-b-K}/(b+K-1),
//! ```
//!
//! where `Q_0 = P`, `m_k` is the period mean of `Q_k` and
//! `Q_{k+1}(x) = ∫_X^x (Q_k - m_k)`. The means and the bounds on `sup|Q_k|`
//! come from the discrete Fourier transform of sampled values of `P`, which
//! is exact up to rounding because `P` is band limited by `a|p| + c|q|`.

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use thiserror::Error;

use crate::params::IntegralParams;

/// Default requested accuracy.
pub const DEFAULT_TOL: f64 = 1e-6;
/// Smallest tolerance the double-precision oracle accepts.
pub const MIN_TOL: f64 = 1e-8;

const KRONROD_NODES: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for Kronrod nodes 1, 3, 5 and the centre.
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_TAIL_LEVELS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureEstimate {
    pub estimate: f64,
    pub error_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("tolerance {0} is outside the supported range [1e-8, ∞)")]
    Tolerance(f64),
    #[error("panel budget of {budget} exhausted with error estimate {achieved:e} above {requested:e}")]
    PanelBudget {
        budget: usize,
        achieved: f64,
        requested: f64,
    },
    #[error("tail bound did not reach {requested:e} within {max_periods} periods")]
    TailUnreachable { max_periods: u64, requested: f64 },
}

/// Work limits for [`quadrature_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureBudget {
    /// Maximum number of Gauss–Kronrod panels evaluated on `[0, X]`.
    pub max_panels: usize,
    /// Maximum number of 2π periods before the tail expansion starts.
    pub max_periods: u64,
}

impl Default for QuadratureBudget {
    fn default() -> Self {
        QuadratureBudget {
            max_panels: 4_000_000,
            max_periods: 1_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Integrand {
    a: i32,
    b: i32,
    c: i32,
    p: f64,
    q: f64,
}

impl Integrand {
    fn new(params: &IntegralParams) -> Self {
        Integrand {
            a: params.a() as i32,
            b: params.b() as i32,
            c: params.c() as i32,
            p: params.p().unsigned_abs() as f64,
            q: params.q().unsigned_abs() as f64,
        }
    }

    fn numerator(&self, x: f64) -> f64 {
        (self.p * x).sin().powi(self.a) * (self.q * x).cos().powi(self.c)
    }

    fn value(&self, x: f64) -> f64 {
        if x == 0.0 {
            return if self.a == self.b { self.p.powi(self.a) } else { 0.0 };
        }
        let s = (self.p * x).sin();
        (s / x).powi(self.b) * s.powi(self.a - self.b) * (self.q * x).cos().powi(self.c)
    }
}

/// `(Kronrod estimate, |Kronrod − Gauss|, ∫|f| estimate)` on `[lo, hi]`.
fn gauss_kronrod(f: &Integrand, lo: f64, hi: f64) -> (f64, f64, f64) {
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f.value(centre);
    let mut kronrod = fc * KRONROD_WEIGHTS[7];
    let mut gauss = fc * GAUSS_WEIGHTS[3];
    let mut abs = fc.abs() * KRONROD_WEIGHTS[7];
    for (j, (&node, &weight)) in KRONROD_NODES[..7].iter().zip(&KRONROD_WEIGHTS[..7]).enumerate() {
        let dx = half * node;
        let (f1, f2) = (f.value(centre - dx), f.value(centre + dx));
        kronrod += weight * (f1 + f2);
        abs += weight * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += GAUSS_WEIGHTS[j / 2] * (f1 + f2);
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs(), abs * half)
}

#[derive(Default)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Period means and sup bounds of the repeated periodic antiderivatives.
struct PeriodicTail {
    b: u32,
    means: Vec<f64>,
    sups: Vec<f64>,
}

impl PeriodicTail {
    fn build(f: &Integrand, bandwidth: u64) -> Self {
        let n = ((2 * bandwidth + 2) as usize).next_power_of_two().max(32);
        let mut samples: Vec<Complex64> = (0..n)
            .map(|j| Complex64::new(f.numerator(2.0 * PI * j as f64 / n as f64), 0.0))
            .collect();
        FftPlanner::new().plan_fft_forward(n).process(&mut samples);
        let scale = 1.0 / n as f64;
        let mut modes: Vec<(f64, Complex64)> = (1..=bandwidth as usize)
            .flat_map(|k| [(k as f64, samples[k] * scale), (-(k as f64), samples[n - k] * scale)])
            .collect();
        let mean0 = samples[0].re * scale;
        let mut means = vec![mean0];
        let mut sups = vec![mean0.abs() + modes.iter().map(|(_, c)| c.norm()).sum::<f64>()];
        for _ in 0..MAX_TAIL_LEVELS {
            for (k, c) in modes.iter_mut() {
                *c /= Complex64::new(0.0, *k);
            }
            // Q_{k+1}(X) = 0 at every multiple of 2π fixes the constant term.
            let mean = -modes.iter().map(|(_, c)| c.re).sum::<f64>();
            means.push(mean);
            sups.push(mean.abs() + modes.iter().map(|(_, c)| c.norm()).sum::<f64>());
        }
        PeriodicTail {
            b: f.b as u32,
            means,
            sups,
        }
    }

    fn factor(&self, k: usize) -> f64 {
        let b = f64::from(self.b);
        let rising: f64 = (0..k).map(|j| b + j as f64).product();
        rising / (b + k as f64 - 1.0)
    }

    /// Best `(value, bound)` over the number of expansion levels.
    fn at(&self, x: f64) -> (f64, f64) {
        let b = f64::from(self.b);
        let mut best = (0.0, f64::INFINITY);
        for levels in 1..=MAX_TAIL_LEVELS {
            let bound = self.factor(levels) * self.sups[levels] * x.powf(1.0 - b - levels as f64);
            if bound < best.1 {
                let value: f64 = (0..levels)
                    .filter(|&k| !(self.b == 1 && k == 0))
                    .map(|k| self.factor(k) * self.means[k] * x.powf(1.0 - b - k as f64))
                    .sum();
                best = (value, bound);
            }
        }
        best
    }
}

/// Oracle estimate of the signed integral with default work limits.
pub fn quadrature(params: &IntegralParams, tol: f64) -> Result<QuadratureEstimate, QuadratureError> {
    quadrature_with(params, tol, &QuadratureBudget::default())
}

pub fn quadrature_with(
    params: &IntegralParams,
    tol: f64,
    budget: &QuadratureBudget,
) -> Result<QuadratureEstimate, QuadratureError> {
    if !(tol >= MIN_TOL) || !tol.is_finite() {
        return Err(QuadratureError::Tolerance(tol));
    }
    if params.p() == 0 {
        return Ok(QuadratureEstimate {
            estimate: 0.0,
            error_bound: 0.0,
        });
    }
    let f = Integrand::new(params);
    let bandwidth = params.max_frequency().max(1);

    let tail = PeriodicTail::build(&f, bandwidth);
    let tail_tol = 0.25 * tol;
    let mut chosen = None;
    for periods in 1..=budget.max_periods {
        let x = 2.0 * PI * periods as f64;
        let (value, bound) = tail.at(x);
        if bound <= tail_tol {
            chosen = Some((x, value, bound));
            break;
        }
    }
    let (big_x, tail_value, tail_bound) = chosen.ok_or(QuadratureError::TailUnreachable {
        max_periods: budget.max_periods,
        requested: tail_tol,
    })?;

    let head_tol = 0.5 * tol;
    let width = PI / (2.0 * bandwidth as f64);
    let initial = (big_x / width).ceil() as usize;
    let mut stack: Vec<(f64, f64)> = (0..initial)
        .rev()
        .map(|i| (i as f64 * big_x / initial as f64, (i + 1) as f64 * big_x / initial as f64))
        .collect();
    let mut head = Compensated::default();
    let mut head_err = 0.0;
    let mut head_abs = 0.0;
    let mut panels = 0usize;
    while let Some((lo, hi)) = stack.pop() {
        panels += 1;
        if panels > budget.max_panels {
            return Err(QuadratureError::PanelBudget {
                budget: budget.max_panels,
                achieved: head_err,
                requested: head_tol,
            });
        }
        let (value, err, abs) = gauss_kronrod(&f, lo, hi);
        let share = head_tol * (hi - lo) / big_x;
        if err <= share || hi - lo <= 1e-9 * big_x {
            head.add(value);
            head_err += err;
            head_abs += abs;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi));
            stack.push((lo, mid));
        }
    }

    let estimate = head.value() + tail_value;
    let rounding = 64.0 * f64::EPSILON * (head_abs + tail_value.abs());
    let error_bound = head_err + tail_bound + rounding;
    if error_bound > tol {
        return Err(QuadratureError::PanelBudget {
            budget: budget.max_panels,
            achieved: error_bound,
            requested: tol,
        });
    }
    let sign = if params.p() < 0 && params.a() % 2 == 1 { -1.0 } else { 1.0 };
    Ok(QuadratureEstimate {
        estimate: sign * estimate,
        error_bound,
    })
}
