//! Exact zero-sums obtained from `d^h/dx^h [sin^a(px) cos^c(qx)]` at `x = π`.
//!
//! Every term of that derivative carries a factor `sin^{a-h}(px)`, so it
//! vanishes at `x = π` whenever `a - h >= 1`. Written out through the cosine
//! form of the derivative this becomes a binomial sum that must equal zero.
//! The sums here are assembled directly from binomials and integer powers,
//! deliberately without going through [`crate::trig`], so they serve as an
//! independent certificate of the cancellation the log-valued closed form
//! depends on.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::DomainError;
use crate::exact::{binomial, neg_one_pow, BigRational};

/// The separately summed pieces of the boundary identity, before the
/// parity-dependent sign factors are applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityParts {
    /// `(1-t)·C(c,c/2)·Σ_i (-1)^i C(a,i) [(a-2i)p]^h`
    pub sine_group: BigInt,
    /// `Σ_i Σ_j (-1)^i C(a,i) C(c,j) ([(a-2i)p + (c-2j)q]^h + [(a-2i)p - (c-2j)q]^h)`
    pub cross_group: BigInt,
    /// `(1-s)·C(a,a/2)·Σ_i C(c,i) [(c-2i)q]^h`
    pub cosine_group: BigInt,
    /// `(1-s)(1-t)·C(a,a/2)·C(c,c/2)/2`, present only for `h = 0`: the
    /// constant·constant product that every derivative annihilates.
    pub constant: BigRational,
    sign_a: i32,
    sign_ap: i32,
    sign_cq: i32,
}

impl IdentityParts {
    /// Combine with the signs `cos(kπ) = (-1)^k` prescribes:
    /// `(-1)^{⌊a/2⌋+ap}[sine + (-1)^{cq} cross] + (-1)^{cq} cosine + constant`.
    pub fn combine(&self) -> BigRational {
        self.combine_with(self.sign_ap, self.sign_cq)
    }

    /// Combine with caller-chosen values for `(-1)^{ap}` and `(-1)^{cq}`.
    pub fn combine_with(&self, sign_ap: i32, sign_cq: i32) -> BigRational {
        let lead = self.sign_a * sign_ap;
        let ints = (&self.sine_group + &self.cross_group * sign_cq) * lead
            + &self.cosine_group * sign_cq;
        BigRational::from_integer(ints) + &self.constant
    }

    /// The literal `(-1)^{ap}` and `(-1)^{cq}`.
    pub fn signs(&self) -> (i32, i32) {
        (self.sign_ap, self.sign_cq)
    }
}

fn check_domain(a: u32, h: u32) -> Result<(), DomainError> {
    let detail = || format!("a = {a}, h = {h}");
    if a < 2 {
        return Err(DomainError::constraint("a >= 2", detail()));
    }
    if h > a - 2 {
        return Err(DomainError::constraint("h <= a - 2", detail()));
    }
    if h % 2 != a % 2 {
        return Err(DomainError::constraint("h ≡ a (mod 2)", detail()));
    }
    Ok(())
}

fn ipow(base: i64, h: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), h as usize)
}

pub fn boundary_identity_parts(a: u32, c: u32, p: u64, q: u64, h: u32) -> Result<IdentityParts, DomainError> {
    check_domain(a, h)?;
    let (pi, qi) = (p as i64, q as i64);
    let i_max = (a - 1) / 2;
    let a_even = a % 2 == 0;
    let c_even = c % 2 == 0;

    let mut sine_group = BigInt::zero();
    if c_even {
        for i in 0..=i_max {
            sine_group += binomial(a, i64::from(i))
                * neg_one_pow(u64::from(i))
                * ipow(i64::from(a - 2 * i) * pi, h);
        }
        sine_group *= binomial(c, i64::from(c / 2));
    }

    let mut cross_group = BigInt::zero();
    if c >= 1 {
        for i in 0..=i_max {
            let fa = i64::from(a - 2 * i) * pi;
            let ai = binomial(a, i64::from(i)) * neg_one_pow(u64::from(i));
            for j in 0..=(c - 1) / 2 {
                let fc = i64::from(c - 2 * j) * qi;
                cross_group += &ai * binomial(c, i64::from(j)) * (ipow(fa + fc, h) + ipow(fa - fc, h));
            }
        }
    }

    let mut cosine_group = BigInt::zero();
    if a_even && c >= 1 {
        for i in 0..=(c - 1) / 2 {
            cosine_group += binomial(c, i64::from(i)) * ipow(i64::from(c - 2 * i) * qi, h);
        }
        cosine_group *= binomial(a, i64::from(a / 2));
    }

    let constant = if h == 0 && a_even && c_even {
        BigRational::new(
            binomial(a, i64::from(a / 2)) * binomial(c, i64::from(c / 2)),
            BigInt::from(2),
        )
    } else {
        BigRational::zero()
    };

    Ok(IdentityParts {
        sine_group,
        cross_group,
        cosine_group,
        constant,
        sign_a: neg_one_pow(u64::from(a / 2)),
        sign_ap: neg_one_pow(u64::from(a % 2) * (p % 2)),
        sign_cq: neg_one_pow(u64::from(c % 2) * (q % 2)),
    })
}

/// The boundary combination for `(a, c, p, q, h)`; exactly zero on its
/// domain `a >= 2`, `0 <= h <= a-2`, `h ≡ a (mod 2)`.
///
/// ```
/// use sincint::identities::boundary_identity_sum;
/// use num_traits::Zero;
/// assert!(boundary_identity_sum(12, 6, 7, 5, 10).unwrap().is_zero());
/// assert!(boundary_identity_sum(5, 3, 2, 3, 2).is_err()); // parity
/// ```
pub fn boundary_identity_sum(a: u32, c: u32, p: u64, q: u64, h: u32) -> Result<BigRational, DomainError> {
    Ok(boundary_identity_parts(a, c, p, q, h)?.combine())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityRecord {
    pub a: u32,
    pub c: u32,
    pub p: u64,
    pub q: u64,
    pub h: u32,
    pub value_is_zero: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepReport {
    /// One record per tuple, in enumeration order.
    pub records: Vec<IdentityRecord>,
}

impl SweepReport {
    pub fn checked(&self) -> usize {
        self.records.len()
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityRecord> {
        self.records.iter().filter(|r| !r.value_is_zero)
    }

    pub fn all_zero(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// Every valid `(a, c, p, q, h)` with `2 <= a <= max_a`, `c <= max_c`,
/// `p <= max_p`, `q <= max_q`, ordered by `a, c, p, q, h`.
pub fn sweep_tuples(max_a: u32, max_c: u32, max_p: u64, max_q: u64) -> Vec<(u32, u32, u64, u64, u32)> {
    let mut out = Vec::new();
    for a in 2..=max_a {
        for c in 0..=max_c {
            for p in 0..=max_p {
                for q in 0..=max_q {
                    for h in (a % 2..=a - 2).step_by(2) {
                        out.push((a, c, p, q, h));
                    }
                }
            }
        }
    }
    out
}

/// Exhaustive certification over [`sweep_tuples`]. Tuples are evaluated in
/// parallel; the report keeps enumeration order.
pub fn identity_sweep(max_a: u32, max_c: u32, max_p: u64, max_q: u64) -> SweepReport {
    let records = sweep_tuples(max_a, max_c, max_p, max_q)
        .into_par_iter()
        .map(|(a, c, p, q, h)| IdentityRecord {
            a,
            c,
            p,
            q,
            h,
            value_is_zero: boundary_identity_sum(a, c, p, q, h)
                .map(|v| v.is_zero())
                .unwrap_or(false),
        })
        .collect();
    SweepReport { records }
}
