//! Finite-e invariants. Every value is an exact rational `length / q^d`;
//! these are terms of sequences whose limits (Hilbert-Kunz multiplicity,
//! F-signature, F-rational signature) are never claimed.
//!
//! The residue field is always F_p, so the correction log_p[k : k^p] in the
//! F-signature normalization is 0 and the exponent is just d = dim R.

mod linalg;
mod signature;
mod socle;

pub use signature::{csig_estimate, rsig_estimate, SignatureEstimate};
pub use socle::{socle_basis, SocleBasis};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::frobenius::splitting_ideal;
use crate::groebner::{bracket_power, krull_dim, vs_length, Ideal, Length};

/// One term `length / q^d` of a normalized length sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HkEstimate {
    pub e: u32,
    pub q: u64,
    pub length: BigInt,
    pub d: usize,
    pub value: BigRational,
    /// |value(e) - value(e - 1)| for e ≥ 2.
    pub difference: Option<BigRational>,
}

pub(crate) fn level(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e)
        .filter(|&q| q <= u16::MAX as u64)
        .ok_or(Error::ExponentOverflow)
}

pub(crate) fn q_pow_d(q: u64, d: usize) -> BigInt {
    num_traits::pow(BigInt::from(q), d)
}

fn finite(len: Length) -> Result<BigInt> {
    match len {
        Length::Finite(n) => Ok(n),
        Length::Infinite => Err(Error::NotZeroDimensional),
    }
}

pub(crate) fn vs_length_finite(i: &Ideal, budget: &Budget) -> Result<BigInt> {
    finite(vs_length(i, budget)?)
}

/// Dimension used for normalization: the override if given, else dim S/I.
pub fn dimension(i: &Ideal, d: Option<usize>, budget: &Budget) -> Result<usize> {
    match d {
        Some(d) => Ok(d),
        None => krull_dim(i, budget),
    }
}

/// ℓ(S / (I + J^[q])), q = p^e.
pub fn hk_length(i: &Ideal, j: &Ideal, e: u32, budget: &Budget) -> Result<BigInt> {
    let q = level(i.ring().characteristic(), e)?;
    let k = i.sum(&bracket_power(j, q)?)?;
    finite(vs_length(&k, budget)?)
}

fn estimate_at(i: &Ideal, j: &Ideal, e: u32, d: usize, budget: &Budget) -> Result<HkEstimate> {
    let q = level(i.ring().characteristic(), e)?;
    let length = hk_length(i, j, e, budget)?;
    let value = BigRational::new(length.clone(), q_pow_d(q, d));
    Ok(HkEstimate {
        e,
        q,
        length,
        d,
        value,
        difference: None,
    })
}

/// ℓ(S/(I + J^[q])) / q^d with d = dim S/I unless overridden. For e ≥ 2 the
/// previous term is computed too and the gap is reported.
pub fn hk_estimate(i: &Ideal, j: &Ideal, e: u32, d: Option<usize>, budget: &Budget) -> Result<HkEstimate> {
    if e == 0 {
        return Err(Error::InvalidArgument("e must be at least 1".into()));
    }
    let d = dimension(i, d, budget)?;
    let mut est = estimate_at(i, j, e, d, budget)?;
    if e >= 2 {
        let prev = estimate_at(i, j, e - 1, d, budget)?;
        est.difference = Some((&est.value - &prev.value).abs());
    }
    Ok(est)
}

/// Free rank a_e of F^e_* R, the colength of the e-th splitting ideal
/// (0 when R does not split at level e).
pub fn free_rank(i: &Ideal, e: u32, budget: &Budget) -> Result<BigInt> {
    let s = splitting_ideal(i, e, budget)?;
    if s.is_unit(budget)? {
        return Ok(BigInt::zero());
    }
    finite(vs_length(&s, budget)?)
}

/// a_e / q^d.
pub fn fsig_estimate(i: &Ideal, e: u32, d: Option<usize>, budget: &Budget) -> Result<HkEstimate> {
    if e == 0 {
        return Err(Error::InvalidArgument("e must be at least 1".into()));
    }
    let d = dimension(i, d, budget)?;
    let q = level(i.ring().characteristic(), e)?;
    let length = free_rank(i, e, budget)?;
    let value = BigRational::new(length.clone(), q_pow_d(q, d));
    Ok(HkEstimate {
        e,
        q,
        length,
        d,
        value,
        difference: None,
    })
}

/// Finite-e splitting dimension and splitting ratio estimates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdimEstimate {
    pub e1: u32,
    pub e2: u32,
    pub a1: BigInt,
    pub a2: BigInt,
    /// -1 when R does not split at level e2.
    pub sdim: i64,
    pub rf: BigRational,
}

/// Nearest integer s to log_p(a2/a1) / k, decided by exact comparisons:
/// s is the unique integer with p^{(2s-1)k} ≤ (a2/a1)^2 < p^{(2s+1)k}.
/// Clamped at 0, since a split ring has sdim ≥ 0.
fn rounded_log_ratio(a1: &BigInt, a2: &BigInt, p: u64, k: u32) -> i64 {
    let lhs = a2 * a2;
    let a1sq = a1 * a1;
    let pk = num_traits::pow(BigInt::from(p), k as usize);
    // Upper threshold p^{(2s+1)k}; start at s = 0.
    let mut s: i64 = 0;
    let mut upper = &a1sq * &pk;
    while lhs >= upper {
        s += 1;
        upper = upper * &pk * &pk;
    }
    s
}

pub fn sdim_rf_estimate(i: &Ideal, e1: u32, e2: u32, budget: &Budget) -> Result<SdimEstimate> {
    if e1 == 0 || e2 <= e1 {
        return Err(Error::InvalidArgument("need e2 > e1 ≥ 1".into()));
    }
    let p = i.ring().characteristic();
    let a2 = free_rank(i, e2, budget)?;
    let a1 = free_rank(i, e1, budget)?;
    if a2.is_zero() || a1.is_zero() {
        return Ok(SdimEstimate {
            e1,
            e2,
            a1,
            a2,
            sdim: -1,
            rf: BigRational::zero(),
        });
    }
    let sdim = rounded_log_ratio(&a1, &a2, p, e2 - e1);
    let denom = num_traits::pow(BigInt::from(p), (e2 as usize) * sdim as usize);
    let rf = BigRational::new(a2.clone(), denom);
    Ok(SdimEstimate {
        e1,
        e2,
        a1,
        a2,
        sdim,
        rf,
    })
}
