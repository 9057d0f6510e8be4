//! Finite-e estimators for the F-rational signature and its relative variant.
//!
//! Both are minima of normalized length drops
//!     (ℓ(R/(x)^[q]) - ℓ(R/((x) + V)^[q])) / (dim V · q^d)
//! over subspaces V of the socle of R/(x): lines for rsig, all nonzero
//! subspaces for csig. The csig candidates always include the rsig ones, so
//! csig ≤ rsig holds at every e even when sampling.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::linalg::Echelon;
use super::{dimension, level, q_pow_d, socle_basis, vs_length_finite};
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::groebner::{bracket_power, Ideal};
use crate::polyring::{Polynomial, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureEstimate {
    pub e: u32,
    pub q: u64,
    pub d: usize,
    pub value: BigRational,
    /// ℓ(R/(x)^[q]).
    pub base_length: BigInt,
    pub socle_dim: usize,
    /// Every candidate was tried (otherwise a seeded sample was).
    pub exhaustive: bool,
    pub candidates: u64,
    /// Basis of a minimizing subspace (a single u for rsig).
    pub minimizer: Vec<Polynomial>,
}

/// Subspace coordinates: rows in reduced row echelon form over the socle basis.
type Subspace = Vec<Vec<u64>>;

fn gaussian_binomial(s: usize, k: usize, p: u64) -> u128 {
    let p = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul(p.saturating_pow((s - i) as u32).saturating_sub(1));
        den = den.saturating_mul(p.saturating_pow((i + 1) as u32).saturating_sub(1));
    }
    if num == u128::MAX {
        return u128::MAX;
    }
    num / den
}

fn next_vector(digits: &mut [u64], p: u64) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

/// All lines, each as its vector with leading coordinate 1, in lexicographic order.
fn all_lines(s: usize, p: u64) -> Vec<Subspace> {
    let mut out = Vec::new();
    for lead in 0..s {
        let mut tail = vec![0u64; s - lead - 1];
        loop {
            let mut v = vec![0u64; s];
            v[lead] = 1;
            v[lead + 1..].copy_from_slice(&tail);
            out.push(vec![v]);
            if !next_vector(&mut tail, p) {
                break;
            }
        }
    }
    out
}

/// All subspaces of dimension k ≥ 2, by pivot pattern and free entries.
fn all_subspaces(s: usize, k: usize, p: u64) -> Vec<Subspace> {
    fn pivots(start: usize, s: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..s {
            cur.push(c);
            pivots(c + 1, s, k, cur, out);
            cur.pop();
        }
    }
    let mut patterns = Vec::new();
    pivots(0, s, k, &mut Vec::new(), &mut patterns);
    let mut out = Vec::new();
    for piv in patterns {
        // Free slots: (row, column) with column after the row's pivot and not a pivot column.
        let slots: Vec<(usize, usize)> = piv
            .iter()
            .enumerate()
            .flat_map(|(r, &c)| ((c + 1)..s).filter(|col| !piv.contains(col)).map(move |col| (r, col)))
            .collect();
        let mut digits = vec![0u64; slots.len()];
        loop {
            let mut rows = vec![vec![0u64; s]; k];
            for (r, &c) in piv.iter().enumerate() {
                rows[r][c] = 1;
            }
            for (&(r, col), &d) in slots.iter().zip(&digits) {
                rows[r][col] = d;
            }
            out.push(rows);
            if !next_vector(&mut digits, p) {
                break;
            }
        }
    }
    out
}

fn random_line(s: usize, field: &PrimeField, rng: &mut ChaCha8Rng) -> Subspace {
    loop {
        let v: Vec<u64> = (0..s).map(|_| rng.gen_range(0..field.characteristic())).collect();
        if let Some(lead) = v.iter().position(|&c| c != 0) {
            let inv = field.inv(v[lead]);
            return vec![v.iter().map(|&c| field.mul(c, inv)).collect()];
        }
    }
}

fn random_subspace(s: usize, field: &PrimeField, rng: &mut ChaCha8Rng) -> Subspace {
    loop {
        let k = rng.gen_range(2..=s);
        let mut ech = Echelon::new(*field, s);
        for _ in 0..k {
            ech.insert((0..s).map(|_| rng.gen_range(0..field.characteristic())).collect());
        }
        if ech.rank() == k {
            return ech.rows().map(<[u64]>::to_vec).collect();
        }
    }
}

/// Candidate lines: exhaustive within `cap`, else a deduplicated seeded sample.
fn line_candidates(s: usize, field: &PrimeField, cap: u64, rng: &mut ChaCha8Rng) -> (Vec<Subspace>, bool) {
    let count = gaussian_binomial(s, 1, field.characteristic());
    if count <= cap as u128 {
        return (all_lines(s, field.characteristic()), true);
    }
    let set: BTreeSet<Subspace> = (0..cap).map(|_| random_line(s, field, rng)).collect();
    (set.into_iter().collect(), false)
}

fn subspace_candidates(s: usize, field: &PrimeField, cap: u64, rng: &mut ChaCha8Rng) -> (Vec<Subspace>, bool) {
    let p = field.characteristic();
    let (mut out, lines_exhaustive) = line_candidates(s, field, cap, rng);
    if s < 2 {
        return (out, lines_exhaustive);
    }
    let higher: u128 = (2..=s)
        .map(|k| gaussian_binomial(s, k, p))
        .fold(0u128, u128::saturating_add);
    let room = cap.saturating_sub(out.len() as u64);
    if lines_exhaustive && higher <= room as u128 {
        for k in 2..=s {
            out.extend(all_subspaces(s, k, p));
        }
        return (out, true);
    }
    let set: BTreeSet<Subspace> = (0..room.max(1)).map(|_| random_subspace(s, field, rng)).collect();
    out.extend(set);
    (out, false)
}

fn combine(coords: &[u64], basis: &[Polynomial]) -> Result<Polynomial> {
    let mut acc = basis[0].ring().zero();
    for (c, b) in coords.iter().zip(basis) {
        if *c != 0 {
            acc = acc.add(&b.scale(*c))?;
        }
    }
    Ok(acc)
}

struct Setup {
    e: u32,
    q: u64,
    d: usize,
    scale: BigInt,
    base: Ideal,
    base_length: BigInt,
    socle: Vec<Polynomial>,
}

fn setup(i: &Ideal, sop: &[Polynomial], e: u32, d: Option<usize>, budget: &Budget) -> Result<Setup> {
    if e == 0 {
        return Err(Error::InvalidArgument("e must be at least 1".into()));
    }
    if sop.is_empty() {
        return Err(Error::InvalidArgument("the system of parameters is empty".into()));
    }
    let d = dimension(i, d, budget)?;
    let q = level(i.ring().characteristic(), e)?;
    let socle = socle_basis(i, sop, budget)?.residues;
    let sop_ideal = Ideal::new(i.ring(), sop.iter().cloned())?;
    // Reduced basis of I + (x)^[q], shared by every candidate.
    let base = i.sum(&bracket_power(&sop_ideal, q)?)?.minimalized(budget)?;
    let base_length = vs_length_finite(&base, budget)?;
    Ok(Setup {
        e,
        q,
        d,
        scale: q_pow_d(q, d),
        base,
        base_length,
        socle,
    })
}

fn minimize(st: &Setup, candidates: Vec<Subspace>, exhaustive: bool, budget: &Budget) -> Result<SignatureEstimate> {
    let q = st.q;
    let evaluated: Vec<Result<(BigRational, Vec<Polynomial>)>> = candidates
        .par_iter()
        .map(|rows| {
            let gens: Vec<Polynomial> = rows.iter().map(|r| combine(r, &st.socle)).collect::<Result<_>>()?;
            let powered: Vec<Polynomial> = gens.iter().map(|g| g.frobenius_power(q)).collect::<Result<_>>()?;
            let ideal = st.base.with_generators(powered)?;
            let len = vs_length_finite(&ideal, budget)?;
            let drop = &st.base_length - len;
            let value = BigRational::new(drop, &st.scale * BigInt::from(rows.len()));
            Ok((value, gens))
        })
        .collect();
    let mut best: Option<(BigRational, Vec<Polynomial>)> = None;
    for r in evaluated {
        let (value, gens) = r?;
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, gens));
        }
    }
    let (value, minimizer) =
        best.ok_or_else(|| Error::InvalidArgument("the socle is zero: (x) is the unit ideal".into()))?;
    Ok(SignatureEstimate {
        e: st.e,
        q,
        d: st.d,
        value,
        base_length: st.base_length.clone(),
        socle_dim: st.socle.len(),
        exhaustive,
        candidates: candidates.len() as u64,
        minimizer,
    })
}

/// min over socle lines u of (ℓ(R/(x)^[q]) - ℓ(R/((x), u)^[q])) / q^d.
/// Lines are enumerated when there are at most `cap` of them, otherwise
/// `cap` seeded draws are tried.
#[allow(clippy::too_many_arguments)]
pub fn rsig_estimate(
    i: &Ideal,
    sop: &[Polynomial],
    e: u32,
    cap: u64,
    seed: u64,
    d: Option<usize>,
    budget: &Budget,
) -> Result<SignatureEstimate> {
    let st = setup(i, sop, e, d, budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (cands, exhaustive) = line_candidates(st.socle.len(), i.ring().field(), cap, &mut rng);
    minimize(&st, cands, exhaustive, budget)
}

/// Same as [`rsig_estimate`] over all nonzero socle subspaces V, each drop
/// divided by dim V = ℓ(R/(x)) - ℓ(R/((x) + V)).
#[allow(clippy::too_many_arguments)]
pub fn csig_estimate(
    i: &Ideal,
    sop: &[Polynomial],
    e: u32,
    cap: u64,
    seed: u64,
    d: Option<usize>,
    budget: &Budget,
) -> Result<SignatureEstimate> {
    let st = setup(i, sop, e, d, budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (cands, exhaustive) = subspace_candidates(st.socle.len(), i.ring().field(), cap, &mut rng);
    minimize(&st, cands, exhaustive, budget)
}
