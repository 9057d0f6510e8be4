//! Combinatorics of the initial ideal: vector-space length, Krull dimension
//! and standard monomials.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::ideal::Ideal;
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::polyring::{Monomial, MonomialOrder, Polynomial};

/// Length of S/I: a natural number or infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Length {
    Finite(BigInt),
    Infinite,
}

impl Length {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Length::Finite(n) => Some(n),
            Length::Infinite => None,
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => f.write_str("INFINITE"),
        }
    }
}

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Dense univariate polynomial with big-integer coefficients, index = degree.
type Series = Vec<BigInt>;

fn series_add_shifted(acc: &mut Series, other: &Series, shift: usize, sign: i32) {
    if acc.len() < other.len() + shift {
        acc.resize(other.len() + shift, BigInt::zero());
    }
    for (k, c) in other.iter().enumerate() {
        if sign > 0 {
            acc[k + shift] += c;
        } else {
            acc[k + shift] -= c;
        }
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| MonomialOrder::Lex.compare(a, b))
    });
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|o| o.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Numerator K(t) of the Hilbert series of S/M, HS = K(t)/(1-t)^n, for a
/// monomial ideal M given by minimal generators. Bigatti-style pivoting.
fn hilbert_numerator(gens: &[Monomial], budget: &Budget) -> Result<Series> {
    budget.charge(1)?;
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut k: Series = vec![BigInt::one()];
        for m in gens {
            let d = m.degree() as usize;
            let prev = k.clone();
            series_add_shifted(&mut k, &prev, d, -1);
        }
        return Ok(k);
    }
    let nvars = gens[0].nvars();
    // Variable shared by the most generators.
    let var = (0..nvars)
        .max_by_key(|&v| {
            (
                gens.iter().filter(|g| g.exponents()[v] > 0).count(),
                std::cmp::Reverse(v),
            )
        })
        .expect("nvars > 0");
    // Exponent taken from a mixed generator, so M + (pivot) really changes M.
    let mut exps: Vec<u16> = gens
        .iter()
        .filter(|g| g.exponents()[var] > 0 && g.degree() > g.exponents()[var] as u32)
        .map(|g| g.exponents()[var])
        .collect();
    if exps.is_empty() {
        exps = gens.iter().map(|g| g.exponents()[var]).filter(|&e| e > 0).collect();
    }
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2] as u32;
    let pivot = Monomial::variable(nvars, var, e)?;

    let mut with_pivot = gens.to_vec();
    with_pivot.push(pivot.clone());
    let with_pivot = minimalize(with_pivot);
    let quotient = minimalize(gens.iter().map(|g| g.gcd(&pivot).quotient_of(g)).collect());

    let mut k = hilbert_numerator(&with_pivot, budget)?;
    if quotient.iter().any(Monomial::is_one) {
        return Ok(k);
    }
    let q = hilbert_numerator(&quotient, budget)?;
    series_add_shifted(&mut k, &q, e as usize, 1);
    Ok(k)
}

/// Number of monomials outside the monomial ideal generated by `lead`.
pub fn monomial_quotient_length(lead: &[Monomial], nvars: usize, budget: &Budget) -> Result<Length> {
    if lead.iter().any(Monomial::is_one) {
        return Ok(Length::Finite(BigInt::zero()));
    }
    for v in 0..nvars {
        let has_pure = lead
            .iter()
            .any(|m| m.exponents()[v] > 0 && m.degree() == m.exponents()[v] as u32);
        if !has_pure {
            return Ok(Length::Infinite);
        }
    }
    let gens = minimalize(lead.to_vec());
    let mut k = hilbert_numerator(&gens, budget)?;
    // Divide by (1 - t)^n; exact because the quotient is finite-dimensional.
    for _ in 0..nvars {
        let mut q: Series = Vec::with_capacity(k.len());
        let mut carry = BigInt::zero();
        for c in &k {
            carry += c;
            q.push(carry.clone());
        }
        debug_assert!(carry.is_zero(), "K(t) not divisible by (1 - t)");
        q.pop();
        k = q;
    }
    Ok(Length::Finite(k.into_iter().sum()))
}

/// dim_k S/I, counted from the initial ideal.
pub fn vs_length(i: &Ideal, budget: &Budget) -> Result<Length> {
    let gb = i.groebner(budget)?;
    monomial_quotient_length(&gb.lead_monomials(), i.ring().nvars(), budget)
}

/// Minimum number of variables meeting every support set (branch and bound).
fn min_transversal(supports: &[u64], chosen: u64, depth: usize, best: &mut usize) {
    if depth >= *best {
        return;
    }
    let unhit = supports
        .iter()
        .filter(|&&s| s & chosen == 0)
        .min_by_key(|s| s.count_ones());
    match unhit {
        None => *best = depth,
        Some(&s) => {
            let mut bits = s;
            while bits != 0 {
                let b = bits & bits.wrapping_neg();
                min_transversal(supports, chosen | b, depth + 1, best);
                bits &= bits - 1;
            }
        }
    }
}

/// Krull dimension of S/I: the largest set of variables independent modulo
/// the initial ideal.
pub fn krull_dim(i: &Ideal, budget: &Budget) -> Result<usize> {
    let n = i.ring().nvars();
    if n > 64 {
        return Err(Error::InvalidArgument("krull_dim supports at most 64 variables".into()));
    }
    let gb = i.groebner(budget)?;
    if gb.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let mut supports: Vec<u64> = gb.lead_monomials().iter().map(Monomial::support_mask).collect();
    supports.sort_unstable();
    supports.dedup();
    let mut best = n;
    min_transversal(&supports, 0, 0, &mut best);
    Ok(n - best)
}

/// Standard monomials of a zero-dimensional ideal, increasing in the basis order.
pub fn standard_monomials(i: &Ideal, budget: &Budget) -> Result<Vec<Monomial>> {
    let gb = i.groebner(budget)?;
    let lead = gb.lead_monomials();
    let n = i.ring().nvars();
    if monomial_quotient_length(&lead, n, budget)? == Length::Infinite {
        return Err(Error::NotZeroDimensional);
    }
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    enumerate_standard(&lead, &mut exps, 0, &mut out)?;
    let order = gb.order();
    out.sort_by(|a, b| order.compare(a, b));
    Ok(out)
}

fn enumerate_standard(lead: &[Monomial], exps: &mut Vec<u32>, v: usize, out: &mut Vec<Monomial>) -> Result<()> {
    if v == exps.len() {
        out.push(Monomial::from_exponents(exps)?);
        return Ok(());
    }
    loop {
        // Prefix check: is the monomial with the remaining exponents zero already in?
        let m = Monomial::from_exponents(exps)?;
        if lead.iter().any(|l| l.divides(&m)) {
            break;
        }
        enumerate_standard(lead, exps, v + 1, out)?;
        exps[v] += 1;
    }
    exps[v] = 0;
    Ok(())
}

/// The standard monomials as polynomials of `i`'s ring.
pub fn standard_basis_polys(i: &Ideal, budget: &Budget) -> Result<Vec<Polynomial>> {
    let ring = i.ring();
    Ok(standard_monomials(i, budget)?
        .into_iter()
        .map(|m| Polynomial::from_terms(ring.clone(), vec![(m, 1)]))
        .collect())
}
