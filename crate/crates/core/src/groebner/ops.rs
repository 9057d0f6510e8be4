//! Ideal algebra on top of Buchberger: intersection, colon, elimination,
//! saturation and Frobenius (bracket) powers.

use std::sync::Arc;

use super::buchberger::{groebner, interreduce};
use super::ideal::{GroebnerBasis, Ideal};
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::polyring::{is_power_of, Monomial, MonomialOrder, Polynomial, RingSpec, Term};

fn is_monomial_ideal(i: &Ideal) -> bool {
    i.gens().iter().all(|g| g.len() == 1)
}

fn monomials_of(i: &Ideal) -> Vec<Monomial> {
    i.gens().iter().filter_map(|g| g.leading_monomial().cloned()).collect()
}

/// Drops monomials divisible by another one; output sorted for determinism.
fn minimal_monomials(mut ms: Vec<Monomial>, order: MonomialOrder) -> Vec<Monomial> {
    ms.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| order.compare(a, b)));
    ms.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in ms {
        if !out.iter().any(|o| o.divides(&m)) {
            out.push(m);
        }
    }
    out.sort_by(|a, b| order.compare(b, a));
    out
}

fn monomial_ideal(ring: &Arc<RingSpec>, ms: Vec<Monomial>) -> Ideal {
    let ms = minimal_monomials(ms, ring.order());
    let gens: Vec<Polynomial> = ms
        .into_iter()
        .map(|m| Polynomial::from_sorted(ring.clone(), vec![(m, 1)]))
        .collect();
    let ideal = Ideal::new(ring, gens.clone()).expect("same ring");
    // A minimal set of monomials is its own reduced basis in every order.
    ideal.seed_cache(Arc::new(GroebnerBasis::from_parts(ring.clone(), gens)));
    ideal
}

/// Ring with a fresh variable prepended, ordered to eliminate it.
fn elimination_ring(ring: &Arc<RingSpec>) -> Result<Arc<RingSpec>> {
    let mut name = String::from("t");
    let mut k = 0;
    while ring.var_index(&name).is_some() {
        k += 1;
        name = format!("t{k}");
    }
    let mut vars = vec![name];
    vars.extend(ring.vars().iter().cloned());
    RingSpec::new(ring.characteristic(), &vars, MonomialOrder::Block(1))
}

fn drop_first_var(ring: &Arc<RingSpec>, terms: &[Term]) -> Polynomial {
    let out: Vec<Term> = terms
        .iter()
        .map(|(m, c)| {
            let exps: Vec<u32> = m.exponents()[1..].iter().map(|&e| e as u32).collect();
            (Monomial::from_exponents(&exps).expect("fits"), *c)
        })
        .collect();
    Polynomial::from_terms(ring.clone(), out)
}

/// Turns t-free basis elements (already a Groebner basis for grevlex on the
/// remaining variables) into an ideal of `ring`, seeding its cache when the
/// orders agree.
fn ideal_from_eliminated(ring: &Arc<RingSpec>, polys: Vec<Polynomial>, budget: &Budget) -> Result<Ideal> {
    let ideal = Ideal::new(ring, polys.clone())?;
    if ring.order() == MonomialOrder::GrevLex {
        let terms: Vec<Vec<Term>> = polys.into_iter().map(Polynomial::into_terms).collect();
        let reduced = interreduce(terms, ring.order(), *ring.field(), budget)?;
        let elements = reduced
            .into_iter()
            .map(|t| Polynomial::from_sorted(ring.clone(), t))
            .collect();
        ideal.seed_cache(Arc::new(GroebnerBasis::from_parts(ring.clone(), elements)));
    }
    Ok(ideal)
}

/// I ∩ J via elimination of t from t·I + (1 - t)·J.
pub fn intersect(i: &Ideal, j: &Ideal, budget: &Budget) -> Result<Ideal> {
    let ring = i.ring();
    if !ring.same_space(j.ring()) {
        return Err(Error::MixedRings);
    }
    if i.is_zero() || j.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    if i.gens().iter().any(Polynomial::is_constant) {
        return Ideal::new(ring, j.gens().iter().cloned());
    }
    if j.gens().iter().any(Polynomial::is_constant) {
        return Ok(i.clone());
    }
    if is_monomial_ideal(i) && is_monomial_ideal(j) {
        let mut lcms = Vec::new();
        for a in monomials_of(i) {
            for b in monomials_of(j) {
                lcms.push(a.lcm(&b));
            }
        }
        return Ok(monomial_ideal(ring, lcms));
    }
    let ext = elimination_ring(ring)?;
    let n = ring.nvars();
    let shift: Vec<usize> = (1..=n).collect();
    let t = ext.var(0);
    let one_minus_t = ext.one().sub(&t)?;
    let mut gens: Vec<Vec<Term>> = Vec::new();
    for f in i.gens() {
        gens.push(t.mul(&f.embed(&ext, &shift))?.into_terms());
    }
    for g in j.gens() {
        gens.push(one_minus_t.mul(&g.embed(&ext, &shift))?.into_terms());
    }
    let basis = groebner(&gens, ext.order(), *ext.field(), budget)?;
    let kept: Vec<Polynomial> = basis
        .iter()
        .filter(|b| b.iter().all(|(m, _)| m.exponents()[0] == 0))
        .map(|b| drop_first_var(ring, b))
        .collect();
    ideal_from_eliminated(ring, kept, budget)
}

/// (I : g) for a single polynomial g.
pub fn colon_poly(i: &Ideal, g: &Polynomial, budget: &Budget) -> Result<Ideal> {
    let ring = i.ring();
    if g.is_zero() {
        return Ok(Ideal::unit(ring));
    }
    if g.is_constant() {
        return Ok(i.clone());
    }
    if i.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    if i.contains_poly(g, budget)? {
        return Ok(Ideal::unit(ring));
    }
    if is_monomial_ideal(i) && g.len() == 1 {
        let m = g.leading_monomial().expect("nonzero");
        let quotients = monomials_of(i).into_iter().map(|u| m.gcd(&u).quotient_of(&u)).collect();
        return Ok(monomial_ideal(ring, quotients));
    }
    let g = g.reorder(ring)?;
    let principal = Ideal::new(ring, [g.clone()])?;
    let meet = intersect(i, &principal, budget)?;
    let gb = meet.groebner(budget)?;
    let quotients: Vec<Polynomial> = gb
        .elements()
        .iter()
        .map(|h| h.reorder(ring)?.exact_divide(&g))
        .collect::<Result<_>>()?;
    // Dividing a basis of I ∩ (g) by g gives a basis of (I : g) in the same order.
    let terms: Vec<Vec<Term>> = quotients
        .iter()
        .map(|q| q.reorder(gb.ring()).map(Polynomial::into_terms))
        .collect::<Result<_>>()?;
    let reduced = interreduce(terms, gb.order(), *ring.field(), budget)?;
    let elements: Vec<Polynomial> = reduced
        .into_iter()
        .map(|t| Polynomial::from_sorted(gb.ring().clone(), t))
        .collect();
    let out = Ideal::new(ring, elements.iter().cloned())?;
    out.seed_cache(Arc::new(GroebnerBasis::from_parts(gb.ring().clone(), elements)));
    Ok(out)
}

/// (I : J) = ∩ (I : g) over the generators g of J. (I : (0)) is the unit ideal.
pub fn colon(i: &Ideal, j: &Ideal, budget: &Budget) -> Result<Ideal> {
    if !i.ring().same_space(j.ring()) {
        return Err(Error::MixedRings);
    }
    let mut acc: Option<Ideal> = None;
    for g in j.gens() {
        let part = colon_poly(i, g, budget)?;
        acc = Some(match acc {
            None => part,
            Some(prev) => intersect(&prev, &part, budget)?,
        });
        if acc.as_ref().is_some_and(|a| a.is_zero()) {
            break;
        }
    }
    Ok(acc.unwrap_or_else(|| Ideal::unit(i.ring())))
}

/// Generators of I ∩ k[x_{k+1}, ...]; the ring must carry `Block(k)`.
pub fn eliminate(i: &Ideal, k: usize, budget: &Budget) -> Result<Ideal> {
    let ring = i.ring();
    if ring.order() != MonomialOrder::Block(k) {
        return Err(Error::OrderMismatch);
    }
    let gb = i.groebner(budget)?;
    let kept = gb
        .elements()
        .iter()
        .filter(|g| {
            g.terms()
                .iter()
                .all(|(m, _)| m.exponents()[..k].iter().all(|&e| e == 0))
        })
        .cloned();
    Ideal::new(ring, kept)
}

/// (I : f^∞), iterating colons until the ideal stabilizes.
pub fn saturate(i: &Ideal, f: &Polynomial, budget: &Budget) -> Result<Ideal> {
    let mut cur = i.clone();
    loop {
        let next = colon_poly(&cur, f, budget)?;
        if cur.contains(&next, budget)? {
            return Ok(cur);
        }
        cur = next;
    }
}

/// I^[q] generated by q-th powers of the generators; q must be a power of p.
pub fn bracket_power(i: &Ideal, q: u64) -> Result<Ideal> {
    let ring = i.ring();
    if !is_power_of(q, ring.characteristic()) {
        return Err(Error::NotAPowerOfP(q));
    }
    if q == 1 {
        return Ok(i.clone());
    }
    let gens: Vec<Polynomial> = i.gens().iter().map(|g| g.frobenius_power(q)).collect::<Result<_>>()?;
    let out = Ideal::new(ring, gens)?;
    // Frobenius maps a reduced Groebner basis onto a reduced Groebner basis.
    for order in [MonomialOrder::GrevLex, MonomialOrder::Lex, ring.order()] {
        if let Some(gb) = i.cached_basis(order) {
            let elements = gb
                .elements()
                .iter()
                .map(|g| g.frobenius_power(q))
                .collect::<Result<Vec<_>>>()?;
            out.seed_cache(Arc::new(GroebnerBasis::from_parts(gb.ring().clone(), elements)));
        }
    }
    Ok(out)
}

/// (vars)^[q].
pub fn frobenius_power_of_maximal(ring: &Arc<RingSpec>, q: u64) -> Result<Ideal> {
    if !is_power_of(q, ring.characteristic()) {
        return Err(Error::NotAPowerOfP(q));
    }
    let q32 = u32::try_from(q).map_err(|_| Error::ExponentOverflow)?;
    let ms = (0..ring.nvars())
        .map(|v| Monomial::variable(ring.nvars(), v, q32))
        .collect::<Result<Vec<_>>>()?;
    Ok(monomial_ideal(ring, ms))
}
