//! Buchberger's algorithm with the Gebauer-Moeller installation of new
//! elements and sugar-guided normal selection.

use std::cmp::Ordering;

use log::trace;

use super::reduce::{Division, ReducerSet};
use crate::config::Budget;
use crate::error::Result;
use crate::polyring::{Monomial, MonomialOrder, PrimeField, Term};

struct Elem {
    terms: Vec<Term>,
    sugar: u32,
    active: bool,
}

impl Elem {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

fn make_monic(field: &PrimeField, terms: &mut [Term]) {
    if let Some(&(_, lc)) = terms.first() {
        if lc != 1 {
            let inv = field.inv(lc);
            for t in terms.iter_mut() {
                t.1 = field.mul(t.1, inv);
            }
        }
    }
}

/// Selection key: smallest sugar, then smallest lcm degree, then smallest lcm
/// in the order, then insertion indices.
fn pair_cmp(order: MonomialOrder, a: &Pair, b: &Pair) -> Ordering {
    a.sugar
        .cmp(&b.sugar)
        .then(a.lcm.degree().cmp(&b.lcm.degree()))
        .then_with(|| order.compare(&a.lcm, &b.lcm))
        .then(a.j.cmp(&b.j))
        .then(a.i.cmp(&b.i))
}

pub(crate) struct Buchberger {
    order: MonomialOrder,
    field: PrimeField,
    elems: Vec<Elem>,
    pairs: Vec<Pair>,
}

impl Buchberger {
    pub fn new(order: MonomialOrder, field: PrimeField) -> Self {
        Buchberger {
            order,
            field,
            elems: Vec::new(),
            pairs: Vec::new(),
        }
    }

    fn reducers(&self) -> ReducerSet<'_> {
        let mut set = ReducerSet::new();
        for e in self.elems.iter().filter(|e| e.active) {
            set.push(&e.terms);
        }
        set
    }

    /// Gebauer-Moeller update: installs `terms` (reduced, monic) as element `h`.
    fn update(&mut self, terms: Vec<Term>, sugar: u32) {
        let h = self.elems.len();
        let lm_h = terms[0].0.clone();
        self.elems.push(Elem {
            terms,
            sugar,
            active: true,
        });

        // New pairs (h, g) for active g.
        let candidates: Vec<Pair> = (0..h)
            .filter(|&g| self.elems[g].active)
            .map(|g| {
                let eg = &self.elems[g];
                let lcm = lm_h.lcm(eg.lm());
                let sugar = (sugar + lcm.degree() - lm_h.degree()).max(eg.sugar + lcm.degree() - eg.lm().degree());
                Pair { i: g, j: h, lcm, sugar }
            })
            .collect();

        // Chain criterion among the new pairs: drop (h,g1) if some other new
        // pair's lcm properly divides it, keeping coprime pairs for now.
        let mut kept: Vec<(Pair, bool)> = Vec::with_capacity(candidates.len());
        for (k, c) in candidates.iter().enumerate() {
            let coprime = lm_h.is_coprime(self.elems[c.i].lm());
            let dominated = !coprime
                && candidates
                    .iter()
                    .enumerate()
                    .any(|(l, d)| l != k && d.lcm.divides(&c.lcm) && (d.lcm != c.lcm || l < k));
            if !dominated {
                kept.push((c.clone(), coprime));
            }
        }
        // Among pairs with equal lcm keep one; if any of them is coprime, drop all.
        let mut new_pairs: Vec<Pair> = Vec::new();
        let mut idx = 0;
        while idx < kept.len() {
            let same: Vec<usize> = (0..kept.len()).filter(|&k| kept[k].0.lcm == kept[idx].0.lcm).collect();
            if same[0] == idx && !same.iter().any(|&k| kept[k].1) {
                new_pairs.push(kept[idx].0.clone());
            }
            idx += 1;
        }

        // Old pairs whose lcm is strictly divisible by lm(h) in the GM sense.
        let elems = &self.elems;
        self.pairs.retain(|pr| {
            if !lm_h.divides(&pr.lcm) {
                return true;
            }
            let l1 = lm_h.lcm(elems[pr.i].lm());
            let l2 = lm_h.lcm(elems[pr.j].lm());
            l1 == pr.lcm || l2 == pr.lcm
        });
        self.pairs.extend(new_pairs);

        for g in 0..h {
            if self.elems[g].active && lm_h.divides(self.elems[g].lm()) {
                self.elems[g].active = false;
            }
        }
    }

    pub fn add_generator(&mut self, terms: Vec<Term>, sugar: u32, budget: &Budget) -> Result<()> {
        let reduced = {
            let reducers = self.reducers();
            let mut div = Division::new(self.order, self.field);
            div.add_stream(Monomial::one(terms[0].0.nvars()), 1, &terms, 0)?;
            div.reduce(&reducers, budget)?
        };
        if !reduced.is_empty() {
            let mut r = reduced;
            make_monic(&self.field, &mut r);
            self.update(r, sugar);
        }
        Ok(())
    }

    pub fn run(&mut self, budget: &Budget) -> Result<()> {
        let order = self.order;
        while !self.pairs.is_empty() {
            let best = (0..self.pairs.len())
                .min_by(|&a, &b| pair_cmp(order, &self.pairs[a], &self.pairs[b]))
                .expect("nonempty");
            let pair = self.pairs.swap_remove(best);
            let reduced = {
                let gi = &self.elems[pair.i];
                let gj = &self.elems[pair.j];
                let mi = gi.lm().quotient_of(&pair.lcm);
                let mj = gj.lm().quotient_of(&pair.lcm);
                let reducers = self.reducers();
                let mut div = Division::new(order, self.field);
                div.add_stream(mi, 1, &gi.terms, 1)?;
                div.add_stream(mj, self.field.neg(1), &gj.terms, 1)?;
                budget.charge(1)?;
                div.reduce(&reducers, budget)?
            };
            if !reduced.is_empty() {
                let mut r = reduced;
                make_monic(&self.field, &mut r);
                trace!(
                    "new basis element, lm {:?}, {} terms, {} pairs left",
                    r[0].0,
                    r.len(),
                    self.pairs.len()
                );
                let unit = r[0].0.is_one();
                self.update(r, pair.sugar);
                if unit {
                    self.pairs.clear();
                }
            }
        }
        Ok(())
    }

    /// Reduced basis sorted by decreasing lead monomial.
    pub fn finish(self, budget: &Budget) -> Result<Vec<Vec<Term>>> {
        let order = self.order;
        let field = self.field;
        let active: Vec<&Elem> = self.elems.iter().filter(|e| e.active).collect();
        let mut out = Vec::with_capacity(active.len());
        for (k, e) in active.iter().enumerate() {
            let mut others = ReducerSet::new();
            for (l, o) in active.iter().enumerate() {
                if l != k {
                    others.push(&o.terms);
                }
            }
            let mut div = Division::new(order, field);
            div.add_stream(Monomial::one(e.lm().nvars()), 1, &e.terms, 1)?;
            let tail = div.reduce(&others, budget)?;
            let mut terms = Vec::with_capacity(tail.len() + 1);
            terms.push(e.terms[0].clone());
            terms.extend(tail);
            out.push(terms);
        }
        out.sort_by(|a, b| order.compare(&b[0].0, &a[0].0));
        Ok(out)
    }
}

/// Reduced Groebner basis of the given term lists (each sorted in `order`).
pub(crate) fn groebner(
    gens: &[Vec<Term>],
    order: MonomialOrder,
    field: PrimeField,
    budget: &Budget,
) -> Result<Vec<Vec<Term>>> {
    let mut bb = Buchberger::new(order, field);
    let mut sorted: Vec<&Vec<Term>> = gens.iter().filter(|g| !g.is_empty()).collect();
    // Low-degree generators first keeps early reductions cheap.
    sorted.sort_by(|a, b| {
        let da = a.iter().map(|t| t.0.degree()).max().unwrap_or(0);
        let db = b.iter().map(|t| t.0.degree()).max().unwrap_or(0);
        da.cmp(&db).then_with(|| order.compare(&a[0].0, &b[0].0))
    });
    for g in sorted {
        let sugar = g.iter().map(|t| t.0.degree()).max().unwrap_or(0);
        if g[0].0.is_one() {
            return Ok(vec![vec![(g[0].0.clone(), 1)]]);
        }
        bb.add_generator(g.clone(), sugar, budget)?;
        if bb.elems.iter().any(|e| e.active && e.lm().is_one()) {
            let one = Monomial::one(g[0].0.nvars());
            return Ok(vec![vec![(one, 1)]]);
        }
    }
    bb.run(budget)?;
    if bb.elems.iter().any(|e| e.active && e.lm().is_one()) {
        let one = Monomial::one(bb.elems[0].lm().nvars());
        return Ok(vec![vec![(one, 1)]]);
    }
    bb.finish(budget)
}

/// Turns a Groebner basis (any, not necessarily minimal) into the reduced one.
pub(crate) fn interreduce(
    basis: Vec<Vec<Term>>,
    order: MonomialOrder,
    field: PrimeField,
    budget: &Budget,
) -> Result<Vec<Vec<Term>>> {
    let mut basis: Vec<Vec<Term>> = basis.into_iter().filter(|b| !b.is_empty()).collect();
    for b in basis.iter_mut() {
        make_monic(&field, b);
    }
    basis.sort_by(|a, b| order.compare(&a[0].0, &b[0].0));
    basis.dedup_by(|a, b| a[0].0 == b[0].0);
    let mut minimal: Vec<Vec<Term>> = Vec::new();
    for b in basis {
        if !minimal.iter().any(|m| m[0].0.divides(&b[0].0)) {
            minimal.push(b);
        }
    }
    let bb = Buchberger {
        order,
        field,
        elems: minimal
            .into_iter()
            .map(|terms| Elem {
                terms,
                sugar: 0,
                active: true,
            })
            .collect(),
        pairs: Vec::new(),
    };
    bb.finish(budget)
}
