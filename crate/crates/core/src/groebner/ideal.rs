use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::buchberger::groebner;
use super::reduce::{Division, ReducerSet};
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::polyring::{Monomial, MonomialOrder, Polynomial, RingSpec, Term};

/// Reduced, monic Groebner basis for one monomial order.
#[derive(Clone)]
pub struct GroebnerBasis {
    ring: Arc<RingSpec>,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub(crate) fn from_parts(ring: Arc<RingSpec>, elements: Vec<Polynomial>) -> Self {
        GroebnerBasis { ring, elements }
    }

    /// The ring whose order the basis is reduced for.
    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elements
            .iter()
            .any(|g| g.leading_monomial().is_some_and(Monomial::is_one))
    }

    pub fn lead_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .filter_map(|g| g.leading_monomial().cloned())
            .collect()
    }

    pub(crate) fn reducers(&self) -> ReducerSet<'_> {
        let mut set = ReducerSet::new();
        for g in &self.elements {
            set.push(g.terms());
        }
        set
    }

    /// Remainder of `f` on division by the basis. `f` must use the basis order.
    pub fn normal_form(&self, f: &Polynomial, budget: &Budget) -> Result<Polynomial> {
        if !f.ring().same_space(&self.ring) {
            return Err(Error::MixedRings);
        }
        if f.ring().order() != self.ring.order() {
            return Err(Error::OrderMismatch);
        }
        self.reduce_terms(f.terms(), budget)
    }

    pub(crate) fn reduce_terms(&self, terms: &[Term], budget: &Budget) -> Result<Polynomial> {
        if terms.is_empty() || self.elements.is_empty() {
            return Ok(Polynomial::from_terms(self.ring.clone(), terms.to_vec()));
        }
        let reducers = self.reducers();
        let mut div = Division::new(self.ring.order(), *self.ring.field());
        div.add_stream(Monomial::one(self.ring.nvars()), 1, terms, 0)?;
        let rem = div.reduce(&reducers, budget)?;
        Ok(Polynomial::from_sorted(self.ring.clone(), rem))
    }

    /// Normal form of a polynomial given in any order on the same variables.
    pub fn reduce(&self, f: &Polynomial, budget: &Budget) -> Result<Polynomial> {
        let f = f.reorder(&self.ring)?;
        self.reduce_terms(f.terms(), budget)
    }

    pub fn contains(&self, f: &Polynomial, budget: &Budget) -> Result<bool> {
        Ok(self.reduce(f, budget)?.is_zero())
    }
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.elements.iter().map(|g| g.render()))
            .finish()
    }
}

/// An ideal of the ambient ring, with Groebner bases cached per order.
pub struct Ideal {
    ring: Arc<RingSpec>,
    gens: Vec<Polynomial>,
    cache: Mutex<BTreeMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: Mutex::new(self.cache.lock().expect("cache lock").clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal(")?;
        f.debug_list().entries(self.gens.iter().map(|g| g.render())).finish()?;
        write!(f, ")")
    }
}

impl Ideal {
    /// Zero generators are dropped; every generator is moved into `ring`'s order.
    pub fn new(ring: &Arc<RingSpec>, gens: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        let mut out = Vec::new();
        for g in gens {
            if !g.is_zero() {
                out.push(g.reorder(ring)?);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: out,
            cache: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn zero(ring: &Arc<RingSpec>) -> Ideal {
        Ideal::new(ring, []).expect("empty")
    }

    pub fn unit(ring: &Arc<RingSpec>) -> Ideal {
        Ideal::new(ring, [ring.one()]).expect("same ring")
    }

    /// The ideal generated by all variables (the maximal ideal of the origin).
    pub fn maximal(ring: &Arc<RingSpec>) -> Ideal {
        Ideal::new(ring, (0..ring.nvars()).map(|i| ring.var(i))).expect("same ring")
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// True if no generator has a nonzero constant term.
    pub fn in_maximal(&self) -> bool {
        self.gens.iter().all(|g| g.constant_term() == 0)
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring.same_space(&other.ring) {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub(crate) fn seed_cache(&self, gb: Arc<GroebnerBasis>) {
        self.cache.lock().expect("cache lock").entry(gb.order()).or_insert(gb);
    }

    pub(crate) fn cached_basis(&self, order: MonomialOrder) -> Option<Arc<GroebnerBasis>> {
        self.cache.lock().expect("cache lock").get(&order).cloned()
    }

    pub fn groebner(&self, budget: &Budget) -> Result<Arc<GroebnerBasis>> {
        self.groebner_in(self.ring.order(), budget)
    }

    pub fn groebner_in(&self, order: MonomialOrder, budget: &Budget) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.cache.lock().expect("cache lock").get(&order) {
            return Ok(gb.clone());
        }
        let ring = if order == self.ring.order() {
            self.ring.clone()
        } else {
            self.ring.with_order(order)?
        };
        let gens: Vec<Vec<Term>> = self
            .gens
            .iter()
            .map(|g| g.reorder(&ring).map(Polynomial::into_terms))
            .collect::<Result<_>>()?;
        let basis = groebner(&gens, order, *ring.field(), budget)?;
        let elements = basis
            .into_iter()
            .map(|t| Polynomial::from_sorted(ring.clone(), t))
            .collect();
        let gb = Arc::new(GroebnerBasis::from_parts(ring, elements));
        // Single writer: a concurrent computation of the same basis yields the same value.
        self.seed_cache(gb.clone());
        Ok(gb)
    }

    pub fn is_unit(&self, budget: &Budget) -> Result<bool> {
        if self.gens.iter().any(|g| g.is_constant()) {
            return Ok(true);
        }
        Ok(self.groebner(budget)?.is_unit())
    }

    pub fn contains_poly(&self, f: &Polynomial, budget: &Budget) -> Result<bool> {
        if !f.ring().same_space(&self.ring) {
            return Err(Error::MixedRings);
        }
        if f.is_zero() {
            return Ok(true);
        }
        self.groebner(budget)?.contains(f, budget)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        self.check_ring(other)?;
        if other.is_zero() {
            return Ok(true);
        }
        let gb = self.groebner(budget)?;
        for g in &other.gens {
            if !gb.contains(g, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        Ok(self.contains(other, budget)? && other.contains(self, budget)?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        Ideal::new(&self.ring, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        Ideal::new(&self.ring, self.gens.iter().cloned().chain(extra))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(&b.reorder(&self.ring)?)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// Generators of the reduced basis in the ring order, as a fresh ideal.
    pub fn minimalized(&self, budget: &Budget) -> Result<Ideal> {
        let gb = self.groebner(budget)?;
        let ideal = Ideal::new(&self.ring, gb.elements().iter().cloned())?;
        ideal.seed_cache(gb);
        Ok(ideal)
    }
}
