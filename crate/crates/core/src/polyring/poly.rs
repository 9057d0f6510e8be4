use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::PrimeField;
use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};

/// The ambient ring F_p[vars], read locally at the origin.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingSpec {
    pub fn new<S: AsRef<str>>(p: u64, vars: &[S], order: MonomialOrder) -> Result<Arc<Self>> {
        let field = PrimeField::new(p)?;
        let mut names: Vec<String> = Vec::with_capacity(vars.len());
        for v in vars {
            let v = v.as_ref();
            if !valid_name(v) {
                return Err(Error::InvalidVariable(v.to_string()));
            }
            if names.iter().any(|n| n == v) {
                return Err(Error::DuplicateVariable(v.to_string()));
            }
            names.push(v.to_string());
        }
        if let MonomialOrder::Block(k) = order {
            if k > names.len() {
                return Err(Error::InvalidBlock { k, nvars: names.len() });
            }
        }
        Ok(Arc::new(RingSpec {
            field,
            vars: names,
            order,
        }))
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    #[inline]
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same characteristic and variables; the order may differ.
    pub fn same_space(&self, other: &RingSpec) -> bool {
        self.field == other.field && self.vars == other.vars
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<RingSpec>> {
        RingSpec::new(self.characteristic(), &self.vars, order)
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Polynomial {
        let m = Monomial::variable(self.nvars(), i, 1).expect("exponent 1 fits");
        Polynomial::from_sorted(self.clone(), vec![(m, 1)])
    }

    pub fn one(self: &Arc<Self>) -> Polynomial {
        self.constant(1)
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial {
        Polynomial::zero(self.clone())
    }

    pub fn constant(self: &Arc<Self>, c: i64) -> Polynomial {
        let c = self.field.from_i64(c);
        let terms = if c == 0 {
            vec![]
        } else {
            vec![(Monomial::one(self.nvars()), c)]
        };
        Polynomial::from_sorted(self.clone(), terms)
    }

    pub fn monomial(self: &Arc<Self>, exps: &[u32]) -> Result<Polynomial> {
        if exps.len() != self.nvars() {
            return Err(Error::InvalidArgument(format!(
                "exponent vector of length {} in a ring with {} variables",
                exps.len(),
                self.nvars()
            )));
        }
        Ok(Polynomial::from_sorted(
            self.clone(),
            vec![(Monomial::from_exponents(exps)?, 1)],
        ))
    }
}

pub type Term = (Monomial, u64);

/// Normalized sparse polynomial: nonzero coefficients, strictly decreasing
/// monomials in the ring's order.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<RingSpec>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_space(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: Arc<RingSpec>) -> Self {
        Polynomial { ring, terms: vec![] }
    }

    /// Trusts that `terms` are already normalized.
    pub(crate) fn from_sorted(ring: Arc<RingSpec>, terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|(_, c)| *c != 0 && *c < ring.characteristic()));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().compare(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial { ring, terms }
    }

    /// Normalizes arbitrary terms: reduces coefficients, merges duplicates, sorts.
    pub fn from_terms(ring: Arc<RingSpec>, mut terms: Vec<Term>) -> Self {
        let order = ring.order();
        let field = *ring.field();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = field.reduce(c);
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(*lc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        Polynomial { ring, terms: out }
    }

    #[inline]
    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> u64 {
        self.terms.first().map_or(0, |t| t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_one())
    }

    pub fn constant_term(&self) -> u64 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    /// Largest exponent of variable `i` over all terms.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exponents()[i] as u32).max().unwrap_or(0)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring.same_space(&other.ring) && self.ring.order() == other.ring.order() {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some(&(_, 1)) => self.clone(),
            Some(&(_, c)) => self.scale(self.ring.field().inv(c)),
        }
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let f = self.ring.field();
        let c = f.reduce(c);
        if c == 0 {
            return Polynomial::zero(self.ring.clone());
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect();
        Polynomial::from_sorted(self.ring.clone(), terms)
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.ring.characteristic() - 1)
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: u64) -> Result<Polynomial> {
        let f = self.ring.field();
        let c = f.reduce(c);
        if c == 0 {
            return Ok(Polynomial::zero(self.ring.clone()));
        }
        let terms = self
            .terms
            .iter()
            .map(|(t, a)| Ok((t.mul(m)?, f.mul(*a, c))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_sorted(self.ring.clone(), terms))
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, 1))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, self.ring.characteristic() - 1))
    }

    /// `self + c * other` by a sorted merge; rings assumed equal.
    pub(crate) fn add_scaled(&self, other: &Polynomial, c: u64) -> Polynomial {
        let terms = merge_scaled(&self.ring, &self.terms, &other.terms, c, None);
        Polynomial::from_sorted(self.ring.clone(), terms)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.ring.clone()));
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        // Sum of shifted copies of the longer factor, merged pairwise.
        let mut parts: Vec<Vec<Term>> = small
            .terms
            .iter()
            .map(|(m, c)| big.mul_term(m, *c).map(|p| p.terms))
            .collect::<Result<_>>()?;
        while parts.len() > 1 {
            let mut next = Vec::with_capacity(parts.len().div_ceil(2));
            let mut it = parts.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(merge_scaled(&self.ring, &a, &b, 1, None)),
                    None => next.push(a),
                }
            }
            parts = next;
        }
        Ok(Polynomial::from_sorted(
            self.ring.clone(),
            parts.pop().unwrap_or_default(),
        ))
    }

    pub fn pow(&self, k: u64) -> Result<Polynomial> {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `self^q` for `q` a power of the characteristic: raises each term separately.
    pub fn frobenius_power(&self, q: u64) -> Result<Polynomial> {
        let p = self.ring.characteristic();
        if !is_power_of(q, p) {
            return Err(Error::NotAPowerOfP(q));
        }
        let f = self.ring.field();
        let q32 = u32::try_from(q).map_err(|_| Error::ExponentOverflow)?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.pow(q32)?, f.pow(*c, q))))
            .collect::<Result<Vec<_>>>()?;
        // m -> m^q preserves the order, so the result stays sorted.
        Ok(Polynomial::from_sorted(self.ring.clone(), terms))
    }

    /// Returns `q` with `self = q * g`, or `NotDivisible`.
    pub fn exact_divide(&self, g: &Polynomial) -> Result<Polynomial> {
        self.check_ring(g)?;
        let (glm, glc) = match g.terms.first() {
            None => return Err(Error::DivisionByZero),
            Some((m, c)) => (m, *c),
        };
        let f = *self.ring.field();
        let ginv = f.inv(glc);
        let mut rem = self.terms.clone();
        let mut quot: Vec<Term> = Vec::new();
        while let Some((m, c)) = rem.first() {
            let qm = m.checked_div(glm).ok_or(Error::NotDivisible)?;
            let qc = f.mul(*c, ginv);
            let shifted = g.mul_term(&qm, qc)?;
            rem = merge_scaled(&self.ring, &rem, &shifted.terms, f.neg(1), None);
            quot.push((qm, qc));
        }
        Ok(Polynomial::from_sorted(self.ring.clone(), quot))
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let f = self.ring.field();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponents()[i] as u32;
            let c = f.mul(*c, f.reduce(e as u64));
            if c == 0 {
                continue;
            }
            let mut exps: Vec<u32> = m.exponents().iter().map(|&x| x as u32).collect();
            exps[i] -= 1;
            terms.push((Monomial::from_exponents(&exps).expect("smaller exponent"), c));
        }
        Polynomial::from_terms(self.ring.clone(), terms)
    }

    /// Drops every term lying in (vars)^[q]; the normal form modulo that monomial ideal.
    pub fn truncate_frobenius(&self, q: u64) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| !m.in_frobenius_power(q))
            .cloned()
            .collect();
        Polynomial::from_sorted(self.ring.clone(), terms)
    }

    /// Product truncated modulo (vars)^[q], never materializing the dropped terms.
    pub fn mul_truncated(&self, other: &Polynomial, q: u64) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut terms = Vec::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let fits = a
                    .exponents()
                    .iter()
                    .zip(b.exponents())
                    .all(|(x, y)| (*x as u64) + (*y as u64) < q);
                if fits {
                    terms.push((a.mul(b)?, ca * cb));
                }
            }
        }
        Ok(Polynomial::from_terms(self.ring.clone(), terms))
    }

    /// `self^k` truncated modulo (vars)^[q].
    pub fn pow_truncated(&self, k: u64, q: u64) -> Result<Polynomial> {
        let mut acc = self.ring.one().truncate_frobenius(q);
        let mut base = self.truncate_frobenius(q);
        let mut k = k;
        while k > 0 && !acc.is_zero() {
            if k & 1 == 1 {
                acc = acc.mul_truncated(&base, q)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_truncated(&base, q)?;
            }
        }
        Ok(acc)
    }

    /// Re-sorts the terms for a ring with the same variables but another order.
    pub fn reorder(&self, ring: &Arc<RingSpec>) -> Result<Polynomial> {
        if !self.ring.same_space(ring) {
            return Err(Error::MixedRings);
        }
        if self.ring.order() == ring.order() {
            return Ok(Polynomial {
                ring: ring.clone(),
                terms: self.terms.clone(),
            });
        }
        let mut terms = self.terms.clone();
        let order = ring.order();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Ok(Polynomial::from_sorted(ring.clone(), terms))
    }

    /// Moves the polynomial into `ring`, sending variable `i` to `map[i]`.
    pub fn embed(&self, ring: &Arc<RingSpec>, map: &[usize]) -> Polynomial {
        let n = ring.nvars();
        let terms = self.terms.iter().map(|(m, c)| (m.remap(n, map), *c)).collect();
        Polynomial::from_terms(ring.clone(), terms)
    }

    /// Substitutes polynomials (all in `target`) for the variables.
    pub fn substitute(&self, values: &[Polynomial], target: &Arc<RingSpec>) -> Result<Polynomial> {
        if values.len() != self.ring.nvars() {
            return Err(Error::InvalidArgument("substitution arity mismatch".into()));
        }
        let mut acc = Polynomial::zero(target.clone());
        for (m, c) in &self.terms {
            let mut t = target.constant(*c as i64);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&values[i].pow(e as u64)?)?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Canonical text form: `*` and `^`, decreasing terms, coefficients in [1, p-1].
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let vars = self.ring.vars();
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].clone()),
                    _ => factors.push(format!("{}^{}", vars[i], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.render())
    }
}

pub fn is_power_of(q: u64, p: u64) -> bool {
    let mut q = q;
    if q == 0 {
        return false;
    }
    while q.is_multiple_of(p) {
        q /= p;
    }
    q == 1
}

/// `a + c*b` for sorted term lists; `skip_lead` lets callers drop a known-cancelling lead.
pub(crate) fn merge_scaled(ring: &RingSpec, a: &[Term], b: &[Term], c: u64, skip_lead: Option<()>) -> Vec<Term> {
    let f = ring.field();
    let order = ring.order();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    if skip_lead.is_some() {
        i = 1;
        j = 1;
    }
    while i < a.len() && j < b.len() {
        match order.compare(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0.clone(), f.mul(b[j].1, c)));
                j += 1;
            }
            Ordering::Equal => {
                let s = f.add(a[i].1, f.mul(b[j].1, c));
                if s != 0 {
                    out.push((a[i].0.clone(), s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|(m, bc)| (m.clone(), f.mul(*bc, c))));
    out
}
