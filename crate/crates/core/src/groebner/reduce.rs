//! Heap-driven multivariate division.
//!
//! The dividend is a lazy sum of "streams" `c * m * g[k..]`; each top
//! reduction appends a stream instead of rewriting the remainder, so every
//! term is touched O(log streams) times.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::config::Budget;
use crate::error::Result;
use crate::polyring::{Monomial, MonomialOrder, PrimeField, Term};

/// A lead monomial plus the polynomial it heads (monic), for divisor lookups.
pub(crate) struct Reducer<'a> {
    pub lm: &'a Monomial,
    pub mask: u64,
    pub terms: &'a [Term],
}

pub(crate) struct ReducerSet<'a> {
    items: Vec<Reducer<'a>>,
}

impl<'a> ReducerSet<'a> {
    pub fn new() -> Self {
        ReducerSet { items: Vec::new() }
    }

    pub fn push(&mut self, terms: &'a [Term]) {
        let lm = &terms[0].0;
        debug_assert_eq!(terms[0].1, 1, "reducers must be monic");
        self.items.push(Reducer {
            lm,
            mask: lm.support_mask(),
            terms,
        });
    }

    #[inline]
    pub fn find(&self, m: &Monomial) -> Option<&Reducer<'a>> {
        let mask = m.support_mask();
        self.items.iter().find(|r| r.mask & !mask == 0 && r.lm.divides(m))
    }
}

struct Stream<'a> {
    mult: Monomial,
    coef: u64,
    terms: &'a [Term],
}

struct Entry {
    mono: Monomial,
    order: MonomialOrder,
    stream: u32,
    idx: u32,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Entry {}
impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .compare(&self.mono, &other.mono)
            .then_with(|| other.stream.cmp(&self.stream))
    }
}

pub(crate) struct Division<'a> {
    order: MonomialOrder,
    field: PrimeField,
    streams: Vec<Stream<'a>>,
    heap: BinaryHeap<Entry>,
}

impl<'a> Division<'a> {
    pub fn new(order: MonomialOrder, field: PrimeField) -> Self {
        Division {
            order,
            field,
            streams: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    /// Adds `coef * mult * terms[start..]` to the dividend.
    pub fn add_stream(&mut self, mult: Monomial, coef: u64, terms: &'a [Term], start: usize) -> Result<()> {
        if start >= terms.len() || coef == 0 {
            return Ok(());
        }
        let id = self.streams.len() as u32;
        let mono = terms[start].0.mul(&mult)?;
        self.streams.push(Stream { mult, coef, terms });
        self.heap.push(Entry {
            mono,
            order: self.order,
            stream: id,
            idx: start as u32,
        });
        Ok(())
    }

    fn advance(&mut self, stream: u32, idx: u32) -> Result<()> {
        let s = &self.streams[stream as usize];
        let next = idx as usize + 1;
        if next < s.terms.len() {
            let mono = s.terms[next].0.mul(&s.mult)?;
            self.heap.push(Entry {
                mono,
                order: self.order,
                stream,
                idx: next as u32,
            });
        }
        Ok(())
    }

    /// Pops the largest surviving term of the dividend.
    pub fn next_term(&mut self) -> Result<Option<Term>> {
        while let Some(top) = self.heap.pop() {
            let mut c = self.term_coef(&top);
            self.advance(top.stream, top.idx)?;
            while let Some(peek) = self.heap.peek() {
                if peek.mono != top.mono {
                    break;
                }
                let e = self.heap.pop().expect("peeked");
                c = self.field.add(c, self.term_coef(&e));
                self.advance(e.stream, e.idx)?;
            }
            if c != 0 {
                return Ok(Some((top.mono, c)));
            }
        }
        Ok(None)
    }

    #[inline]
    fn term_coef(&self, e: &Entry) -> u64 {
        let s = &self.streams[e.stream as usize];
        self.field.mul(s.coef, s.terms[e.idx as usize].1)
    }

    /// Full reduction: returns the normal form (not made monic).
    pub fn reduce(mut self, reducers: &ReducerSet<'a>, budget: &Budget) -> Result<Vec<Term>> {
        let mut out = Vec::new();
        while let Some((m, c)) = self.next_term()? {
            match reducers.find(&m) {
                Some(r) => {
                    budget.charge(1)?;
                    let mult = r.lm.quotient_of(&m);
                    let neg = self.field.neg(c);
                    self.add_stream(mult, neg, r.terms, 1)?;
                }
                None => out.push((m, c)),
            }
        }
        Ok(out)
    }
}
