use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exponent = u16;

/// Monomial orders on exponent vectors.
///
/// `Block(k)` compares the first `k` exponents lexicographically and breaks
/// ties with grevlex on the remaining ones; it eliminates the first `k`
/// variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Block(usize),
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => lex(&a.exps, &b.exps),
            MonomialOrder::GrevLex => grevlex(a.degree, &a.exps, b.degree, &b.exps),
            MonomialOrder::Block(k) => {
                let k = k.min(a.exps.len());
                match lex(&a.exps[..k], &b.exps[..k]) {
                    Ordering::Equal => {
                        let da = a.degree - a.exps[..k].iter().map(|&e| e as u32).sum::<u32>();
                        let db = b.degree - b.exps[..k].iter().map(|&e| e as u32).sum::<u32>();
                        grevlex(da, &a.exps[k..], db, &b.exps[k..])
                    }
                    o => o,
                }
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::GrevLex => "grevlex".into(),
            MonomialOrder::Block(k) => format!("block({k})"),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "lex" => Ok(MonomialOrder::Lex),
            "grevlex" => Ok(MonomialOrder::GrevLex),
            _ => {
                let inner = s
                    .strip_prefix("block(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown monomial order {s:?}")))?;
                let k = inner
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad block size in {s:?}")))?;
                Ok(MonomialOrder::Block(k))
            }
        }
    }
}

#[inline]
fn lex(a: &[Exponent], b: &[Exponent]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

#[inline]
fn grevlex(da: u32, a: &[Exponent], db: u32, b: &[Exponent]) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

/// Exponent vector with cached total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[Exponent; 8]>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        let mut out = SmallVec::with_capacity(exps.len());
        let mut degree = 0u32;
        for &e in exps {
            if e > Exponent::MAX as u32 {
                return Err(Error::ExponentOverflow);
            }
            out.push(e as Exponent);
            degree += e;
        }
        Ok(Monomial { exps: out, degree })
    }

    pub fn variable(nvars: usize, i: usize, e: u32) -> Result<Self> {
        let mut v = vec![0u32; nvars];
        v[i] = e;
        Monomial::from_exponents(&v)
    }

    #[inline]
    pub fn exponents(&self) -> &[Exponent] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or(Error::ExponentOverflow)?);
        }
        Ok(Monomial {
            exps,
            degree: self.degree + other.degree,
        })
    }

    pub fn pow(&self, k: u32) -> Result<Monomial> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for &a in &self.exps {
            let e = (a as u32).checked_mul(k).filter(|&e| e <= Exponent::MAX as u32);
            exps.push(e.ok_or(Error::ExponentOverflow)? as Exponent);
        }
        Ok(Monomial {
            exps,
            degree: self.degree * k,
        })
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
            degree: other.degree - self.degree,
        }
    }

    pub fn checked_div(&self, divisor: &Monomial) -> Option<Monomial> {
        divisor.divides(self).then(|| divisor.quotient_of(self))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[Exponent; 8]> = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[Exponent; 8]> = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// True if some exponent reaches `q`, i.e. the monomial lies in (vars)^[q].
    #[inline]
    pub fn in_frobenius_power(&self, q: u64) -> bool {
        self.exps.iter().any(|&e| e as u64 >= q)
    }

    /// Bit `i` is set iff variable `i` (mod 64) occurs.
    #[inline]
    pub fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                m |= 1 << (i & 63);
            }
        }
        m
    }

    /// Monomial in a larger ring: `map[i]` is the new position of variable `i`.
    pub fn remap(&self, new_nvars: usize, map: &[usize]) -> Monomial {
        let mut exps = SmallVec::from_elem(0, new_nvars);
        for (i, &e) in self.exps.iter().enumerate() {
            exps[map[i]] = e;
        }
        Monomial {
            exps,
            degree: self.degree,
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}
