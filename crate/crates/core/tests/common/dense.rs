//! A dense linear-algebra model of S/P for P = (x_1^k_1, ..., x_n^k_n).

use std::collections::HashMap;
use std::sync::Arc;

use fsing::{Polynomial, RingSpec};

/// Mod-p row reduction over dense vectors.
pub struct Dense {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

fn inv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl Dense {
    pub fn new(p: u64) -> Self {
        Dense { p, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a = (*a + self.p - c * b % self.p) % self.p;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&c| c == 0)
    }

    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let s = inv(v[pivot], self.p);
        for a in v.iter_mut() {
            *a = *a * s % self.p;
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                for (a, b) in row.iter_mut().zip(&v) {
                    *a = (*a + self.p - c * b % self.p) % self.p;
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }

    /// Basis of {λ : Σ λ_i v_i ∈ span(self)} for the given vectors.
    pub fn relations(&self, vs: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = vs.len();
        let width = vs.first().map_or(0, Vec::len);
        // Reduce each vector, then find the kernel of the reduced matrix.
        let reduced: Vec<Vec<u64>> = vs.iter().map(|v| self.reduce(v.clone())).collect();
        let mut m: Vec<Vec<u64>> = (0..width).map(|r| (0..n).map(|c| reduced[c][r]).collect()).collect();
        let p = self.p;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(k) = (row..m.len()).find(|&k| m[k][col] != 0) else {
                continue;
            };
            m.swap(row, k);
            let s = inv(m[row][col], p);
            for a in m[row].iter_mut() {
                *a = *a * s % p;
            }
            for k in 0..m.len() {
                if k != row && m[k][col] != 0 {
                    let c = m[k][col];
                    let pr = m[row].clone();
                    for (a, b) in m[k].iter_mut().zip(&pr) {
                        *a = (*a + p - c * b % p) % p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; n];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - m[r][f]) % p;
                }
                v
            })
            .collect()
    }
}

/// S/P with P = (x_i^{k_i}) as the span of the box monomials.
pub struct BoxQuotient {
    pub ring: Arc<RingSpec>,
    pub bounds: Vec<u32>,
    pub basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl BoxQuotient {
    pub fn new(ring: &Arc<RingSpec>, bounds: &[u32]) -> Self {
        let mut basis = vec![vec![]];
        for &k in bounds {
            basis = basis
                .into_iter()
                .flat_map(|b: Vec<u32>| {
                    (0..k).map(move |e| {
                        let mut b = b.clone();
                        b.push(e);
                        b
                    })
                })
                .collect();
        }
        let index = basis.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
        BoxQuotient {
            ring: ring.clone(),
            bounds: bounds.to_vec(),
            basis,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn pure_powers(&self) -> Vec<Polynomial> {
        self.bounds
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                let mut e = vec![0; self.bounds.len()];
                e[i] = k;
                self.ring.monomial(&e).unwrap()
            })
            .collect()
    }

    /// Coordinates of m·f modulo P.
    pub fn vector_times(&self, f: &Polynomial, m: &[u32]) -> Vec<u64> {
        let p = self.ring.characteristic();
        let mut v = vec![0u64; self.dim()];
        for (mon, c) in f.terms() {
            let e: Vec<u32> = mon.exponents().iter().zip(m).map(|(&a, &b)| a as u32 + b).collect();
            if let Some(&k) = self.index.get(&e) {
                v[k] = (v[k] + c) % p;
            }
        }
        v
    }

    pub fn vector(&self, f: &Polynomial) -> Vec<u64> {
        self.vector_times(f, &vec![0; self.bounds.len()])
    }

    /// The image of the ideal generated by `gens` in S/P.
    pub fn span(&self, gens: &[Polynomial]) -> Dense {
        let mut d = Dense::new(self.ring.characteristic());
        for g in gens {
            for m in &self.basis {
                d.insert(self.vector_times(g, m));
            }
        }
        d
    }

    pub fn basis_poly(&self, k: usize) -> Polynomial {
        self.ring.monomial(&self.basis[k]).unwrap()
    }

    /// Length of S/(P + (gens)).
    pub fn length(&self, gens: &[Polynomial]) -> usize {
        self.dim() - self.span(gens).rank()
    }

    /// The image of ((P + I) : J) in S/P, as a subspace.
    pub fn colon(&self, i: &[Polynomial], j: &[Polynomial]) -> Dense {
        let width = self.dim();
        let span_i = self.span(i);
        // f = Σ λ_k b_k lies in the colon iff f·g ∈ P + I for each g in J, so
        // stack the images under every g and ask for relations modulo span_i in each block.
        let mut blocks = Dense::new(self.ring.characteristic());
        for gi in 0..j.len() {
            for (_, row) in &span_i.rows {
                let mut v = vec![0u64; width * j.len()];
                v[gi * width..(gi + 1) * width].copy_from_slice(row);
                blocks.insert(v);
            }
        }
        let images: Vec<Vec<u64>> = self
            .basis
            .iter()
            .map(|b| j.iter().flat_map(|g| self.vector_times(g, b)).collect())
            .collect();
        let mut out = Dense::new(self.ring.characteristic());
        for v in blocks.relations(&images) {
            out.insert(v);
        }
        out
    }
}
