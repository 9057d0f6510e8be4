use std::collections::{BTreeMap, HashMap};

use super::linalg::Echelon;
use crate::config::Budget;
use crate::error::Result;
use crate::groebner::{standard_monomials, Ideal};
use crate::polyring::{Monomial, Polynomial};

/// A vector-space basis of the socle ((x) + I : n) / ((x) + I).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocleBasis {
    pub sop: Vec<Polynomial>,
    /// Combinations of standard monomials of (x) + I, in canonical (reduced) form.
    pub residues: Vec<Polynomial>,
}

impl SocleBasis {
    pub fn dim(&self) -> usize {
        self.residues.len()
    }
}

/// Computes the socle of S/(I + (sop)) as the common kernel of multiplication
/// by the variables on the standard-monomial basis.
pub fn socle_basis(i: &Ideal, sop: &[Polynomial], budget: &Budget) -> Result<SocleBasis> {
    let k = i.with_generators(sop.iter().cloned())?;
    let ring = i.ring().clone();
    let gb = k.groebner(budget)?;
    if gb.is_unit() {
        return Ok(SocleBasis {
            sop: sop.to_vec(),
            residues: Vec::new(),
        });
    }
    let basis = standard_monomials(&k, budget)?;
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(j, m)| (m, j)).collect();
    let n = ring.nvars();
    let width = basis.len();

    // Constraint (variable, target basis element) -> sparse coefficients over source columns.
    let mut constraints: BTreeMap<(usize, usize), Vec<(usize, u64)>> = BTreeMap::new();
    for (j, b) in basis.iter().enumerate() {
        for v in 0..n {
            let xb = b.mul(&Monomial::variable(n, v, 1)?)?;
            if let Some(&t) = index.get(&xb) {
                constraints.entry((v, t)).or_default().push((j, 1));
                continue;
            }
            let nf = gb.reduce_terms(&[(xb, 1)], budget)?;
            for (m, c) in nf.terms() {
                let t = index[m];
                constraints.entry((v, t)).or_default().push((j, *c));
            }
        }
    }

    let mut ech = Echelon::new(*ring.field(), width);
    for sparse in constraints.values() {
        if ech.rank() == width {
            break;
        }
        let mut row = vec![0u64; width];
        for &(j, c) in sparse {
            row[j] = c;
        }
        ech.insert(row);
    }
    let residues = ech
        .kernel()
        .into_iter()
        .map(|v| {
            let terms = v
                .iter()
                .zip(&basis)
                .filter(|(c, _)| **c != 0)
                .map(|(c, m)| (m.clone(), *c))
                .collect();
            Polynomial::from_terms(ring.clone(), terms)
        })
        .collect();
    Ok(SocleBasis {
        sop: sop.to_vec(),
        residues,
    })
}
