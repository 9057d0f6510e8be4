use super::ideal::Ideal;
use super::length::krull_dim;
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::polyring::Polynomial;
use crate::verdict::{Certificate, SearchRecord, Status, Verdict};

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u64) / (i as u64 + 1);
    }
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(m: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = m.len();
    match n {
        0 => Err(Error::InvalidArgument("empty matrix".into())),
        1 => Ok(m[0][0].clone()),
        _ => {
            let mut acc = Polynomial::zero(m[0][0].ring().clone());
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][col].mul(&determinant(&minor)?)?;
                acc = if col % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
            }
            Ok(acc)
        }
    }
}

/// Jacobian criterion: S/I is smooth iff I + (c x c minors of the Jacobian) = (1),
/// with `c` the codimension (computed from the Krull dimension unless given).
/// Returns UNDETERMINED when the number of minors exceeds `max_minors`.
pub fn is_smooth(i: &Ideal, codim: Option<usize>, max_minors: u64, budget: &Budget) -> Result<Verdict> {
    let ring = i.ring();
    let n = ring.nvars();
    let c = match codim {
        Some(c) => c,
        None => n - krull_dim(i, budget)?,
    };
    let gens = i.gens();
    if c == 0 {
        // The minors ideal of size 0 is (1): a zero-codimension quotient of S is S itself.
        return Ok(Verdict {
            status: Status::True,
            certificate: Some(Certificate::Smooth { codim: 0, minors: 0 }),
            log: vec![],
        });
    }
    let count = binomial(gens.len(), c).saturating_mul(binomial(n, c));
    if count > max_minors {
        return Ok(Verdict {
            status: Status::Undetermined,
            certificate: None,
            log: vec![SearchRecord {
                e: 0,
                q: 1,
                contained: false,
                generators: count.min(usize::MAX as u64) as usize,
                millis: 0,
            }],
        });
    }
    let jac: Vec<Vec<Polynomial>> = gens.iter().map(|g| (0..n).map(|v| g.derivative(v)).collect()).collect();
    let mut minors = Vec::new();
    for rows in combinations(gens.len(), c) {
        for cols in combinations(n, c) {
            let sub: Vec<Vec<Polynomial>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&col| jac[r][col].clone()).collect())
                .collect();
            let d = determinant(&sub)?;
            if !d.is_zero() {
                minors.push(d);
            }
        }
    }
    let locus = i.with_generators(minors)?;
    let gb = locus.groebner(budget)?;
    if gb.is_unit() {
        return Ok(Verdict {
            status: Status::True,
            certificate: Some(Certificate::Smooth {
                codim: c,
                minors: count as usize,
            }),
            log: vec![],
        });
    }
    let at_origin = gb.elements().iter().all(|g| g.constant_term() == 0);
    Ok(Verdict {
        status: Status::False,
        certificate: Some(Certificate::Singular {
            codim: c,
            singular_locus: gb.elements().to_vec(),
            at_origin,
        }),
        log: vec![],
    })
}
