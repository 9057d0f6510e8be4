//! Dense row reduction over F_p, enough for socles of small Artinian rings.

use crate::polyring::PrimeField;

/// Rows kept in echelon form as they arrive.
pub(crate) struct Echelon {
    field: PrimeField,
    width: usize,
    /// (pivot column, row with a 1 in that column and zeros before it)
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    pub fn new(field: PrimeField, width: usize) -> Self {
        Echelon {
            field,
            width,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn eliminate(&self, row: &mut [u64]) {
        let f = self.field;
        for (col, pivot_row) in &self.rows {
            let c = row[*col];
            if c != 0 {
                let neg = f.neg(c);
                for (x, y) in row.iter_mut().zip(pivot_row).skip(*col) {
                    if *y != 0 {
                        *x = f.add(*x, f.mul(neg, *y));
                    }
                }
            }
        }
    }

    /// Adds a row; returns false if it was already in the span.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        debug_assert_eq!(row.len(), self.width);
        self.eliminate(&mut row);
        let Some(col) = row.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = self.field.inv(row[col]);
        for x in row.iter_mut() {
            *x = self.field.mul(*x, inv);
        }
        // Keep earlier rows reduced at the new pivot, so the set stays in RREF.
        for (_, other) in self.rows.iter_mut() {
            let c = other[col];
            if c != 0 {
                let neg = self.field.neg(c);
                for (x, y) in other.iter_mut().zip(&row) {
                    if *y != 0 {
                        *x = self.field.add(*x, self.field.mul(neg, *y));
                    }
                }
            }
        }
        let at = self.rows.partition_point(|(c, _)| *c < col);
        self.rows.insert(at, (col, row));
        true
    }

    /// Canonical basis of the kernel {v : row · v = 0 for every row}:
    /// one vector per free column, with a 1 there and 0 at the other free columns.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let mut is_pivot = vec![false; self.width];
        for (c, _) in &self.rows {
            is_pivot[*c] = true;
        }
        (0..self.width)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = vec![0u64; self.width];
                v[free] = 1;
                for (c, row) in &self.rows {
                    v[*c] = self.field.neg(row[free]);
                }
                v
            })
            .collect()
    }

    /// The rows themselves (reduced row echelon form, pivots increasing).
    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }
}
