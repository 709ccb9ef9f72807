//! Exact linear algebra over the rationals: dense reduced row echelon form
//! for small systems and an incremental sparse echelon basis for large,
//! sparse relation matrices.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Brings `rows` into reduced row echelon form in place, drops zero rows,
/// and returns the pivot column of each remaining row.
pub fn rref(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

pub type SparseRow = BTreeMap<usize, Rational>;

/// Row space of a sparse matrix kept in reduced echelon form: every stored
/// row has a distinct leading column (its pivot) with coefficient one, and
/// no other stored row has an entry in that column.
#[derive(Debug, Clone, Default)]
pub struct SparseEchelon {
    rows: BTreeMap<usize, SparseRow>,
    /// Non-pivot column -> pivots of the rows with an entry there.
    users: BTreeMap<usize, BTreeSet<usize>>,
}

fn axpy(target: &mut SparseRow, factor: &Rational, row: &SparseRow) {
    for (&c, v) in row {
        let entry = target.entry(c).or_insert_with(Rational::zero);
        *entry -= factor * v;
        if entry.is_zero() {
            target.remove(&c);
        }
    }
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Stored rows have entries only in their own pivot and in non-pivot
    /// columns, so one pass over the pivot entries of `row` clears them.
    fn reduce_in_place(&self, row: &mut SparseRow) {
        row.retain(|_, v| !v.is_zero());
        let hits: Vec<usize> = row.keys().copied().filter(|c| self.rows.contains_key(c)).collect();
        for c in hits {
            if let Some(f) = row.get(&c).cloned() {
                axpy(row, &f, &self.rows[&c]);
            }
        }
    }

    /// Adds `row` to the spanning set. Returns `true` if the rank grew.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        self.reduce_in_place(&mut row);
        let Some((&lead, v)) = row.first_key_value() else {
            return false;
        };
        let inv = v.recip();
        if !inv.is_one() {
            for v in row.values_mut() {
                *v *= &inv;
            }
        }
        for p in self.users.remove(&lead).unwrap_or_default() {
            let target = self.rows.get_mut(&p).expect("registered pivot");
            let f = target[&lead].clone();
            axpy(target, &f, &row);
            for &k in row.keys().filter(|&&k| k != lead) {
                let users = self.users.entry(k).or_default();
                if target.contains_key(&k) {
                    users.insert(p);
                } else {
                    users.remove(&p);
                }
            }
        }
        for &k in row.keys().filter(|&&k| k != lead) {
            self.users.entry(k).or_default().insert(lead);
        }
        self.rows.insert(lead, row);
        true
    }

    /// The unique representative of `row` modulo the row space that has no
    /// entries in pivot columns.
    pub fn reduce(&self, row: &SparseRow) -> SparseRow {
        let mut work = row.clone();
        self.reduce_in_place(&mut work);
        work
    }
}
