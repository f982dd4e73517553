//! Incremental exact row reduction.
//!
//! [`RowSpace`] accumulates a row-echelon basis of a subspace of Q^n.
//! Rows are kept as primitive integer vectors (content stripped, leading
//! entry positive), so coefficient growth stays in check without leaving
//! exact arithmetic. Pivot columns are exactly the positions at which some
//! vector of the row space has its first nonzero entry, which is what the
//! valuation-reading callers need.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::rat::Rat;

type SparseRow = Vec<(usize, BigInt)>;

#[derive(Debug, Clone)]
pub struct RowSpace {
    ncols: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl RowSpace {
    pub fn new(ncols: usize) -> Self {
        RowSpace {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Insert a rational row. Returns the pivot column if the row was
    /// independent of the space so far, `None` if it reduced to zero.
    pub fn insert(&mut self, row: &[(usize, Rat)]) -> Option<usize> {
        let mut current = clear_denominators(row, self.ncols);
        loop {
            let &(lead_col, ref lead) = current.first()?;
            match self.rows.get(&lead_col) {
                Some(pivot_row) => {
                    let pivot_lead = &pivot_row[0].1;
                    // current <- current * pivot_lead - pivot_row * lead
                    current = combine(&current, pivot_lead, pivot_row, lead);
                    strip_content(&mut current);
                }
                None => {
                    strip_content(&mut current);
                    if current[0].1.is_negative() {
                        for (_, v) in &mut current {
                            *v = -std::mem::take(v);
                        }
                    }
                    self.rows.insert(lead_col, current);
                    return Some(lead_col);
                }
            }
        }
    }
}

fn clear_denominators(row: &[(usize, Rat)], ncols: usize) -> SparseRow {
    let mut lcm = BigInt::from(1);
    for (col, c) in row {
        debug_assert!(*col < ncols, "column {col} out of range {ncols}");
        if !c.is_zero() {
            lcm = lcm.lcm(c.denominator());
        }
    }
    let mut out: SparseRow = row
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(col, c)| (*col, c.numerator() * (&lcm / c.denominator())))
        .collect();
    out.sort_by_key(|&(col, _)| col);
    out
}

/// `a * ca - b * cb` over sorted sparse integer rows; the leading entries
/// cancel by construction.
fn combine(a: &SparseRow, ca: &BigInt, b: &SparseRow, cb: &BigInt) -> SparseRow {
    let mut out = SparseRow::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&(ac, ref av)), Some(&(bc, ref bv))) if ac == bc => {
                let v = av * ca - bv * cb;
                if !v.is_zero() {
                    out.push((ac, v));
                }
                i += 1;
                j += 1;
            }
            (Some(&(ac, ref av)), Some(&(bc, _))) if ac < bc => {
                out.push((ac, av * ca));
                i += 1;
            }
            (Some(_), Some(&(bc, ref bv))) => {
                out.push((bc, -(bv * cb)));
                j += 1;
            }
            (Some(&(ac, ref av)), None) => {
                out.push((ac, av * ca));
                i += 1;
            }
            (None, Some(&(bc, ref bv))) => {
                out.push((bc, -(bv * cb)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn strip_content(row: &mut SparseRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g == BigInt::from(1) {
            return;
        }
    }
    if g.is_zero() {
        return;
    }
    for (_, v) in row.iter_mut() {
        *v = &*v / &g;
    }
}
