//! Value semigroups of branches.
//!
//! The value semigroup of a branch is the set of t-adic orders
//! `ord_t p(x(t), y(t))` over bivariate polynomials p. It is computed by
//! exact row reduction of the monomial images inside the truncated series
//! space: the pivot columns of the row space are exactly the achieved
//! orders. The gap count is the delta invariant of the branch and the
//! conductor is 2*delta (plane-branch symmetry, asserted by tests, not
//! assumed here).

use std::collections::BTreeSet;

use crate::branch::Branch;
use crate::error::{Error, Result};
use crate::linalg::RowSpace;
use crate::series::TruncatedSeries;
use crate::{Limits, Stabilized};

/// Achieved orders, gaps, and conductor of one branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupData {
    achieved: BTreeSet<usize>,
    gaps: Vec<usize>,
    conductor: usize,
}

impl SemigroupData {
    fn from_gaps(gaps: Vec<usize>) -> Self {
        let conductor = gaps.last().map_or(0, |&g| g + 1);
        let achieved = (0..conductor)
            .filter(|n| !gaps.contains(n))
            .collect();
        SemigroupData {
            achieved,
            gaps,
            conductor,
        }
    }

    /// Orders achieved below the conductor; everything at or above the
    /// conductor is achieved as well.
    pub fn achieved_below_conductor(&self) -> &BTreeSet<usize> {
        &self.achieved
    }

    pub fn contains(&self, n: usize) -> bool {
        n >= self.conductor || self.achieved.contains(&n)
    }

    pub fn gaps(&self) -> &[usize] {
        &self.gaps
    }

    /// The delta invariant of the branch: the number of gaps.
    pub fn delta(&self) -> usize {
        self.gaps.len()
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }
}

/// Orders achievable below `w` by polynomials pulled back along the branch.
/// Returns the gap set (complement of the pivot columns in `[0, w)`).
fn gaps_at_precision(branch: &Branch, w: usize) -> Result<Vec<usize>> {
    let (sx, sy) = branch.at_precision(w).ok_or_else(|| Error::Undetermined {
        what: format!("value semigroup of branch {}", branch.label()),
        cap: branch.max_precision(),
    })?;
    let ox = sx.order().lower_bound();
    let oy = sy.order().lower_bound();
    let mut space = RowSpace::new(w);
    let mut x_pows: Vec<TruncatedSeries> = vec![TruncatedSeries::constant(crate::Rat::one())];
    let mut y_pows: Vec<TruncatedSeries> = vec![TruncatedSeries::constant(crate::Rat::one())];
    // Graded frontier; only monomials with an independent image spawn
    // successors (a dependent image stays dependent after another
    // multiplication by x or y).
    let mut frontier: BTreeSet<(usize, usize)> = BTreeSet::new();
    frontier.insert((0, 0));
    while let Some(&(d, b)) = frontier.iter().next() {
        frontier.remove(&(d, b));
        let a = d - b;
        if a.saturating_mul(ox).saturating_add(b.saturating_mul(oy)) >= w {
            continue;
        }
        while x_pows.len() <= a {
            let next = x_pows.last().unwrap().mul(&sx);
            x_pows.push(next);
        }
        while y_pows.len() <= b {
            let next = y_pows.last().unwrap().mul(&sy);
            y_pows.push(next);
        }
        let image = x_pows[a].mul(&y_pows[b]).truncate(w);
        let row: Vec<(usize, crate::Rat)> = image.terms().map(|(e, c)| (e, c.clone())).collect();
        if row.is_empty() {
            continue;
        }
        if space.insert(&row).is_some() {
            if space.is_full() {
                break;
            }
            frontier.insert((d + 1, b));
            frontier.insert((d + 1, b + 1));
        }
    }
    Ok((0..w).filter(|&e| !space.has_pivot(e)).collect())
}

/// The value semigroup, iterated with rising precision until the gap set
/// is stable under one precision doubling.
pub fn value_semigroup(branch: &Branch, limits: &Limits) -> Result<Stabilized<SemigroupData>> {
    let mut w = limits.precision_start.max(2);
    let mut gaps = gaps_at_precision(branch, w)?;
    loop {
        let next_w = w.saturating_mul(2);
        if next_w > limits.precision_cap || next_w > branch.max_precision() {
            return Err(Error::Undetermined {
                what: format!("value semigroup of branch {}", branch.label()),
                cap: limits.precision_cap.min(branch.max_precision()),
            });
        }
        let next = gaps_at_precision(branch, next_w)?;
        if next == gaps {
            return Ok(Stabilized {
                value: SemigroupData::from_gaps(next),
                settled_at: next_w,
            });
        }
        gaps = next;
        w = next_w;
    }
}

/// The delta invariant of a single branch: the number of semigroup gaps.
pub fn branch_delta(branch: &Branch, limits: &Limits) -> Result<Stabilized<usize>> {
    let sg = value_semigroup(branch, limits)?;
    Ok(Stabilized {
        value: sg.value.delta(),
        settled_at: sg.settled_at,
    })
}
