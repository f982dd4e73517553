//! Germ-level invariants and the full report.
//!
//! delta is established twice, from scratch, along independent routes:
//! the combinatorial total (per-branch semigroup gaps plus pairwise
//! intersection numbers) and the cokernel dimension of the pulled-back
//! algebra inside the product of normalizations. Both always run; the
//! report is only consistent when they agree. The Milnor number of the
//! unfolded equation is then `2*delta - r + 1`, checked against the
//! implicit oracle on request.

use std::collections::BTreeSet;
use std::fmt;

use crate::branch::CurveGerm;
use crate::error::{Error, Result};
use crate::implicit::{self, ImplicitCurve};
use crate::intersection::intersection_multiplicity;
use crate::linalg::RowSpace;
use crate::rat::Rat;
use crate::semigroup::{value_semigroup, SemigroupData};
use crate::series::TruncatedSeries;
use crate::{Limits, Stabilized};

/// The total delta invariant: sum of branch deltas plus all pairwise
/// intersection multiplicities.
pub fn delta_total(germ: &CurveGerm, limits: &Limits) -> Result<Stabilized<usize>> {
    let mut total = 0usize;
    let mut settled = 0usize;
    for branch in germ.branches() {
        let sg = value_semigroup(branch, limits)?;
        total += sg.value.delta();
        settled = settled.max(sg.settled_at);
    }
    for i in 0..germ.r() {
        for j in i + 1..germ.r() {
            total += intersection_multiplicity(germ.branch(i), germ.branch(j), limits)?;
        }
    }
    Ok(Stabilized {
        value: total,
        settled_at: settled,
    })
}

/// Dimension of the cokernel of the pull-back map from polynomials in
/// (x, y) to the product of the branch parameter lines: the independent
/// definition of delta. Computed by exact row reduction at rising
/// precision; the monomial degree range rides the precision, so one
/// doubling doubles both.
pub fn cokernel_dimension(germ: &CurveGerm, limits: &Limits) -> Result<Stabilized<usize>> {
    let mut w = limits.precision_start.max(2);
    let mut dim = cokernel_dim_at(germ, w)?;
    loop {
        let next_w = w.saturating_mul(2);
        if next_w > limits.precision_cap {
            return Err(Error::Undetermined {
                what: "cokernel dimension".to_string(),
                cap: limits.precision_cap,
            });
        }
        let next = cokernel_dim_at(germ, next_w)?;
        if next == dim {
            return Ok(Stabilized {
                value: next,
                settled_at: next_w,
            });
        }
        dim = next;
        w = next_w;
    }
}

fn cokernel_dim_at(germ: &CurveGerm, w: usize) -> Result<usize> {
    let r = germ.r();
    let mut components = Vec::with_capacity(r);
    for branch in germ.branches() {
        let pair = branch.at_precision(w).ok_or_else(|| Error::Undetermined {
            what: format!("cokernel dimension (branch {} data)", branch.label()),
            cap: branch.max_precision(),
        })?;
        components.push(pair);
    }
    let bounds: Vec<(usize, usize)> = components
        .iter()
        .map(|(x, y)| (x.order().lower_bound(), y.order().lower_bound()))
        .collect();
    let ncols = r * w;
    let mut space = RowSpace::new(ncols);
    let one = TruncatedSeries::constant(Rat::one());
    let mut x_pows: Vec<Vec<TruncatedSeries>> = vec![vec![one.clone()]; r];
    let mut y_pows: Vec<Vec<TruncatedSeries>> = vec![vec![one]; r];
    // Monomials in graded order, expanding only past monomials whose image
    // was independent: a dependent image stays dependent after another
    // multiplication by x or y.
    let mut frontier: BTreeSet<(usize, usize)> = BTreeSet::new();
    frontier.insert((0, 0));
    while let Some(&(d, b)) = frontier.iter().next() {
        frontier.remove(&(d, b));
        let a = d - b;
        let visible = bounds
            .iter()
            .any(|&(ox, oy)| a.saturating_mul(ox).saturating_add(b.saturating_mul(oy)) < w);
        if !visible {
            continue;
        }
        let mut row: Vec<(usize, Rat)> = Vec::new();
        for (i, (sx, sy)) in components.iter().enumerate() {
            while x_pows[i].len() <= a {
                let next = x_pows[i].last().unwrap().mul(sx);
                x_pows[i].push(next);
            }
            while y_pows[i].len() <= b {
                let next = y_pows[i].last().unwrap().mul(sy);
                y_pows[i].push(next);
            }
            let image = x_pows[i][a].mul(&y_pows[i][b]).truncate(w);
            row.extend(image.terms().map(|(e, c)| (i * w + e, c.clone())));
        }
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
    Ok(ncols - space.rank())
}

/// The Milnor number of the nodes-only unfolding and its companion, the
/// Milnor number of the unfolding parameter restricted to the image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParameterizedMilnor {
    /// 2*delta - r + 1
    pub mu: i64,
    /// delta - r + 1
    pub image_link_mu: i64,
}

pub fn milnor_from_delta(germ: &CurveGerm, limits: &Limits) -> Result<Stabilized<ParameterizedMilnor>> {
    let delta = delta_total(germ, limits)?;
    let r = germ.r() as i64;
    let d = delta.value as i64;
    let mu = 2 * d - r + 1;
    if mu < 0 {
        return Err(Error::NotRealizable {
            r: germ.r(),
            delta: delta.value,
        });
    }
    Ok(Stabilized {
        value: ParameterizedMilnor {
            mu,
            image_link_mu: d - r + 1,
        },
        settled_at: delta.settled_at,
    })
}

/// One cross-check verdict inside a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: {}",
            if self.passed { "ok" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchReport {
    pub label: String,
    pub multiplicity: usize,
    pub delta: usize,
    pub semigroup: SemigroupData,
}

/// Everything the engine knows about one germ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub r: usize,
    pub per_branch: Vec<BranchReport>,
    /// Symmetric; `None` on the diagonal.
    pub intersection_matrix: Vec<Vec<Option<usize>>>,
    pub delta_total: usize,
    /// The independent route to delta, always computed.
    pub delta_cokernel: usize,
    /// 2*delta - r + 1
    pub mu_parameterized: i64,
    /// delta - r + 1
    pub image_link_mu: i64,
    /// The implicit channel, present when the oracle ran.
    pub implicit: Option<ImplicitCurve>,
    pub oracle_mu: Option<usize>,
    pub checks: Vec<CheckOutcome>,
    pub consistent: bool,
    /// Largest working precision any series computation needed.
    pub precision_used: usize,
    /// Truncation degree the oracle's local algebra settled at.
    pub oracle_degree_used: Option<usize>,
}

/// Runs the full pipeline: validation, per-branch invariants, pairwise
/// intersections, both delta routes, the Milnor number, and (on request)
/// the implicit oracle. Hard failures (invalid input, undetermined
/// answers) surface as errors; mathematical disagreements between routes
/// come back as a report with `consistent = false`.
pub fn analyze(germ: &CurveGerm, limits: &Limits, with_oracle: bool) -> Result<InvariantReport> {
    germ.validated(limits)?;
    let r = germ.r();
    let mut checks: Vec<CheckOutcome> = Vec::new();
    let mut precision_used = 0usize;

    let mut per_branch = Vec::with_capacity(r);
    let mut symmetry_ok = true;
    let mut symmetry_detail = String::new();
    for branch in germ.branches() {
        let sg = value_semigroup(branch, limits)?;
        precision_used = precision_used.max(sg.settled_at);
        let data = sg.value;
        if data.conductor() != 2 * data.delta() {
            symmetry_ok = false;
            symmetry_detail.push_str(&format!(
                "branch {}: conductor {} != 2*delta {}; ",
                branch.label(),
                data.conductor(),
                2 * data.delta()
            ));
        }
        per_branch.push(BranchReport {
            label: branch.label().to_string(),
            multiplicity: branch.multiplicity()?,
            delta: data.delta(),
            semigroup: data,
        });
    }
    checks.push(CheckOutcome {
        name: "semigroup-symmetry",
        passed: symmetry_ok,
        detail: if symmetry_ok {
            "conductor = 2*delta on every branch".to_string()
        } else {
            symmetry_detail
        },
    });

    let mut matrix = vec![vec![None; r]; r];
    let mut pair_sum = 0usize;
    #[allow(clippy::needless_range_loop)]
    for i in 0..r {
        for j in i + 1..r {
            let m = intersection_multiplicity(germ.branch(i), germ.branch(j), limits)?;
            matrix[i][j] = Some(m);
            matrix[j][i] = Some(m);
            pair_sum += m;
        }
    }

    let delta_total: usize = per_branch.iter().map(|b| b.delta).sum::<usize>() + pair_sum;
    let cokernel = cokernel_dimension(germ, limits)?;
    precision_used = precision_used.max(cokernel.settled_at);
    checks.push(CheckOutcome {
        name: "delta-routes-agree",
        passed: delta_total == cokernel.value,
        detail: format!(
            "combinatorial delta {} vs cokernel dimension {}",
            delta_total, cokernel.value
        ),
    });

    let mu = 2 * delta_total as i64 - r as i64 + 1;
    let image_link_mu = delta_total as i64 - r as i64 + 1;
    checks.push(CheckOutcome {
        name: "mu-nonnegative",
        passed: mu >= 0,
        detail: format!("mu = {mu}"),
    });

    let mut implicit_curve = None;
    let mut oracle_mu = None;
    let mut oracle_degree_used = None;
    if with_oracle {
        let curve = implicit::implicitize_curve(germ)?;
        let mut vanishing_ok = true;
        let mut vanishing_detail = String::new();
        for (label, factor) in &curve.factors {
            let branch = germ
                .branches()
                .iter()
                .find(|b| b.label() == label)
                .expect("factor labels come from the germ");
            if !factor
                .eval_series(branch.x(), branch.y())
                .is_zero_to_precision()
            {
                vanishing_ok = false;
                vanishing_detail
                    .push_str(&format!("factor of {label} does not annihilate it; "));
            }
        }
        checks.push(CheckOutcome {
            name: "oracle-factor-vanishing",
            passed: vanishing_ok,
            detail: if vanishing_ok {
                "every factor annihilates its branch".to_string()
            } else {
                vanishing_detail
            },
        });
        let oracle = implicit::milnor_implicit(&curve.g, limits)?;
        checks.push(CheckOutcome {
            name: "oracle-mu-agrees",
            passed: oracle.value as i64 == mu,
            detail: format!("2*delta - r + 1 = {mu} vs jacobian colength {}", oracle.value),
        });
        oracle_mu = Some(oracle.value);
        oracle_degree_used = Some(oracle.settled_at);
        implicit_curve = Some(curve);
    }

    let consistent = checks.iter().all(|c| c.passed);
    Ok(InvariantReport {
        r,
        per_branch,
        intersection_matrix: matrix,
        delta_total,
        delta_cokernel: cokernel.value,
        mu_parameterized: mu,
        image_link_mu,
        implicit: implicit_curve,
        oracle_mu,
        checks,
        consistent,
        precision_used,
        oracle_degree_used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::Branch;

    fn limits() -> Limits {
        Limits::default()
    }

    fn germ(branches: Vec<Branch>) -> CurveGerm {
        CurveGerm::new(branches).unwrap()
    }

    fn node() -> CurveGerm {
        germ(vec![
            Branch::monomial_pair("a", 1, 0),
            Branch::polynomial("b", [], [(1, Rat::one())]),
        ])
    }

    fn tacnode() -> CurveGerm {
        germ(vec![
            Branch::polynomial("a", [(1, Rat::one())], [(2, Rat::one())]),
            Branch::polynomial("b", [(1, Rat::one())], [(2, Rat::from_int(-1))]),
        ])
    }

    #[test]
    fn delta_totals() {
        let l = limits();
        assert_eq!(delta_total(&node(), &l).unwrap().value, 1);
        assert_eq!(delta_total(&tacnode(), &l).unwrap().value, 2);
        let cusp = germ(vec![Branch::monomial_pair("a", 2, 3)]);
        assert_eq!(delta_total(&cusp, &l).unwrap().value, 1);
    }

    #[test]
    fn cokernel_dimensions() {
        let l = limits();
        let smooth = germ(vec![Branch::monomial_pair("a", 1, 2)]);
        assert_eq!(cokernel_dimension(&smooth, &l).unwrap().value, 0);
        let cusp = germ(vec![Branch::monomial_pair("a", 2, 3)]);
        assert_eq!(cokernel_dimension(&cusp, &l).unwrap().value, 1);
        assert_eq!(cokernel_dimension(&node(), &l).unwrap().value, 1);
    }

    #[test]
    fn milnor_from_delta_examples() {
        let l = limits();
        let cusp = germ(vec![Branch::monomial_pair("a", 2, 3)]);
        assert_eq!(milnor_from_delta(&cusp, &l).unwrap().value.mu, 2);
        assert_eq!(milnor_from_delta(&node(), &l).unwrap().value.mu, 1);
        let smooth = germ(vec![Branch::monomial_pair("a", 1, 2)]);
        assert_eq!(milnor_from_delta(&smooth, &l).unwrap().value.mu, 0);
        let e8 = germ(vec![Branch::monomial_pair("a", 3, 5)]);
        let out = milnor_from_delta(&e8, &l).unwrap().value;
        assert_eq!(out.mu, 8);
        assert_eq!(out.image_link_mu, 4);
    }

    #[test]
    fn analyze_cusp_with_oracle() {
        let cusp = germ(vec![Branch::monomial_pair("a", 2, 3)]);
        let report = analyze(&cusp, &limits(), true).unwrap();
        assert_eq!(report.r, 1);
        assert_eq!(report.delta_total, 1);
        assert_eq!(report.delta_cokernel, 1);
        assert_eq!(report.mu_parameterized, 2);
        assert_eq!(report.oracle_mu, Some(2));
        assert!(report.consistent);
        assert!(report.checks.iter().all(|c| c.passed));
    }

    #[test]
    fn analyze_rejects_invalid_germ() {
        let bad = germ(vec![Branch::monomial_pair("a", 2, 4)]);
        assert!(matches!(
            analyze(&bad, &limits(), false),
            Err(Error::InvalidGerm(_))
        ));
    }

    #[test]
    fn analyze_node_matrix_is_symmetric_with_empty_diagonal() {
        let report = analyze(&node(), &limits(), true).unwrap();
        assert_eq!(report.intersection_matrix[0][1], Some(1));
        assert_eq!(report.intersection_matrix[1][0], Some(1));
        assert_eq!(report.intersection_matrix[0][0], None);
        assert_eq!(report.mu_parameterized, 1);
        assert_eq!(report.oracle_mu, Some(1));
        assert!(report.consistent);
    }

    #[test]
    fn rational_coefficients_run_through_both_channels() {
        // (t^2, t^3/2): still a cusp; content normalization of the
        // implicit equation must not disturb the oracle.
        let g = germ(vec![Branch::polynomial(
            "a",
            [(2, Rat::one())],
            [(3, Rat::new(1, 2))],
        )]);
        let report = analyze(&g, &limits(), true).unwrap();
        assert_eq!(report.delta_total, 1);
        assert_eq!(report.mu_parameterized, 2);
        assert_eq!(report.oracle_mu, Some(2));
        assert!(report.consistent);
    }

    #[test]
    fn multi_term_x_component_with_far_sheet_unit_factor() {
        // (t + t^2, t^3): smooth as a germ, but the global resultant
        // carries a second sheet that misses the origin; the extra factor
        // is a unit there and must not disturb any invariant.
        let g = germ(vec![Branch::polynomial(
            "a",
            [(1, Rat::one()), (2, Rat::one())],
            [(3, Rat::one())],
        )]);
        let report = analyze(&g, &limits(), true).unwrap();
        assert_eq!(report.delta_total, 0);
        assert_eq!(report.mu_parameterized, 0);
        assert_eq!(report.oracle_mu, Some(0));
        assert!(report.consistent);
    }
}
