//! The brute-force verification channel.
//!
//! Implicitization recovers the defining equation g of the image curve by
//! eliminating the parameter with a Sylvester resultant, and the Milnor
//! number is then the dimension of the local algebra of the Jacobian
//! ideal, computed by truncation linear algebra. No standard-basis
//! machinery: the truncation route is slower but independently auditable,
//! which is what an oracle is for. The oracle refuses truncated-series
//! input rather than truncating on its own; an oracle must never be
//! approximately right.

use std::collections::BTreeSet;

use crate::branch::{Branch, CurveGerm};
use crate::error::{Error, Result};
use crate::linalg::RowSpace;
use crate::poly::{sylvester_resultant, BivarPoly, UniPolyOverBivar, Var};
use crate::rat::Rat;
use crate::series::TruncatedSeries;
use crate::{Limits, Stabilized};

/// The implicit equation of a germ with its per-branch factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicitCurve {
    pub g: BivarPoly,
    /// Branch label together with the primitive factor it contributes.
    pub factors: Vec<(String, BivarPoly)>,
}

/// Checks that the branch meets the origin at t = 0 only: a common root of
/// x(t) and y(t) away from 0 would make the global resultant pick up a
/// second pass of the image curve through the origin.
pub fn single_origin_pass(branch: &Branch) -> Result<()> {
    let x = dense_coeffs(branch.x());
    let y = dense_coeffs(branch.y());
    let g = univariate_gcd(x, y);
    let nonzero_terms = g.iter().filter(|c| !c.is_zero()).count();
    if nonzero_terms > 1 {
        return Err(Error::OracleOriginRevisited {
            branch: branch.label().to_string(),
        });
    }
    Ok(())
}

fn dense_coeffs(series: &TruncatedSeries) -> Vec<Rat> {
    let deg = series.support().max();
    let mut out = vec![Rat::zero(); deg.map_or(0, |d| d + 1)];
    for (e, c) in series.terms() {
        out[e] = c.clone();
    }
    out
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(Rat::is_zero) {
        p.pop();
    }
    p
}

fn univariate_gcd(a: Vec<Rat>, b: Vec<Rat>) -> Vec<Rat> {
    let mut a = trim(a);
    let mut b = trim(b);
    while !b.is_empty() {
        let r = univariate_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn univariate_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = &b[db];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let factor = &rem[dr] / lead;
        for (k, bc) in b.iter().enumerate() {
            let delta = &factor * bc;
            rem[dr - db + k] -= &delta;
        }
        rem = trim(rem);
        if rem.len() <= db {
            break;
        }
    }
    trim(rem)
}

/// The primitive implicit equation of one branch:
/// `Res_t(x - x(t), y - y(t))`, content-normalized with positive leading
/// coefficient. Requires exact polynomial components.
pub fn implicitize_branch(branch: &Branch) -> Result<BivarPoly> {
    if !branch.is_polynomial() {
        return Err(Error::OracleNeedsPolynomial {
            branch: branch.label().to_string(),
        });
    }
    single_origin_pass(branch)?;
    let f = eliminand(Var::X, branch.x());
    let g = eliminand(Var::Y, branch.y());
    let res = sylvester_resultant(&f, &g)?;
    debug_assert!(!res.is_zero(), "resultant of a parameterization is nonzero");
    Ok(res.normalized_primitive())
}

/// `v - s(t)` as a polynomial in the eliminated t.
fn eliminand(v: Var, series: &TruncatedSeries) -> UniPolyOverBivar {
    let deg = series.support().max().unwrap_or(0);
    let mut coeffs = vec![BivarPoly::zero(); deg + 1];
    coeffs[0] = BivarPoly::var(v);
    for (e, c) in series.terms() {
        coeffs[e] = coeffs[e].sub(&BivarPoly::constant(c.clone()));
    }
    UniPolyOverBivar::new(coeffs)
}

/// The reduced equation of the whole germ: the product of the distinct
/// per-branch factors.
pub fn implicitize_curve(germ: &CurveGerm) -> Result<ImplicitCurve> {
    let mut factors: Vec<(String, BivarPoly)> = Vec::with_capacity(germ.r());
    for branch in germ.branches() {
        let factor = implicitize_branch(branch)?;
        if let Some((other, _)) = factors.iter().find(|(_, f)| *f == factor) {
            return Err(Error::InfiniteIntersection {
                first: other.clone(),
                second: branch.label().to_string(),
            });
        }
        factors.push((branch.label().to_string(), factor));
    }
    let g = factors
        .iter()
        .fold(BivarPoly::constant(Rat::one()), |acc, (_, f)| acc.mul(f));
    Ok(ImplicitCurve { g, factors })
}

/// Index of the monomial x^a y^b among all monomials of total degree < N,
/// graded, x-power descending inside each degree.
fn monomial_index(a: usize, b: usize) -> usize {
    let d = a + b;
    d * (d + 1) / 2 + b
}

/// Dimension of Q[x, y] truncated below total degree `n`, modulo the
/// truncated monomial multiples of the generators.
fn quotient_dim_at(gens: &[BivarPoly], n: usize) -> usize {
    let ncols = n * (n + 1) / 2;
    let mut space = RowSpace::new(ncols);
    // One generator block at a time, multipliers in graded order; within a
    // block only independent rows spawn successor multipliers, since a
    // dependent truncated multiple stays dependent after another
    // multiplication by x or y (its dependence relation shifts into rows
    // of this or earlier blocks).
    'outer: for gen in gens {
        if gen.is_zero() {
            continue;
        }
        let mut frontier: BTreeSet<(usize, usize)> = BTreeSet::new();
        frontier.insert((0, 0));
        while let Some(&(d, b)) = frontier.iter().next() {
            frontier.remove(&(d, b));
            let a = d - b;
            let row: Vec<(usize, Rat)> = gen
                .terms()
                .filter(|(gx, gy, _)| a + gx + b + gy < n)
                .map(|(gx, gy, c)| (monomial_index(a + gx, b + gy), c.clone()))
                .collect();
            if row.is_empty() {
                continue;
            }
            if space.insert(&row).is_some() {
                if space.is_full() {
                    break 'outer;
                }
                if d + 1 < n {
                    frontier.insert((d + 1, b));
                    frontier.insert((d + 1, b + 1));
                }
            }
        }
    }
    ncols - space.rank()
}

/// Dimension of the local algebra at the origin modulo the ideal spanned
/// by `gens`, iterated over rising truncation degree until the dimension
/// stops growing.
///
/// The dimension is nondecreasing in the truncation degree, and agreement
/// at two consecutive degrees already proves it has reached the colength
/// (the truncated ideal then absorbs the next power of the maximal ideal,
/// so every later degree agrees too, doublings included). The probe
/// degrees therefore climb a geometric ladder and test n against n + 1 at
/// each rung, which keeps the matrices far smaller than doubling all the
/// way up. Still growing at the cap means the ideal does not have finite
/// colength (or the cap is too small), and that is reported, never
/// guessed around.
pub fn local_algebra_dimension(gens: &[BivarPoly], limits: &Limits) -> Result<Stabilized<usize>> {
    if gens.iter().all(BivarPoly::is_zero) {
        return Err(Error::NonIsolated {
            cap: limits.degree_cap,
        });
    }
    let mut n = limits.degree_start.max(2);
    while n < limits.degree_cap {
        let dim = quotient_dim_at(gens, n);
        let next = quotient_dim_at(gens, n + 1);
        debug_assert!(next >= dim, "quotient dimension must be nondecreasing");
        if next == dim {
            return Ok(Stabilized {
                value: next,
                settled_at: n + 1,
            });
        }
        let bumped = (n + n / 2 + 1).min(limits.degree_cap.saturating_sub(1));
        if bumped <= n {
            break;
        }
        n = bumped;
    }
    Err(Error::NonIsolated {
        cap: limits.degree_cap,
    })
}

/// The Milnor number of a reduced plane curve equation: the local algebra
/// dimension of its Jacobian ideal. `g` must vanish at the origin.
pub fn milnor_implicit(g: &BivarPoly, limits: &Limits) -> Result<Stabilized<usize>> {
    assert!(
        g.coeff(0, 0).is_zero(),
        "implicit equation must vanish at the origin"
    );
    local_algebra_dimension(&[g.partial(Var::X), g.partial(Var::Y)], limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> Limits {
        Limits::default()
    }

    fn p(terms: &[(i64, usize, usize)]) -> BivarPoly {
        BivarPoly::from_terms(
            terms
                .iter()
                .map(|&(c, dx, dy)| (dx, dy, Rat::from_int(c))),
        )
    }

    #[test]
    fn implicitize_cusp() {
        let b = Branch::monomial_pair("b", 2, 3);
        assert_eq!(implicitize_branch(&b).unwrap(), p(&[(1, 0, 2), (-1, 3, 0)]));
    }

    #[test]
    fn implicitize_smooth_graph() {
        let b = Branch::monomial_pair("b", 1, 2);
        assert_eq!(implicitize_branch(&b).unwrap(), p(&[(1, 0, 1), (-1, 2, 0)]));
    }

    #[test]
    fn implicitize_e6() {
        let b = Branch::monomial_pair("b", 3, 4);
        assert_eq!(implicitize_branch(&b).unwrap(), p(&[(1, 0, 3), (-1, 4, 0)]));
    }

    #[test]
    fn implicitize_node_and_tacnode() {
        let node = CurveGerm::new(vec![
            Branch::monomial_pair("a", 1, 0),
            Branch::polynomial("b", [], [(1, Rat::one())]),
        ])
        .unwrap();
        assert_eq!(implicitize_curve(&node).unwrap().g, p(&[(1, 1, 1)]));

        let tacnode = CurveGerm::new(vec![
            Branch::polynomial("a", [(1, Rat::one())], [(2, Rat::one())]),
            Branch::polynomial("b", [(1, Rat::one())], [(2, Rat::from_int(-1))]),
        ])
        .unwrap();
        // (y - x^2)(y + x^2) = y^2 - x^4
        assert_eq!(
            implicitize_curve(&tacnode).unwrap().g,
            p(&[(1, 0, 2), (-1, 4, 0)])
        );
    }

    #[test]
    fn factors_vanish_on_their_branches() {
        for (a, b) in [(2usize, 3usize), (2, 5), (3, 4), (3, 5), (2, 7)] {
            let branch = Branch::monomial_pair("b", a, b);
            let g = implicitize_branch(&branch).unwrap();
            assert!(g.eval_series(branch.x(), branch.y()).is_zero_to_precision());
            assert!(g.coeff(0, 0).is_zero());
        }
    }

    #[test]
    fn resultant_degree_bounds() {
        // deg_x of the equation is bounded by deg_t y, deg_y by deg_t x.
        let b = Branch::polynomial(
            "b",
            [(2, Rat::one())],
            [(3, Rat::one()), (4, Rat::one())],
        );
        let g = implicitize_branch(&b).unwrap();
        assert!(g.degree_x().unwrap() <= 4);
        assert!(g.degree_y().unwrap() <= 2);
    }

    #[test]
    fn oracle_refuses_truncated_series() {
        let x = TruncatedSeries::from_terms([(2, Rat::one())], 12);
        let b = Branch::new("b", x, TruncatedSeries::polynomial([(3, Rat::one())]));
        assert!(matches!(
            implicitize_branch(&b),
            Err(Error::OracleNeedsPolynomial { .. })
        ));
    }

    #[test]
    fn oracle_refuses_origin_revisits() {
        // x(-1) = y(-1) = 0: the global image passes through the origin twice
        let b = Branch::polynomial(
            "b",
            [(1, Rat::one()), (2, Rat::one())],
            [],
        );
        assert!(matches!(
            implicitize_branch(&b),
            Err(Error::OracleOriginRevisited { .. })
        ));
    }

    #[test]
    fn local_algebra_examples() {
        let l = limits();
        assert_eq!(
            local_algebra_dimension(&[p(&[(1, 1, 0)]), p(&[(1, 0, 1)])], &l)
                .unwrap()
                .value,
            1
        );
        assert_eq!(
            local_algebra_dimension(&[p(&[(3, 2, 0)]), p(&[(2, 0, 1)])], &l)
                .unwrap()
                .value,
            2
        );
        assert_eq!(
            local_algebra_dimension(&[p(&[(3, 0, 2)]), p(&[(5, 4, 0)])], &l)
                .unwrap()
                .value,
            8
        );
    }

    #[test]
    fn local_algebra_detects_non_isolated() {
        // (x) alone has infinite colength in two variables
        assert!(matches!(
            local_algebra_dimension(&[p(&[(1, 1, 0)])], &limits()),
            Err(Error::NonIsolated { .. })
        ));
        assert!(matches!(
            local_algebra_dimension(&[BivarPoly::zero()], &limits()),
            Err(Error::NonIsolated { .. })
        ));
    }

    #[test]
    fn local_algebra_stays_stable_one_more_doubling() {
        let gens = [p(&[(3, 0, 2)]), p(&[(5, 4, 0)])];
        let settled = local_algebra_dimension(&gens, &limits()).unwrap();
        let once_more = quotient_dim_at(&gens, settled.settled_at * 2);
        assert_eq!(once_more, settled.value);
    }

    #[test]
    fn milnor_numbers_of_classical_equations() {
        let l = limits();
        // cusp
        assert_eq!(
            milnor_implicit(&p(&[(1, 0, 2), (-1, 3, 0)]), &l).unwrap().value,
            2
        );
        // node
        assert_eq!(milnor_implicit(&p(&[(1, 1, 1)]), &l).unwrap().value, 1);
        // y^3 - x^4
        assert_eq!(
            milnor_implicit(&p(&[(1, 0, 3), (-1, 4, 0)]), &l).unwrap().value,
            6
        );
        // smooth
        assert_eq!(
            milnor_implicit(&p(&[(1, 0, 1), (-1, 2, 0)]), &l).unwrap().value,
            0
        );
    }
}
