//! Pairwise intersection multiplicities of branches.
//!
//! The contact order of two branches is computed two independent ways:
//! substituting one branch into the implicit equation of the other, and
//! eliminating the shared parameter with a Sylvester resultant. Whenever
//! both routes run they must agree; a disagreement is reported, never
//! resolved silently. Branches whose contact exceeds every usable
//! precision are rejected as coincident rather than guessed distinct.

use crate::branch::Branch;
use crate::error::{Error, Result};
use crate::implicit;
use crate::poly::{sylvester_resultant, BivarPoly, UniPolyOverBivar};
use crate::series::{Order, EXACT};
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Contact {
    Finite(usize),
    Coincident,
}

/// ord_t of the implicit equation of `eliminated` along `probe`,
/// cross-checked against the resultant in the shared parameter.
///
/// Exact polynomial pairs are settled exactly. In the truncated regime an
/// order is only accepted below the usable precision (data precision
/// capped by the limits); contact beyond that is reported as coincidence.
fn directed_contact(probe: &Branch, eliminated: &Branch, limits: &Limits) -> Result<Contact> {
    implicit::single_origin_pass(eliminated)?;
    let usable = if probe.is_polynomial() && eliminated.is_polynomial() {
        EXACT
    } else {
        probe
            .max_precision()
            .min(eliminated.max_precision())
            .min(limits.precision_cap)
    };
    let resultant = resultant_contact(probe, eliminated, usable)?;
    if eliminated.is_polynomial() {
        let g = implicit::implicitize_branch(eliminated)?;
        let along = g.eval_series(probe.x(), probe.y());
        let substitution = match along.order() {
            Order::Exactly(k) if k < usable => Contact::Finite(k),
            // Zero exactly, zero to every available coefficient, or contact
            // past the usable precision: the branches cannot be told apart.
            _ => Contact::Coincident,
        };
        if substitution != resultant {
            return Err(Error::RouteMismatch {
                what: format!(
                    "intersection multiplicity of {} and {}",
                    probe.label(),
                    eliminated.label()
                ),
                left: contact_string(substitution),
                right: contact_string(resultant),
            });
        }
        Ok(substitution)
    } else {
        Ok(resultant)
    }
}

fn contact_string(c: Contact) -> String {
    match c {
        Contact::Finite(k) => k.to_string(),
        Contact::Coincident => "infinite".to_string(),
    }
}

/// ord_t Res_s(x_b(s) - x_a(t), y_b(s) - y_a(t)), eliminating the
/// parameter of `b`. The t-polynomials live in the x-slot of [`BivarPoly`].
fn resultant_contact(a: &Branch, b: &Branch, usable: usize) -> Result<Contact> {
    let f = eliminand(b.x(), a.x());
    let g = eliminand(b.y(), a.y());
    let res = sylvester_resultant(&f, &g)?;
    debug_assert!(
        res.degree_y().unwrap_or(0) == 0,
        "resultant must only involve the probe parameter"
    );
    match res.order_at_origin() {
        Some(k) if k < usable => Ok(Contact::Finite(k)),
        _ => Ok(Contact::Coincident),
    }
}

/// `s_b(s) - s_a(t)` as a polynomial in s over Q[t].
fn eliminand(
    component_b: &crate::series::TruncatedSeries,
    component_a: &crate::series::TruncatedSeries,
) -> UniPolyOverBivar {
    let deg = component_b.support().max().unwrap_or(0);
    let mut coeffs = vec![BivarPoly::zero(); deg + 1];
    for (e, c) in component_b.terms() {
        coeffs[e] = coeffs[e].add(&BivarPoly::constant(c.clone()));
    }
    let a_poly = BivarPoly::from_terms(component_a.terms().map(|(e, c)| (e, 0, c.clone())));
    coeffs[0] = coeffs[0].sub(&a_poly);
    UniPolyOverBivar::new(coeffs)
}

/// The intersection multiplicity of two distinct branches.
///
/// Symmetric in its arguments: when the elimination of one branch's
/// parameter is unavailable (its components share a root away from t = 0)
/// the roles are swapped before giving up.
pub fn intersection_multiplicity(a: &Branch, b: &Branch, limits: &Limits) -> Result<usize> {
    let contact = match directed_contact(a, b, limits) {
        Ok(c) => c,
        Err(Error::OracleOriginRevisited { .. }) => directed_contact(b, a, limits)?,
        Err(e) => return Err(e),
    };
    match contact {
        Contact::Finite(k) => Ok(k),
        Contact::Coincident => Err(Error::InfiniteIntersection {
            first: a.label().to_string(),
            second: b.label().to_string(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn transverse_lines_meet_once() {
        let a = Branch::monomial_pair("a", 1, 0);
        let b = Branch::polynomial("b", [], [(1, Rat::one())]);
        assert_eq!(intersection_multiplicity(&a, &b, &limits()).unwrap(), 1);
        assert_eq!(intersection_multiplicity(&b, &a, &limits()).unwrap(), 1);
    }

    #[test]
    fn tacnode_branches_meet_twice() {
        let a = Branch::polynomial("a", [(1, Rat::one())], [(2, Rat::one())]);
        let b = Branch::polynomial("b", [(1, Rat::one())], [(2, Rat::from_int(-1))]);
        assert_eq!(intersection_multiplicity(&a, &b, &limits()).unwrap(), 2);
        assert_eq!(intersection_multiplicity(&b, &a, &limits()).unwrap(), 2);
    }

    #[test]
    fn cusp_meets_its_tangent_line_with_order_three() {
        let cusp = Branch::monomial_pair("cusp", 2, 3);
        let line = Branch::monomial_pair("line", 1, 0);
        assert_eq!(
            intersection_multiplicity(&cusp, &line, &limits()).unwrap(),
            3
        );
        assert_eq!(
            intersection_multiplicity(&line, &cusp, &limits()).unwrap(),
            3
        );
    }

    #[test]
    fn coincident_branches_are_an_error() {
        let a = Branch::monomial_pair("a", 2, 3);
        let b = Branch::monomial_pair("b", 2, 3);
        assert!(matches!(
            intersection_multiplicity(&a, &b, &limits()),
            Err(Error::InfiniteIntersection { .. })
        ));
    }

    #[test]
    fn same_image_reparameterized_is_coincident() {
        let a = Branch::polynomial("a", [(1, Rat::one())], [(2, Rat::one())]);
        let b = Branch::polynomial("b", [(1, Rat::from_int(-1))], [(2, Rat::one())]);
        assert!(matches!(
            intersection_multiplicity(&a, &b, &limits()),
            Err(Error::InfiniteIntersection { .. })
        ));
    }

    #[test]
    fn bound_by_product_of_multiplicities() {
        let pairs = [
            (Branch::monomial_pair("a", 2, 3), Branch::monomial_pair("b", 1, 0)),
            (Branch::monomial_pair("a", 2, 3), Branch::monomial_pair("b", 3, 5)),
            (Branch::monomial_pair("a", 2, 5), Branch::monomial_pair("b", 3, 4)),
        ];
        for (a, b) in pairs {
            let i = intersection_multiplicity(&a, &b, &limits()).unwrap();
            let bound = a.multiplicity().unwrap() * b.multiplicity().unwrap();
            assert!(i >= bound, "{} < {bound}", i);
        }
    }

    #[test]
    fn swaps_elimination_side_when_one_branch_revisits_origin() {
        // (t + t^2, 0) returns to the origin at t = -1, so its own
        // elimination is refused; the other side still settles the pair.
        let revisits = Branch::polynomial(
            "a",
            [(1, Rat::one()), (2, Rat::one())],
            [],
        );
        let line = Branch::polynomial("b", [], [(1, Rat::one())]);
        assert_eq!(
            intersection_multiplicity(&line, &revisits, &limits()).unwrap(),
            1
        );
        assert_eq!(
            intersection_multiplicity(&revisits, &line, &limits()).unwrap(),
            1
        );
    }
}
