//! Property suites for the exact kernels.
//!
//! The headline properties: the two delta routes agree on every germ both
//! can settle, and 2*delta - r + 1 matches the Jacobian-ideal dimension of
//! the implicitized equation. Everything else guards the substrate those
//! checks stand on.

use proptest::prelude::*;

use germ_core::implicit::{implicitize_branch, implicitize_curve, milnor_implicit};
use germ_core::intersection::intersection_multiplicity;
use germ_core::invariants::{analyze, cokernel_dimension, delta_total, milnor_from_delta};
use germ_core::poly::sylvester_resultant;
use germ_core::randgen::{random_germ, SplitMix64};
use germ_core::semigroup::value_semigroup;
use germ_core::{BivarPoly, Limits, Order, Rat, TruncatedSeries, UniPolyOverBivar, Var};

fn rat() -> impl Strategy<Value = Rat> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Rat::new(n, d))
}

fn series(prec: usize) -> impl Strategy<Value = TruncatedSeries> {
    proptest::collection::vec((0usize..8, rat()), 0..5)
        .prop_map(move |terms| TruncatedSeries::from_terms(terms, prec))
}

fn bivar_poly() -> impl Strategy<Value = BivarPoly> {
    proptest::collection::vec((0usize..4, 0usize..4, rat()), 0..6)
        .prop_map(BivarPoly::from_terms)
}

fn germ_seed() -> impl Strategy<Value = u64> {
    any::<u64>()
}

fn seeded_germ(seed: u64) -> germ_core::CurveGerm {
    let limits = Limits::default();
    let mut rng = SplitMix64::new(seed);
    random_germ(&mut rng, &limits)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_product_is_associative(a in series(10), b in series(10), c in series(10)) {
        let left = a.mul(&b).mul(&c);
        let right = a.mul(&b.mul(&c));
        let w = left.precision().min(right.precision());
        prop_assert_eq!(left.truncate(w), right.truncate(w));
    }

    #[test]
    fn series_product_distributes(a in series(10), b in series(10), c in series(10)) {
        let left = a.mul(&b.add(&c));
        let right = a.mul(&b).add(&a.mul(&c));
        let w = left.precision().min(right.precision());
        prop_assert_eq!(left.truncate(w), right.truncate(w));
    }

    #[test]
    fn series_order_adds_when_determined(a in series(12), b in series(12)) {
        let product = a.mul(&b);
        if let (Order::Exactly(oa), Order::Exactly(ob), Order::Exactly(op)) =
            (a.order(), b.order(), product.order())
        {
            prop_assert_eq!(op, oa + ob);
        }
    }

    #[test]
    fn poly_arithmetic_is_exact(a in bivar_poly(), b in bivar_poly(), c in bivar_poly()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn resultant_swap_changes_at_most_the_sign(
        fx in proptest::collection::vec(rat(), 1..4),
        gx in proptest::collection::vec(rat(), 1..4),
    ) {
        let build = |coeffs: &[Rat], v: Var| {
            let mut c: Vec<BivarPoly> = vec![BivarPoly::var(v)];
            for (e, r) in coeffs.iter().enumerate() {
                let term = BivarPoly::constant(r.clone());
                while c.len() <= e + 1 {
                    c.push(BivarPoly::zero());
                }
                c[e + 1] = c[e + 1].sub(&term);
            }
            UniPolyOverBivar::new(c)
        };
        let f = build(&fx, Var::X);
        let g = build(&gx, Var::Y);
        if let (Ok(res_fg), Ok(res_gf)) = (sylvester_resultant(&f, &g), sylvester_resultant(&g, &f)) {
            prop_assert!(
                res_fg == res_gf || res_fg == res_gf.neg(),
                "resultants differ by more than sign"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn implicit_equation_annihilates_its_branch(seed in germ_seed()) {
        let germ = seeded_germ(seed);
        for branch in germ.branches() {
            let g = implicitize_branch(branch).unwrap();
            prop_assert!(g.eval_series(branch.x(), branch.y()).is_zero_to_precision());
        }
    }

    #[test]
    fn semigroup_symmetry_on_random_branches(seed in germ_seed()) {
        let limits = Limits::default();
        let germ = seeded_germ(seed);
        for branch in germ.branches() {
            let sg = value_semigroup(branch, &limits).unwrap().value;
            prop_assert_eq!(sg.conductor(), 2 * sg.delta());
            prop_assert!(sg.contains(0));
            let gaps: Vec<usize> = sg.gaps().to_vec();
            prop_assert!(gaps.iter().all(|&g| g < sg.conductor()));
        }
    }

    #[test]
    fn intersection_is_symmetric_and_bounded(seed in germ_seed()) {
        let limits = Limits::default();
        let germ = seeded_germ(seed);
        for i in 0..germ.r() {
            for j in i + 1..germ.r() {
                let (a, b) = (germ.branch(i), germ.branch(j));
                let ij = intersection_multiplicity(a, b, &limits).unwrap();
                let ji = intersection_multiplicity(b, a, &limits).unwrap();
                prop_assert_eq!(ij, ji);
                let bound = a.multiplicity().unwrap() * b.multiplicity().unwrap();
                prop_assert!(ij >= bound);
            }
        }
    }

    #[test]
    fn mu_parity_and_nonnegativity(seed in germ_seed()) {
        let limits = Limits::default();
        let germ = seeded_germ(seed);
        let mu = milnor_from_delta(&germ, &limits).unwrap().value.mu;
        prop_assert!(mu >= 0);
        let r = germ.r() as i64;
        prop_assert_eq!(mu.rem_euclid(2), (r + 1).rem_euclid(2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn delta_routes_agree(seed in germ_seed()) {
        let limits = Limits::default();
        let germ = seeded_germ(seed);
        let combinatorial = delta_total(&germ, &limits).unwrap().value;
        let cokernel = cokernel_dimension(&germ, &limits).unwrap().value;
        prop_assert_eq!(combinatorial, cokernel);
    }

    #[test]
    fn oracle_identity_on_random_germs(seed in germ_seed()) {
        let limits = Limits::default();
        let germ = seeded_germ(seed);
        let mu = milnor_from_delta(&germ, &limits).unwrap().value.mu;
        let g = implicitize_curve(&germ).unwrap().g;
        let oracle = milnor_implicit(&g, &limits).unwrap().value;
        prop_assert_eq!(mu, oracle as i64);
    }

    #[test]
    fn reports_are_stable_under_doubled_starting_precision(seed in germ_seed()) {
        let limits = Limits::default();
        let doubled = Limits {
            precision_start: limits.precision_start * 2,
            ..limits
        };
        let germ = seeded_germ(seed);
        let a = analyze(&germ, &limits, false).unwrap();
        let b = analyze(&germ, &doubled, false).unwrap();
        prop_assert_eq!(a.delta_total, b.delta_total);
        prop_assert_eq!(a.mu_parameterized, b.mu_parameterized);
        prop_assert_eq!(a.intersection_matrix, b.intersection_matrix);
        let gaps_a: Vec<Vec<usize>> =
            a.per_branch.iter().map(|p| p.semigroup.gaps().to_vec()).collect();
        let gaps_b: Vec<Vec<usize>> =
            b.per_branch.iter().map(|p| p.semigroup.gaps().to_vec()).collect();
        prop_assert_eq!(gaps_a, gaps_b);
    }
}
