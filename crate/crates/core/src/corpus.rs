//! The embedded corpus of classical plane-curve singularities.
//!
//! Every expected value here was recomputed by the implicit oracle before
//! being frozen (the corpus tests re-derive them on every run); none is
//! taken on authority.

use crate::branch::{Branch, CurveGerm};
use crate::rat::Rat;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub germ: CurveGerm,
    pub r: usize,
    pub delta: usize,
    pub mu: i64,
}

fn line(label: &str, dx: i64, dy: i64) -> Branch {
    Branch::polynomial(
        label,
        if dx == 0 { vec![] } else { vec![(1, Rat::from_int(dx))] },
        if dy == 0 { vec![] } else { vec![(1, Rat::from_int(dy))] },
    )
}

/// All ten corpus germs with their frozen (r, delta, mu).
pub fn corpus() -> Vec<CorpusEntry> {
    let entry = |name, branches: Vec<Branch>, r, delta, mu| CorpusEntry {
        name,
        germ: CurveGerm::new(branches).expect("corpus germs are nonempty"),
        r,
        delta,
        mu,
    };
    vec![
        entry(
            "smooth",
            vec![Branch::monomial_pair("b1", 1, 2)],
            1,
            0,
            0,
        ),
        entry(
            "node",
            vec![line("b1", 1, 0), line("b2", 0, 1)],
            2,
            1,
            1,
        ),
        entry("cusp", vec![Branch::monomial_pair("b1", 2, 3)], 1, 1, 2),
        entry(
            "tacnode",
            vec![
                Branch::polynomial("b1", [(1, Rat::one())], [(2, Rat::one())]),
                Branch::polynomial("b2", [(1, Rat::one())], [(2, Rat::from_int(-1))]),
            ],
            2,
            2,
            3,
        ),
        entry("a4", vec![Branch::monomial_pair("b1", 2, 5)], 1, 2, 4),
        entry("a6", vec![Branch::monomial_pair("b1", 2, 7)], 1, 3, 6),
        entry("e6", vec![Branch::monomial_pair("b1", 3, 4)], 1, 3, 6),
        entry("e8", vec![Branch::monomial_pair("b1", 3, 5)], 1, 4, 8),
        entry(
            "triple-point",
            vec![line("b1", 1, 0), line("b2", 0, 1), line("b3", 1, 1)],
            3,
            3,
            4,
        ),
        entry(
            "quadruple-point",
            vec![
                line("b1", 1, 0),
                line("b2", 0, 1),
                line("b3", 1, 1),
                line("b4", 1, -1),
            ],
            4,
            6,
            9,
        ),
    ]
}

pub fn find(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}
