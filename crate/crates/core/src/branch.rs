//! Parameterized branches and curve germs.
//!
//! A [`Branch`] is one parameterization `t -> (x(t), y(t))` with both
//! components vanishing at t = 0; a [`CurveGerm`] is a nonempty list of
//! branches, pairwise distinct as image germs. The branch count r is taken
//! from the input list; the engine never decomposes an implicit equation
//! into branches.

use std::fmt;

use crate::error::{Error, Result, Violation};
use crate::intersection;
use crate::rat::Rat;
use crate::series::{Order, TruncatedSeries};
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    label: String,
    x: TruncatedSeries,
    y: TruncatedSeries,
}

impl Branch {
    pub fn new(label: impl Into<String>, x: TruncatedSeries, y: TruncatedSeries) -> Self {
        Branch {
            label: label.into(),
            x,
            y,
        }
    }

    /// Branch with exact polynomial components given as
    /// `(exponent, coefficient)` term lists.
    pub fn polynomial<I, J>(label: impl Into<String>, x_terms: I, y_terms: J) -> Self
    where
        I: IntoIterator<Item = (usize, Rat)>,
        J: IntoIterator<Item = (usize, Rat)>,
    {
        Branch::new(
            label,
            TruncatedSeries::polynomial(x_terms),
            TruncatedSeries::polynomial(y_terms),
        )
    }

    /// `t -> (t^a, t^b)` (a single-term exponent pair; b = 0 gives y = 0).
    pub fn monomial_pair(label: impl Into<String>, a: usize, b: usize) -> Self {
        let y: Vec<(usize, Rat)> = if b == 0 { vec![] } else { vec![(b, Rat::one())] };
        Branch::polynomial(label, [(a, Rat::one())], y)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn x(&self) -> &TruncatedSeries {
        &self.x
    }

    pub fn y(&self) -> &TruncatedSeries {
        &self.y
    }

    /// Both components exactly known (finite polynomials).
    pub fn is_polynomial(&self) -> bool {
        self.x.is_exact() && self.y.is_exact()
    }

    /// Highest working precision this branch's data supports.
    pub fn max_precision(&self) -> usize {
        self.x.precision().min(self.y.precision())
    }

    /// Components truncated to working precision `w`, or `None` when the
    /// branch data does not reach that far.
    pub fn at_precision(&self, w: usize) -> Option<(TruncatedSeries, TruncatedSeries)> {
        if w > self.max_precision() {
            return None;
        }
        Some((self.x.truncate(w), self.y.truncate(w)))
    }

    /// min(ord x, ord y). Errors with a precision-escalation request when
    /// the minimum is not determined by the stored data.
    pub fn multiplicity(&self) -> Result<usize> {
        let undetermined = || Error::Undetermined {
            what: format!("multiplicity of branch {}", self.label),
            cap: self.max_precision(),
        };
        match (self.x.order(), self.y.order()) {
            (Order::Exactly(a), Order::Exactly(b)) => Ok(a.min(b)),
            (Order::Exactly(a), Order::AtLeast(p)) | (Order::AtLeast(p), Order::Exactly(a)) => {
                if p >= a {
                    Ok(a)
                } else {
                    Err(undetermined())
                }
            }
            (Order::AtLeast(_), Order::AtLeast(_)) => Err(undetermined()),
        }
    }

    /// gcd of all exponents appearing in either component (0 when both are
    /// zero series).
    pub fn exponent_gcd(&self) -> usize {
        let mut g: usize = 0;
        for e in self.x.support().chain(self.y.support()) {
            g = gcd(g, e);
        }
        g
    }

    /// Per-branch invariant checks: germ at origin, not the zero map,
    /// generically one-to-one.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.x.is_zero_to_precision() && self.y.is_zero_to_precision() {
            out.push(Violation::ZeroBranch {
                branch: self.label.clone(),
            });
            return out;
        }
        if !self.x.order().vanishes_at_origin() {
            out.push(Violation::NotGermAtOrigin {
                branch: self.label.clone(),
                component: 'x',
            });
        }
        if !self.y.order().vanishes_at_origin() {
            out.push(Violation::NotGermAtOrigin {
                branch: self.label.clone(),
                component: 'y',
            });
        }
        let g = self.exponent_gcd();
        if g > 1 {
            out.push(Violation::NotGenericallyOneToOne {
                branch: self.label.clone(),
                gcd: g,
            });
        }
        out
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: (x, y) = ({}, {})", self.label, self.x, self.y)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A multi-germ: finitely many pairwise-distinct branches through the
/// origin. r is the number of branches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveGerm {
    branches: Vec<Branch>,
}

impl CurveGerm {
    pub fn new(branches: Vec<Branch>) -> Result<Self> {
        if branches.is_empty() {
            return Err(Error::InvalidGerm(vec![Violation::ZeroBranch {
                branch: "(none)".to_string(),
            }]));
        }
        Ok(CurveGerm { branches })
    }

    pub fn r(&self) -> usize {
        self.branches.len()
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn branch(&self, i: usize) -> &Branch {
        &self.branches[i]
    }

    /// Every branch invariant plus pairwise distinctness. Distinctness is
    /// settled by the intersection multiplicity stabilizing below the cap;
    /// branches equal to cap precision are rejected as coincident rather
    /// than guessed distinct.
    pub fn validate(&self, limits: &Limits) -> Vec<Violation> {
        let mut out = Vec::new();
        for b in &self.branches {
            out.extend(b.violations());
        }
        if !out.is_empty() {
            // Pairwise checks assume individually well-formed branches.
            return out;
        }
        for i in 0..self.branches.len() {
            for j in i + 1..self.branches.len() {
                let (a, b) = (&self.branches[i], &self.branches[j]);
                match intersection::intersection_multiplicity(a, b, limits) {
                    Ok(_) => {}
                    Err(Error::InfiniteIntersection { .. }) => {
                        out.push(Violation::RepeatedComponent {
                            first: a.label().to_string(),
                            second: b.label().to_string(),
                        });
                    }
                    Err(_) => {
                        out.push(Violation::DistinctnessUndetermined {
                            first: a.label().to_string(),
                            second: b.label().to_string(),
                        });
                    }
                }
            }
        }
        out
    }

    /// `validate` folded into a Result.
    pub fn validated(&self, limits: &Limits) -> Result<()> {
        let violations = self.validate(limits);
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidGerm(violations))
        }
    }
}
