//! Exact-arithmetic invariants of parameterized plane-curve singularity
//! germs, with an independent brute-force verification channel and the
//! integer bookkeeping for Milnor fibers of parameterized hypersurfaces.
//!
//! The engine works with branches given as parameterizations
//! `t -> (x(t), y(t))` over exact rationals and computes, per germ:
//! the branch count r, multiplicities, value semigroups, delta invariants,
//! pairwise intersection multiplicities, and the Milnor number
//! `mu = 2*delta - r + 1`. Every quantity is computed twice along
//! independent routes (semigroup/intersection combinatorics against
//! cokernel linear algebra; the parameterized Milnor number against the
//! Jacobian-ideal dimension of the implicitized equation) and the routes
//! must agree.

pub mod branch;
pub mod corpus;
pub mod error;
pub mod implicit;
pub mod intersection;
pub mod invariants;
pub mod ledger;
pub mod linalg;
pub mod poly;
pub mod randgen;
pub mod rat;
pub mod semigroup;
pub mod series;

pub use branch::{Branch, CurveGerm};
pub use error::{Error, Result, Violation};
pub use implicit::ImplicitCurve;
pub use invariants::InvariantReport;
pub use ledger::{RankProfile, StratumTable, UpstairsDatum};
pub use poly::{BivarPoly, UniPolyOverBivar, Var};
pub use rat::Rat;
pub use semigroup::SemigroupData;
pub use series::{Order, TruncatedSeries};

/// An answer from an iterative computation together with the working
/// precision (or truncation degree) at which it stabilized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stabilized<T> {
    pub value: T,
    pub settled_at: usize,
}

/// Stabilization budgets for the iterative computations.
///
/// Precisions govern truncated-series work (value semigroups, cokernel
/// dimension, intersection orders); degrees govern the truncation level of
/// the local-algebra quotient used by the implicit oracle. An answer is
/// accepted only once it is unchanged under one doubling; running past the
/// cap yields an explicit error, never a guess.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Working precision of the first stabilization round.
    pub precision_start: usize,
    /// Hard bound on working precision.
    pub precision_cap: usize,
    /// Truncation degree of the first local-algebra round.
    pub degree_start: usize,
    /// Hard bound on the local-algebra truncation degree.
    pub degree_cap: usize,
}

impl Limits {
    pub const DEFAULT_PRECISION_START: usize = 16;
    pub const DEFAULT_PRECISION_CAP: usize = 4096;
    pub const DEFAULT_DEGREE_START: usize = 8;
    pub const DEFAULT_DEGREE_CAP: usize = 64;
    /// Ceiling for user-supplied degree caps.
    pub const MAX_DEGREE_CAP: usize = 512;

    pub fn with_precision_start(mut self, start: usize) -> Self {
        self.precision_start = start.max(1);
        self
    }

    pub fn with_precision_cap(mut self, cap: usize) -> Self {
        self.precision_cap = cap.max(self.precision_start);
        self
    }

    pub fn with_degree_cap(mut self, cap: usize) -> Self {
        self.degree_cap = cap.clamp(self.degree_start, Self::MAX_DEGREE_CAP);
        self
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            precision_start: Self::DEFAULT_PRECISION_START,
            precision_cap: Self::DEFAULT_PRECISION_CAP,
            degree_start: Self::DEFAULT_DEGREE_START,
            degree_cap: Self::DEFAULT_DEGREE_CAP,
        }
    }
}
