//! Error types.
//!
//! The engine never guesses: every stabilization loop either proves its
//! answer stable or reports `Undetermined`, and the cross-checking routes
//! report `RouteMismatch` rather than preferring one side.

use std::fmt;

/// A reason a curve germ fails validation, tied to the offending branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A component has order 0: the parameterization does not map the base
    /// point to the origin.
    NotGermAtOrigin { branch: String, component: char },
    /// Both components are zero to working precision.
    ZeroBranch { branch: String },
    /// The gcd of all exponents exceeds 1: the parameterization factors
    /// through a power of t.
    NotGenericallyOneToOne { branch: String, gcd: usize },
    /// Two branches define the same image germ.
    RepeatedComponent { first: String, second: String },
    /// Distinctness of two branches could not be settled below the cap.
    DistinctnessUndetermined { first: String, second: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotGermAtOrigin { branch, component } => {
                write!(f, "branch {branch}: component {component} has order 0, not a germ at the origin")
            }
            Violation::ZeroBranch { branch } => {
                write!(f, "branch {branch}: both components are zero")
            }
            Violation::NotGenericallyOneToOne { branch, gcd } => {
                write!(f, "branch {branch}: not generically one-to-one (gcd of exponents is {gcd})")
            }
            Violation::RepeatedComponent { first, second } => {
                write!(f, "repeated component: branches {first} and {second} define the same germ")
            }
            Violation::DistinctnessUndetermined { first, second } => {
                write!(f, "could not settle distinctness of branches {first} and {second} below the precision cap")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A germ failed validation; all violations are listed.
    InvalidGerm(Vec<Violation>),
    /// An iterative computation failed to stabilize below its cap.
    Undetermined { what: String, cap: usize },
    /// Two branches met with unbounded contact order.
    InfiniteIntersection { first: String, second: String },
    /// The implicitization oracle only accepts exact polynomial branches.
    OracleNeedsPolynomial { branch: String },
    /// The branch components share a root away from t = 0, so the global
    /// resultant would mix in a second pass through the origin.
    OracleOriginRevisited { branch: String },
    /// The Jacobian ideal dimension kept growing up to the degree cap.
    NonIsolated { cap: usize },
    /// Resultant of two constants is undefined.
    DegenerateResultant,
    /// Two independent computation routes disagreed.
    RouteMismatch {
        what: String,
        left: String,
        right: String,
    },
    /// 2*delta - r + 1 came out negative.
    NotRealizable { r: usize, delta: usize },
    /// A stratum table violates the hypotheses of the formula applied to it.
    InconsistentTable(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGerm(violations) => {
                write!(f, "invalid germ")?;
                for v in violations {
                    write!(f, "; {v}")?;
                }
                Ok(())
            }
            Error::Undetermined { what, cap } => {
                write!(f, "{what} did not stabilize below the cap {cap}")
            }
            Error::InfiniteIntersection { first, second } => {
                write!(f, "infinite intersection of branches {first} and {second}: repeated component")
            }
            Error::OracleNeedsPolynomial { branch } => {
                write!(f, "branch {branch} is a truncated series; the implicit oracle needs exact polynomial components")
            }
            Error::OracleOriginRevisited { branch } => {
                write!(f, "branch {branch} passes through the origin at a second parameter value; implicit oracle unavailable")
            }
            Error::NonIsolated { cap } => {
                write!(f, "ideal has infinite colength or exceeds the degree cap {cap}")
            }
            Error::DegenerateResultant => {
                write!(f, "resultant of two constant polynomials is undefined")
            }
            Error::RouteMismatch { what, left, right } => {
                write!(f, "independent routes disagree on {what}: {left} vs {right}")
            }
            Error::NotRealizable { r, delta } => {
                write!(f, "2*delta - r + 1 is negative for r = {r}, delta = {delta}: not realizable")
            }
            Error::InconsistentTable(msg) => write!(f, "inconsistent stratum table: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
