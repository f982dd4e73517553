//! Truncated univariate power series over exact rationals.
//!
//! A [`TruncatedSeries`] is known modulo `t^precision`: coefficients at
//! exponents below `precision` are exact, everything above is unknown.
//! Polynomials (series known in full) carry the sentinel precision
//! [`EXACT`]. Invariants:
//! - every stored exponent is `< precision`
//! - no stored coefficient is zero
//! - sums take the minimum precision of the operands; products take the
//!   minimum over each factor's precision shifted by the other's valuation

use std::collections::BTreeMap;
use std::fmt;

use crate::rat::Rat;

/// Sentinel precision for series that are exactly known (finite polynomials).
pub const EXACT: usize = usize::MAX;

/// The t-adic order of a truncated series.
///
/// `AtLeast(n)` means no nonzero coefficient exists below `n`; the series
/// may still be nonzero past the known range, so callers must decide
/// whether to raise precision. A series that is exactly zero reports
/// `AtLeast(EXACT)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Exactly(usize),
    AtLeast(usize),
}

impl Order {
    /// The determined order, if there is one.
    pub fn exact(self) -> Option<usize> {
        match self {
            Order::Exactly(k) => Some(k),
            Order::AtLeast(_) => None,
        }
    }

    /// A lower bound valid in either case.
    pub fn lower_bound(self) -> usize {
        match self {
            Order::Exactly(k) | Order::AtLeast(k) => k,
        }
    }

    /// True when the order is certainly >= 1 (the series vanishes at t = 0).
    pub fn vanishes_at_origin(self) -> bool {
        self.lower_bound() >= 1
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Exactly(k) => write!(f, "{k}"),
            Order::AtLeast(n) if *n == EXACT => write!(f, "infinity"),
            Order::AtLeast(n) => write!(f, "at-least({n})"),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: BTreeMap<usize, Rat>,
    precision: usize,
}

impl TruncatedSeries {
    pub fn zero(precision: usize) -> Self {
        TruncatedSeries {
            coeffs: BTreeMap::new(),
            precision,
        }
    }

    /// Build from `(exponent, coefficient)` pairs; zero coefficients and
    /// terms at or above the precision are dropped.
    pub fn from_terms<I>(terms: I, precision: usize) -> Self
    where
        I: IntoIterator<Item = (usize, Rat)>,
    {
        let mut coeffs = BTreeMap::new();
        for (exp, c) in terms {
            if exp >= precision || c.is_zero() {
                continue;
            }
            let entry = coeffs.entry(exp).or_insert_with(Rat::zero);
            *entry += &c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        TruncatedSeries { coeffs, precision }
    }

    /// An exactly-known polynomial in t.
    pub fn polynomial<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, Rat)>,
    {
        Self::from_terms(terms, EXACT)
    }

    pub fn monomial(coeff: Rat, exp: usize, precision: usize) -> Self {
        Self::from_terms([(exp, coeff)], precision)
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_terms([(0, c)], EXACT)
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// True when the series is a fully known polynomial.
    pub fn is_exact(&self) -> bool {
        self.precision == EXACT
    }

    /// True when no nonzero coefficient is stored (zero modulo t^precision).
    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^exp`. Panics if the coefficient is beyond the
    /// known range.
    pub fn coeff(&self, exp: usize) -> Rat {
        assert!(
            exp < self.precision,
            "coefficient of t^{exp} requested but series only known modulo t^{}",
            self.precision
        );
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rat::zero)
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rat)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    /// The least exponent with a nonzero coefficient, or `AtLeast(precision)`
    /// when there is none. Never silently claims the series is zero.
    pub fn order(&self) -> Order {
        match self.coeffs.keys().next() {
            Some(&k) => Order::Exactly(k),
            None => Order::AtLeast(self.precision),
        }
    }

    /// Restrict to precision `n` (drop coefficients at exponents >= n).
    /// Panics if `n` exceeds the known precision.
    pub fn truncate(&self, n: usize) -> Self {
        assert!(
            n <= self.precision,
            "cannot truncate to precision {n}: series only known modulo t^{}",
            self.precision
        );
        let coeffs = self
            .coeffs
            .range(..n)
            .map(|(&e, c)| (e, c.clone()))
            .collect();
        TruncatedSeries {
            coeffs,
            precision: n,
        }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
            precision: self.precision,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let precision = self.precision.min(other.precision);
        let mut coeffs: BTreeMap<usize, Rat> = self
            .coeffs
            .range(..precision)
            .map(|(&e, c)| (e, c.clone()))
            .collect();
        for (&e, c) in other.coeffs.range(..precision) {
            let entry = coeffs.entry(e).or_insert_with(Rat::zero);
            *entry += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        TruncatedSeries { coeffs, precision }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.precision);
        }
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|(&e, v)| (e, v * c)).collect(),
            precision: self.precision,
        }
    }

    /// Product with valuation-shifted precision: the result is known modulo
    /// `t^min(prec(a) + ord(b), prec(b) + ord(a))`.
    pub fn mul(&self, other: &Self) -> Self {
        let precision = self
            .precision
            .saturating_add(other.order().lower_bound())
            .min(other.precision.saturating_add(self.order().lower_bound()));
        let mut coeffs: BTreeMap<usize, Rat> = BTreeMap::new();
        for (&ea, ca) in &self.coeffs {
            if ea >= precision {
                break;
            }
            for (&eb, cb) in &other.coeffs {
                let e = ea.saturating_add(eb);
                if e >= precision {
                    break;
                }
                let entry = coeffs.entry(e).or_insert_with(Rat::zero);
                *entry += &(ca * cb);
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        TruncatedSeries { coeffs, precision }
    }

    pub fn pow(&self, exp: usize) -> Self {
        match exp {
            0 => Self::constant(Rat::one()),
            _ => {
                let mut acc = self.clone();
                for _ in 1..exp {
                    acc = acc.mul(self);
                }
                acc
            }
        }
    }

    /// Exponents carrying nonzero coefficients.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        } else {
            for (i, (&e, c)) in self.coeffs.iter().enumerate() {
                if i > 0 {
                    write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
                } else if c.is_negative() {
                    write!(f, "-")?;
                }
                let a = c.abs();
                match (a.is_one(), e) {
                    (true, 0) => write!(f, "1")?,
                    (true, 1) => write!(f, "t")?,
                    (true, _) => write!(f, "t^{e}")?,
                    (false, 0) => write!(f, "{a}")?,
                    (false, 1) => write!(f, "{a}*t")?,
                    (false, _) => write!(f, "{a}*t^{e}")?,
                }
            }
        }
        if !self.is_exact() {
            write!(f, " + O(t^{})", self.precision)?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
