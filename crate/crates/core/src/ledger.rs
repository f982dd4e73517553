//! Integer bookkeeping for Milnor fibers of parameterized hypersurfaces.
//!
//! A [`StratumTable`] holds the finite data attached to a parameterized
//! hypersurface germ in C^{n+1}: the branch count r, the Euler
//! characteristics of the multiple-point strata inside the Milnor fiber,
//! and the upstairs Milnor data at the source points. From it the reduced
//! Euler characteristic of the Milnor fiber downstairs follows, and in the
//! isolated case the Milnor number itself. Rank profiles model the stalk
//! and costalk cohomology of the image complex and of the multiple-point
//! complex; only free ranks are tracked, torsion is out of the data model.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// The comparison maps behind these tables commute with the Milnor
/// monodromy automorphisms. The engine records that statement; it computes
/// no monodromy, so reports carry it as a flag of record only.
pub const MONODROMY_COMPATIBILITY_RECORDED: bool = true;

/// A finite map degree -> nonnegative rank.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RankProfile {
    ranks: BTreeMap<i64, usize>,
}

impl RankProfile {
    pub fn empty() -> Self {
        RankProfile::default()
    }

    pub fn from_ranks<I>(ranks: I) -> Self
    where
        I: IntoIterator<Item = (i64, usize)>,
    {
        RankProfile {
            ranks: ranks.into_iter().filter(|&(_, r)| r != 0).collect(),
        }
    }

    pub fn single(degree: i64, rank: usize) -> Self {
        Self::from_ranks([(degree, rank)])
    }

    pub fn rank_at(&self, degree: i64) -> usize {
        self.ranks.get(&degree).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.ranks.iter().map(|(&d, &r)| (d, r))
    }

    /// Alternating sum of the ranks.
    pub fn euler(&self) -> i64 {
        self.ranks
            .iter()
            .map(|(&d, &r)| if d.rem_euclid(2) == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    /// Degree-negation mirror.
    pub fn mirrored(&self) -> Self {
        RankProfile {
            ranks: self.ranks.iter().map(|(&d, &r)| (-d, r)).collect(),
        }
    }
}

impl fmt::Display for RankProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ranks.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .ranks
            .iter()
            .map(|(d, r)| format!("deg {d}: Z^{r}"))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// A point of the image with its preimage count m >= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiplicityPoint {
    m: usize,
}

impl MultiplicityPoint {
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "a point of the image has at least one preimage");
        MultiplicityPoint { m }
    }

    pub fn preimages(&self) -> usize {
        self.m
    }

    /// Stalk of the pushed-forward (intersection cohomology) complex:
    /// rank m in degree -n.
    pub fn intersection_complex_stalk(&self, n: usize) -> RankProfile {
        RankProfile::single(-(n as i64), self.m)
    }

    /// Costalk of the same complex: rank m in degree +n, mirroring the
    /// stalk (the complex is self-dual at this rank level).
    pub fn intersection_complex_costalk(&self, n: usize) -> RankProfile {
        RankProfile::single(n as i64, self.m)
    }

    /// Stalk of the multiple-point complex: rank m - 1 in degree -n + 1,
    /// empty off the multiple-point set.
    pub fn multiple_point_stalk(&self, n: usize) -> RankProfile {
        if self.m == 1 {
            RankProfile::empty()
        } else {
            RankProfile::single(-(n as i64) + 1, self.m - 1)
        }
    }
}

/// One upstairs entry: either the reduced Euler characteristic of the
/// Milnor fiber at a source point, or its Milnor number in the isolated
/// case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpstairsDatum {
    ReducedEuler(i64),
    MilnorNumber(usize),
}

/// The data consumed by the Euler-characteristic relation: ambient
/// dimension n, branch count r, the values chi(X_k ∩ M) for k >= 2, one
/// upstairs entry per source point, and the isolated-case flag. The
/// chi values are inputs, not computed from geometry; the only computed
/// specialization is the nodes-only plane-curve case where chi(X_2 ∩ M)
/// equals delta.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumTable {
    n: usize,
    r: usize,
    chi_multiple: BTreeMap<usize, i64>,
    upstairs: Vec<UpstairsDatum>,
    isolated: bool,
    s: Option<usize>,
}

impl StratumTable {
    pub fn new(
        n: usize,
        r: usize,
        chi_multiple: BTreeMap<usize, i64>,
        upstairs: Vec<UpstairsDatum>,
        isolated: bool,
        s: Option<usize>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InconsistentTable(
                "ambient dimension n must be at least 1".to_string(),
            ));
        }
        if r == 0 {
            return Err(Error::InconsistentTable("r must be at least 1".to_string()));
        }
        if upstairs.len() != r {
            return Err(Error::InconsistentTable(format!(
                "expected {} upstairs entries (one per source point), found {}",
                r,
                upstairs.len()
            )));
        }
        if let Some(&k) = chi_multiple.keys().find(|&&k| k < 2) {
            return Err(Error::InconsistentTable(format!(
                "multiple-point stratum index k = {k} is below 2"
            )));
        }
        if isolated {
            if !upstairs
                .iter()
                .all(|u| matches!(u, UpstairsDatum::MilnorNumber(_)))
            {
                return Err(Error::InconsistentTable(
                    "isolated tables carry upstairs Milnor numbers".to_string(),
                ));
            }
            if s.is_some_and(|s| s != 0) {
                return Err(Error::InconsistentTable(
                    "isolated critical point forces s = 0".to_string(),
                ));
            }
        } else if upstairs
            .iter()
            .any(|u| matches!(u, UpstairsDatum::MilnorNumber(_)))
        {
            return Err(Error::InconsistentTable(
                "upstairs Milnor numbers need the isolated flag".to_string(),
            ));
        }
        Ok(StratumTable {
            n,
            r,
            chi_multiple,
            upstairs,
            isolated,
            s,
        })
    }

    /// Convenience constructor for the nodes-only plane-curve unfolding:
    /// n = 2, chi(X_2 ∩ M) = delta, upstairs Milnor numbers all zero.
    pub fn nodes_only_unfolding(r: usize, delta: usize) -> Self {
        let mut chi = BTreeMap::new();
        chi.insert(2, delta as i64);
        StratumTable::new(
            2,
            r,
            chi,
            vec![UpstairsDatum::MilnorNumber(0); r],
            true,
            Some(0),
        )
        .expect("nodes-only table is well-formed")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn chi_multiple(&self) -> &BTreeMap<usize, i64> {
        &self.chi_multiple
    }

    pub fn upstairs(&self) -> &[UpstairsDatum] {
        &self.upstairs
    }

    pub fn is_isolated(&self) -> bool {
        self.isolated
    }

    pub fn s(&self) -> Option<usize> {
        self.s
    }

    /// sum over k >= 2 of (k - 1) * chi(X_k ∩ M).
    pub fn weighted_multiple_chi(&self) -> i64 {
        self.chi_multiple
            .iter()
            .map(|(&k, &chi)| (k as i64 - 1) * chi)
            .sum()
    }

    fn sign(&self) -> i64 {
        // (-1)^(n-1)
        if self.n % 2 == 1 {
            1
        } else {
            -1
        }
    }

    /// Sum of the upstairs reduced Euler characteristics; Milnor entries
    /// convert via chi~ = (-1)^(n-1) * mu.
    pub fn upstairs_reduced_euler(&self) -> i64 {
        let sign = self.sign();
        self.upstairs
            .iter()
            .map(|u| match u {
                UpstairsDatum::ReducedEuler(chi) => *chi,
                UpstairsDatum::MilnorNumber(mu) => sign * *mu as i64,
            })
            .sum()
    }

    /// The reduced Euler characteristic of the Milnor fiber downstairs:
    /// (r - 1) + sum_i chi~(upstairs_i) - sum_{k>=2} (k-1) chi(X_k ∩ M).
    pub fn reduced_euler(&self) -> i64 {
        (self.r as i64 - 1) + self.upstairs_reduced_euler() - self.weighted_multiple_chi()
    }

    /// The Milnor number in the isolated case:
    /// (-1)^(n-1) [(r - 1) - sum (k-1) chi(X_k ∩ M)] + sum mu_i.
    /// A negative value can only mean the table violates the hypotheses,
    /// so it is an error, never clamped.
    pub fn isolated_milnor_number(&self) -> Result<usize> {
        if !self.isolated {
            return Err(Error::InconsistentTable(
                "Milnor number needs the isolated flag".to_string(),
            ));
        }
        let mu_sum: i64 = self
            .upstairs
            .iter()
            .map(|u| match u {
                UpstairsDatum::MilnorNumber(mu) => *mu as i64,
                UpstairsDatum::ReducedEuler(_) => unreachable!("validated at construction"),
            })
            .sum();
        let bracket = (self.r as i64 - 1) - self.weighted_multiple_chi();
        let mu = self.sign() * bracket + mu_sum;
        if mu < 0 {
            return Err(Error::InconsistentTable(format!(
                "Milnor number came out negative ({mu}); the table cannot come from an isolated critical point"
            )));
        }
        Ok(mu as usize)
    }
}

/// 2*delta - r + 1: the Milnor number of a plane curve germ with r
/// branches and total delta invariant delta.
pub fn plane_curve_milnor(r: usize, delta: usize) -> Result<usize> {
    let mu = 2 * delta as i64 - r as i64 + 1;
    if mu < 0 {
        return Err(Error::NotRealizable { r, delta });
    }
    Ok(mu as usize)
}

/// The (r-1)-reduction: subtract r - 1 from an Euler characteristic, the
/// convention that removes the degree-zero copies of Z contributed by the
/// r source points. No effect when r = 1.
pub fn r_reduced_euler(r: usize, chi: i64) -> i64 {
    chi - (r as i64 - 1)
}

/// True iff every nonzero rank of the profile lies in the degree window
/// [n - 1 - s, n - 1]. Freeness in the bottom degree is a property of the
/// data model, not tested here.
pub fn degree_range_check(n: usize, s: usize, profile: &RankProfile) -> bool {
    let hi = n as i64 - 1;
    let lo = hi - s as i64;
    profile.iter().all(|(d, _)| lo <= d && d <= hi)
}

/// Additivity over a stratification: sum of chi(stratum) * chi(stalk).
pub fn stratified_euler_sum(strata: &[(i64, i64)]) -> i64 {
    strata.iter().map(|&(chi, stalk_chi)| chi * stalk_chi).sum()
}
