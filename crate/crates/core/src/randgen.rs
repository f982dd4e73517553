//! Seeded random germs for the property-check driver.
//!
//! The generator is a plain splitmix64 stream: no platform or library
//! dependence, so a seed pins the whole batch byte for byte. Candidate
//! germs use branch exponents up to 7, at most 3 branches, coefficients in
//! [-3, 3], and are rejection-sampled until they validate. The x-component
//! is a single monomial, which keeps the global parameterization faithful
//! to the germ (no second pass through the origin, no global folding), so
//! the implicit channel stays applicable.

use crate::branch::{Branch, CurveGerm};
use crate::rat::Rat;
use crate::Limits;

pub const MAX_EXPONENT: usize = 7;
pub const MAX_BRANCHES: usize = 3;
pub const MAX_COEFF: i64 = 3;

/// Deterministic splitmix64 stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in 0..n (n > 0).
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// Uniform nonzero coefficient in [-MAX_COEFF, MAX_COEFF].
    fn coeff(&mut self) -> i64 {
        let magnitude = self.below(MAX_COEFF as u64) as i64 + 1;
        if self.below(2) == 0 {
            magnitude
        } else {
            -magnitude
        }
    }
}

fn random_branch(rng: &mut SplitMix64, index: usize) -> Branch {
    // Multiplicities weighted toward small values.
    const MULTS: [usize; 6] = [1, 1, 1, 2, 2, 3];
    let a = MULTS[rng.below(MULTS.len() as u64) as usize];
    let x = vec![(a, Rat::from_int(rng.coeff()))];
    let mut y: Vec<(usize, Rat)> = Vec::new();
    // y = 0 (an axis branch) now and then; otherwise one or two terms.
    if rng.below(8) != 0 {
        let b = a + rng.below((MAX_EXPONENT - a + 1) as u64) as usize;
        y.push((b, Rat::from_int(rng.coeff())));
        if b < MAX_EXPONENT && rng.below(2) == 0 {
            let extra = b + 1 + rng.below((MAX_EXPONENT - b) as u64) as usize;
            y.push((extra, Rat::from_int(rng.coeff())));
        }
    }
    Branch::polynomial(format!("b{}", index + 1), x, y)
}

/// The next valid germ from the stream.
pub fn random_germ(rng: &mut SplitMix64, limits: &Limits) -> CurveGerm {
    loop {
        let count = rng.below(MAX_BRANCHES as u64) as usize + 1;
        let branches = (0..count).map(|i| random_branch(rng, i)).collect();
        let germ = match CurveGerm::new(branches) {
            Ok(g) => g,
            Err(_) => continue,
        };
        if germ.validate(limits).is_empty() {
            return germ;
        }
    }
}
