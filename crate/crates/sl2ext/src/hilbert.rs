//! Hilbert series of the generator polynomial algebra.
//!
//! For each i = 1..r there is a universal class of cohomological degree
//! 2p^(i−1) whose coefficient space is the 4-dimensional module 𝔤𝔩₂;
//! pulling the i-th class back through r − i Frobenius iterations lands it
//! in coefficients 𝔤𝔩₂^(r) without changing its degree. The cohomology
//! ring of an infinitesimal subgroup of GL₂ is a finite module over the
//! polynomial algebra these classes generate, so the series
//!
//! ```text
//! ∏_{i=1}^{r} (1 − t^(2p^(i−1)))^(−4)
//! ```
//!
//! is a quantitative polynomial-growth witness — an upper bound for the
//! generator algebra, not the cohomology ring's own series.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::blocks::Prime;

/// Dimension of 𝔤𝔩₂, the coefficient space of every universal class.
pub const COEFF_DIM: u32 = 4;

/// One universal class in the generator ledger.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    /// Class index i, 1 ≤ i ≤ r.
    pub index: u32,
    /// Cohomological degree 2p^(i−1).
    pub degree: BigUint,
    /// Dimension of the coefficient space (always 4).
    pub coeff_dim: u32,
    /// Frobenius pullbacks applied, r − i, landing the class in
    /// coefficients 𝔤𝔩₂^(r) with unchanged degree.
    pub twist: u32,
}

/// The degrees and coefficient dimensions of the r universal classes.
pub fn generator_ledger(r: u32, p: Prime) -> Vec<LedgerEntry> {
    assert!(r >= 1, "generator_ledger requires r >= 1");
    (1..=r)
        .map(|index| LedgerEntry {
            index,
            degree: p.two_p_pow(index - 1),
            coeff_dim: COEFF_DIM,
            twist: r - index,
        })
        .collect()
}

/// Exact coefficients c_0..c_N of a graded Hilbert series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTruncation {
    pub max_degree: usize,
    /// c_0..c_N inclusive; c_0 = 1 and odd-degree coefficients vanish.
    pub coefficients: Vec<BigUint>,
}

/// Coefficients of ∏_{i=1}^{r} (1 − t^(2p^(i−1)))^(−4) up to `max_degree`.
///
/// Each geometric factor (1 − t^d)^(−1) is applied as a strided prefix
/// sum, four passes per generator; the arithmetic is exact throughout.
pub fn hilbert(r: u32, p: Prime, max_degree: usize) -> SeriesTruncation {
    assert!(r >= 1, "hilbert requires r >= 1");
    let mut coefficients = vec![BigUint::zero(); max_degree + 1];
    coefficients[0] = BigUint::one();
    for entry in generator_ledger(r, p) {
        // A generator above the truncation degree contributes nothing.
        let Ok(d) = usize::try_from(&entry.degree) else {
            continue;
        };
        if d > max_degree {
            continue;
        }
        for _ in 0..entry.coeff_dim {
            for j in d..=max_degree {
                let lower = coefficients[j - d].clone();
                coefficients[j] += lower;
            }
        }
    }
    SeriesTruncation {
        max_degree,
        coefficients,
    }
}
