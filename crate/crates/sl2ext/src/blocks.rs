//! Weight arithmetic and block combinatorics for SL₂ in characteristic p.
//!
//! Dominant weights of SL₂ are identified with non-negative integers via
//! nϖ ↦ n. Writing a weight p-adically as λ = pa + i with 0 ≤ i ≤ p − 1,
//! block membership is controlled by closed conditions on (a, i): a weight
//! with i = p − 1 shares a block with μ = pb + j only if j = p − 1, and a
//! weight with i ≠ p − 1 shares a block with μ only if a − b is even and
//! i = j, or a − b is odd and j = p − 2 − i.
//!
//! These conditions are necessary, not known to be sufficient: a failed
//! test proves the weights lie in different blocks (so every Ext group
//! between them vanishes), while a passed test proves nothing by itself.
//! Callers only ever draw vanishing conclusions from failure. The
//! [`crate::oracle`] module realizes the underlying affine dot action
//! directly and is compared against these predicates in the test suite.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

/// A dominant weight of SL₂ under the identification X(T) ≅ ℤ, nϖ ↦ n.
///
/// Weights are exact unbounded non-negative integers: the recursion in
/// [`crate::engine`] produces weights up to 2p^(r−1) and precursor
/// analysis explores 2p^(s+1), so no fixed-width assumption is made.
pub type Weight = BigUint;

/// Error raised when a [`Prime`] is constructed from a composite number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0} is not prime")]
pub struct NotPrime(pub u64);

/// The characteristic of the base field.
///
/// Primality is validated eagerly: every formula in this crate presumes p
/// prime, so a composite modulus is a construction error, never silent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    /// Validate and wrap a prime number.
    pub fn new(p: u64) -> Result<Prime, NotPrime> {
        if primal_check::miller_rabin(p) {
            Ok(Prime(p))
        } else {
            Err(NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// The weight 2pˢ as an exact integer.
    pub fn two_p_pow(self, s: u32) -> BigUint {
        BigUint::from(2u32) * BigUint::from(self.0).pow(s)
    }
}

impl std::fmt::Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// The p-adic split of a weight: n = pa + i with 0 ≤ i ≤ p − 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicSplit {
    pub a: BigUint,
    pub i: u64,
}

impl PadicSplit {
    /// Recompose the weight pa + i this split came from.
    pub fn weight(&self, p: Prime) -> Weight {
        &self.a * p.get() + self.i
    }
}

/// Split n as pa + i with 0 ≤ i ≤ p − 1.
pub fn p_decompose(n: &Weight, p: Prime) -> PadicSplit {
    let a = n / p.get();
    let i = (n % p.get()).to_u64().expect("remainder below p fits u64");
    PadicSplit { a, i }
}

/// Necessary condition for λ and μ to lie in the same block of SL₂.
///
/// With λ = pa + i and μ = pb + j: when i = p − 1 the result is j = p − 1;
/// otherwise it is (a − b even and i = j) or (a − b odd and j = p − 2 − i).
/// The predicate is reflexive and symmetric.
pub fn same_block(lambda: &Weight, mu: &Weight, p: Prime) -> bool {
    let l = p_decompose(lambda, p);
    let m = p_decompose(mu, p);
    let pm1 = p.get() - 1;
    if l.i == pm1 {
        return m.i == pm1;
    }
    if m.i == pm1 {
        return false;
    }
    // Both remainders are ≤ p − 2 from here on.
    let same_parity = l.a.is_even() == m.a.is_even();
    (same_parity && l.i == m.i) || (!same_parity && m.i == p.get() - 2 - l.i)
}

/// Necessary condition for λ to lie in the block of the weight 2pˢ, s ≥ 1.
///
/// With λ = pa + i this holds exactly when a is even and i = 0, or a is
/// odd and i = p − 2. The value agrees with `same_block(λ, 2pˢ, p)` and is
/// independent of s, because 2pˢ = p·(2p^(s−1)) has even quotient and zero
/// remainder for every s ≥ 1. Equivalently: λ ≡ 0 or 2p − 2 (mod 2p).
pub fn in_block_of_two_p_s(lambda: &Weight, s: u32, p: Prime) -> bool {
    assert!(s >= 1, "the block of 2p^s is only considered for s >= 1");
    let split = p_decompose(lambda, p);
    (split.a.is_even() && split.i == 0) || (split.a.is_odd() && split.i == p.get() - 2)
}
