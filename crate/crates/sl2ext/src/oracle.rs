//! Brute-force reference implementations used to validate the closed
//! forms before trusting them.
//!
//! Nothing here consults the block predicates of [`crate::blocks`] or the
//! memoized engine, so a bug there cannot confirm itself:
//!
//! * [`orbit_linked`] realizes the affine dot action directly. For SL₂
//!   (ρ = 1) the dot-action reflections on weights are x ↦ 2mp − x − 2 for
//!   m ∈ ℤ, and two weights are linked when one lies in the transitive
//!   closure of the other's reflections inside a cutoff window.
//! * [`naive_ext_dim`] expands the Ext recursion as a full tree with no
//!   memoization, using the orbit oracle as its block guard.
//! * [`binomial`], [`power_series_inv_pow4`] and [`convolve_truncated`]
//!   are the reference routes for the Hilbert-series module.
//!
//! These are deliberately small-instance tools; the soft limits for
//! [`naive_ext_dim`] are p ≤ 3, s ≤ 2, m ≤ 12, n ≤ 20.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::blocks::{Prime, Weight};
use crate::engine::{ExtDim, ExtQuery};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    /// The orbit cutoff must leave room past both weights: B ≥ max(λ, μ) + 2p.
    #[error("orbit cutoff {bound} is below the safety margin {required}")]
    BoundTooSmall { bound: BigUint, required: BigUint },
    /// The expansion guard was exhausted; the result so far is discarded
    /// rather than returned truncated.
    #[error("expansion guard exhausted after {0} nodes")]
    GuardExceeded(u64),
}

/// Cutoff for orbit generation: orbits are closed transitively within
/// [0, B]. Sound for a query (λ, μ) as long as B ≥ max(λ, μ) + 2p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitBound(pub BigUint);

impl OrbitBound {
    pub fn new(bound: impl Into<BigUint>) -> OrbitBound {
        OrbitBound(bound.into())
    }
}

/// The dot-action orbit of λ within [0, bound]: the transitive closure of
/// λ under the reflections x ↦ 2mp − x − 2, m ∈ ℤ, keeping only images in
/// the window.
pub fn orbit_of(lambda: &Weight, p: Prime, bound: &BigUint) -> HashSet<Weight> {
    let two_p = BigUint::from(2 * p.get());
    let mut seen = HashSet::new();
    let mut queue = Vec::new();
    if lambda <= bound {
        seen.insert(lambda.clone());
        queue.push(lambda.clone());
    }
    while let Some(x) = queue.pop() {
        // 0 ≤ 2mp − x − 2 ≤ B  ⇔  ceil((x+2)/2p) ≤ m ≤ floor((B+x+2)/2p)
        let lo = (&x + 2u32 + &two_p - 1u32) / &two_p;
        let hi = (bound + &x + 2u32) / &two_p;
        let mut m = lo;
        while m <= hi {
            let y = &m * &two_p - &x - 2u32;
            if seen.insert(y.clone()) {
                queue.push(y);
            }
            m += 1u32;
        }
    }
    seen
}

/// Whether μ lies in the dot-action orbit of λ, generated within the given
/// cutoff window.
pub fn orbit_linked(
    lambda: &Weight,
    mu: &Weight,
    p: Prime,
    bound: &OrbitBound,
) -> Result<bool, OracleError> {
    let required = lambda.max(mu) + 2 * p.get();
    if bound.0 < required {
        return Err(OracleError::BoundTooSmall {
            bound: bound.0.clone(),
            required,
        });
    }
    Ok(orbit_of(lambda, p, &bound.0).contains(mu))
}

/// Unmemoized full expansion of the Ext recursion.
///
/// Every node spends one unit of `guard`; exhausting the guard is an
/// error, never a silently truncated answer. The block test for a node at
/// twist s ≥ 1 asks the orbit oracle whether the node's weight is
/// dot-linked to 2pˢ.
pub fn naive_ext_dim(query: &ExtQuery, guard: u64) -> Result<ExtDim, OracleError> {
    // One orbit per twist level, generated inside a window wide enough for
    // every weight the expansion can reach: weights grow by at most the
    // remaining degree, so m + n bounds them all.
    let p = query.p;
    let reach = &query.m + &query.n;
    let orbits: Vec<HashSet<Weight>> = (1..=query.s)
        .map(|s| {
            let two_p_s = p.two_p_pow(s);
            let bound = reach.clone().max(two_p_s.clone()) + 2 * p.get();
            orbit_of(&two_p_s, p, &bound)
        })
        .collect();

    let mut budget = guard;
    expand(query, &orbits, &mut budget, guard)
}

fn expand(
    query: &ExtQuery,
    orbits: &[HashSet<Weight>],
    budget: &mut u64,
    guard: u64,
) -> Result<ExtDim, OracleError> {
    if *budget == 0 {
        return Err(OracleError::GuardExceeded(guard));
    }
    *budget -= 1;

    if query.s == 0 {
        return Ok(if query.m.is_zero() && query.n == BigUint::from(2u32) {
            ExtDim::one()
        } else {
            ExtDim::zero()
        });
    }
    if !orbits[(query.s - 1) as usize].contains(&query.n) {
        return Ok(ExtDim::zero());
    }
    let quotient = &query.n / query.p.get();
    let mut total = ExtDim::zero();
    let mut i = BigUint::zero();
    while i <= query.m {
        let child = ExtQuery {
            m: &query.m - &i,
            n: &quotient + &i,
            s: query.s - 1,
            p: query.p,
        };
        total += expand(&child, orbits, budget, guard)?;
        i += 1u32;
    }
    Ok(total)
}

/// Exact binomial coefficient C(n, k).
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for j in 0..k {
        num *= n - j;
        den *= j + 1;
    }
    num / den
}

/// Reference coefficients of (1 − t^d)^(−4) up to `max_degree`: the
/// coefficient at t^(dk) is C(k + 3, 3), all others vanish.
pub fn power_series_inv_pow4(d: u64, max_degree: usize) -> Vec<BigUint> {
    let mut coeffs = vec![BigUint::zero(); max_degree + 1];
    let mut k = 0u64;
    loop {
        let deg = d.checked_mul(k).and_then(|v| usize::try_from(v).ok());
        match deg {
            Some(deg) if deg <= max_degree => coeffs[deg] = binomial(k + 3, 3),
            _ => break,
        }
        k += 1;
        if d == 0 {
            break;
        }
    }
    coeffs
}

/// Naive truncated product of two coefficient vectors.
pub fn convolve_truncated(a: &[BigUint], b: &[BigUint], max_degree: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); max_degree + 1];
    for (i, ca) in a.iter().enumerate().take(max_degree + 1) {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate().take(max_degree + 1 - i) {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    out
}
