//! Grid tests for the memoized engine: the one-dimensionality and
//! vanishing statements, base-case and guard soundness, agreement with
//! the unmemoized oracle, and the decomposition identities.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use sl2ext::{e2_corner_dim, in_block_of_two_p_s, naive_ext_dim, ExtEngine, ExtQuery, Prime};

fn p(v: u64) -> Prime {
    Prime::new(v).unwrap()
}

#[test]
fn top_ext_is_one_dimensional_on_the_grid() {
    let engine = ExtEngine::new();
    for pr in [2u64, 3, 5, 7] {
        for r in 1..=4u32 {
            assert_eq!(
                engine.ext_k_gl2_top(r, p(pr)),
                BigUint::one(),
                "p = {pr}, r = {r}"
            );
        }
    }
}

#[test]
fn complementary_degree_ext_vanishes() {
    let engine = ExtEngine::new();
    for pr in [2u64, 3, 5] {
        for r in 1..=3u32 {
            let top = p(pr).two_p_pow(r);
            let mut n = BigUint::zero();
            while n < top {
                let query = ExtQuery {
                    m: &top - &n,
                    n: n.clone(),
                    s: r,
                    p: p(pr),
                };
                assert!(
                    engine.ext_delta_nabla2(&query).is_zero(),
                    "nonzero at p = {pr}, r = {r}, n = {n}"
                );
                n += 1u32;
            }
        }
    }
}

#[test]
fn base_case_soundness() {
    let engine = ExtEngine::new();
    for pr in [2u64, 5] {
        for m in 0..=50u64 {
            for n in 0..=50u64 {
                let dim = engine.ext_delta_nabla2(&ExtQuery::new(m, n, 0, p(pr)));
                let expected = if m == 0 && n == 2 { 1u64 } else { 0 };
                assert_eq!(dim, BigUint::from(expected), "m = {m}, n = {n}");
            }
        }
    }
}

#[test]
fn failed_block_test_forces_zero() {
    let engine = ExtEngine::new();
    for pr in [2u64, 3, 5] {
        for s in 1..=3u32 {
            for n in 0..=40u64 {
                let n = BigUint::from(n);
                if in_block_of_two_p_s(&n, s, p(pr)) {
                    continue;
                }
                for m in 0..=20u64 {
                    let query = ExtQuery {
                        m: BigUint::from(m),
                        n: n.clone(),
                        s,
                        p: p(pr),
                    };
                    assert!(engine.ext_delta_nabla2(&query).is_zero(), "{query}");
                }
            }
        }
    }
}

#[test]
fn engine_agrees_with_naive_oracle_on_the_full_grid() {
    let engine = ExtEngine::new();
    for pr in [2u64, 3] {
        for s in 0..=2u32 {
            for n in 0..=20u64 {
                for m in 0..=12u64 {
                    let query = ExtQuery::new(m, n, s, p(pr));
                    let naive = naive_ext_dim(&query, 10_000_000).expect("guard is ample");
                    assert_eq!(engine.ext_delta_nabla2(&query), naive, "{query}");
                }
            }
        }
    }
}

#[test]
fn decomposition_is_consistent_and_concentrated_at_the_top() {
    let engine = ExtEngine::new();
    for pr in [2u64, 3, 5, 7] {
        for r in 1..=3u32 {
            let q = p(pr).two_p_pow(r - 1);
            let summands = engine.decompose_ext_k_nabla2(&q, r, p(pr));
            let total: BigUint = summands.iter().map(|(_, d)| d.clone()).sum();
            assert_eq!(total, engine.ext_k_nabla2(&q, r, p(pr)));

            let corner = e2_corner_dim(r, p(pr));
            assert_eq!(corner.dim, BigUint::one());
            for (n, dim) in summands {
                let expected = if n == q {
                    corner.dim.clone()
                } else {
                    BigUint::zero()
                };
                assert_eq!(dim, expected, "p = {pr}, r = {r}, n = {n}");
            }
        }
    }
}
