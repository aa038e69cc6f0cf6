//! Grid and property tests for the expansion DAG: leaf counting against
//! the engine, the unique-chain statement, precursor soundness, and the
//! deficit walks.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use proptest::prelude::*;
use sl2ext::{naive_ext_dim, precursors, trace, ExtEngine, ExtQuery, Prime, Rule};

fn p(v: u64) -> Prime {
    Prime::new(v).unwrap()
}

#[test]
fn leaf_counting_recovers_the_engine_dimension() {
    let engine = ExtEngine::new();
    for pr in [2u64, 3] {
        for s in 0..=2u32 {
            for n in 0..=20u64 {
                for m in 0..=12u64 {
                    let query = ExtQuery::new(m, n, s, p(pr));
                    let dag = trace(&query);
                    let dim = engine.ext_delta_nabla2(&query);
                    assert_eq!(dag.root().dim, dim, "{query}");
                    assert_eq!(dag.dim_from_leaves(), dim, "{query}");
                }
            }
        }
    }
}

/// Across the top-degree decomposition the base query (0, 2, 0) occurs
/// exactly once, and the nonzero queries form exactly the chain
/// (0, 2p^(r−s), r−s), s = 1..r.
#[test]
fn the_nonzero_chain_is_unique() {
    for pr in [2u64, 3, 5] {
        for r in 1..=3u32 {
            let pr = p(pr);
            let q = pr.two_p_pow(r - 1);
            let leaf = ExtQuery::new(0u32, 2u32, 0, pr);

            let mut total = BigUint::zero();
            let mut nonzero = Vec::new();
            let mut n = BigUint::zero();
            while n <= q {
                let dag = trace(&ExtQuery {
                    m: &q - &n,
                    n: n.clone(),
                    s: r - 1,
                    p: pr,
                });
                total += dag.leaf_path_count(&leaf).unwrap();
                for node in dag.nodes() {
                    if !node.dim.is_zero() {
                        nonzero.push((node.query.m.clone(), node.query.n.clone(), node.query.s));
                    }
                }
                n += 1u32;
            }

            assert_eq!(total, BigUint::one(), "p = {pr}, r = {r}");
            nonzero.sort();
            nonzero.dedup();
            let mut expected: Vec<_> = (1..=r)
                .map(|s| (BigUint::zero(), pr.two_p_pow(r - s), r - s))
                .collect();
            expected.sort();
            assert_eq!(nonzero, expected, "p = {pr}, r = {r}");
        }
    }
}

/// Every expansion edge is recovered by precursor enumeration: if the DAG
/// contains parent → child at summand index i and the parent passed the
/// block test, then precursors(child) lists that parent at that index.
#[test]
fn expansion_edges_invert_through_precursors() {
    let mut edges = 0u64;
    for pr in [2u64, 3, 5] {
        for r in 1..=2u32 {
            let q = p(pr).two_p_pow(r);
            let mut n = BigUint::zero();
            while n <= q {
                let dag = trace(&ExtQuery {
                    m: &q - &n,
                    n: n.clone(),
                    s: r,
                    p: p(pr),
                });
                for node in dag.nodes() {
                    if node.rule != Rule::Recursion {
                        continue;
                    }
                    for (i, child) in &node.children {
                        let child = &dag.node(*child).query;
                        let listed = precursors(child)
                            .into_iter()
                            .any(|pre| pre.summand_index == *i && pre.parent == node.query);
                        assert!(listed, "edge {} --{i}--> {child} not recovered", node.query);
                        edges += 1;
                    }
                }
                n += 1u32;
            }
        }
    }
    assert!(
        edges > 1000,
        "expected a substantial edge sample, saw {edges}"
    );
}

#[test]
fn deficit_walks_are_clean_over_the_top_decomposition() {
    for pr in [2u64, 3] {
        for r in 1..=3u32 {
            let q = p(pr).two_p_pow(r - 1);
            let mut n = BigUint::zero();
            while n <= q {
                let dag = trace(&ExtQuery {
                    m: &q - &n,
                    n: n.clone(),
                    s: r - 1,
                    p: p(pr),
                });
                let report = dag.verify_deficit().unwrap();
                assert!(
                    report.violations.is_empty(),
                    "p = {pr}, r = {r}, n = {n}: {:?}",
                    report.violations
                );
                n += 1u32;
            }
        }
    }
}

/// The arithmetic step behind the deficit argument, checked directly:
/// a + b < 2pˢ forces (a + i) + p(b − i) + (p − 2) < 2p^(s+1).
#[test]
fn deficit_step_inequality_grid() {
    for pv in [2u64, 3, 5, 7] {
        for s in 0..=3u32 {
            let bound = 2 * pv.pow(s);
            let next_bound = 2 * pv.pow(s + 1);
            for a in 0..=100u64 {
                for b in 0..=100u64 {
                    if a + b >= bound {
                        continue;
                    }
                    for i in 0..=b {
                        let precursor = (a + i) + pv * (b - i) + (pv - 2);
                        assert!(
                            precursor < next_bound,
                            "p = {pv}, s = {s}, a = {a}, b = {b}, i = {i}"
                        );
                    }
                }
            }
        }
    }
}

proptest! {
    /// Trace, engine and naive oracle compute the same dimension, and
    /// pruning preserves it while dropping every zero node but the root.
    #[test]
    fn three_routes_agree(
        m in 0u64..=10,
        n in 0u64..=16,
        s in 0u32..=2,
        pidx in 0usize..3,
    ) {
        let query = ExtQuery::new(m, n, s, p([2u64, 3, 5][pidx]));
        let dag = trace(&query);
        let engine = ExtEngine::new();
        prop_assert_eq!(dag.root().dim.clone(), engine.ext_delta_nabla2(&query));
        prop_assert_eq!(dag.dim_from_leaves(), dag.root().dim.clone());
        prop_assert_eq!(
            naive_ext_dim(&query, 100_000_000).unwrap(),
            dag.root().dim.clone()
        );

        let pruned = dag.pruned();
        prop_assert_eq!(pruned.root().dim.clone(), dag.root().dim.clone());
        for node in pruned.nodes().iter().skip(1) {
            prop_assert!(!node.dim.is_zero());
        }
    }
}
