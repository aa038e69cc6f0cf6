//! The Ext recursion materialized as an inspectable DAG.
//!
//! Expanding a query tears it into summands one twist level down; doing
//! this naively yields a tree whose size explodes with the degree (the
//! full tree at q = 2·7³ is infeasible). This module stores the expansion
//! as a DAG instead, deduplicating shared subqueries, and recovers
//! tree-occurrence counts by counting root-to-node paths with dynamic
//! programming — exact and equivalent.
//!
//! Unlike the engine, expansion here keeps *every* summand index
//! 0 ≤ i ≤ m, so zero-dimensional children (rule `recursion` with zero
//! sum) and block-vanished children stay visible; [`TraceDag::pruned`]
//! produces the view without them. One step of the recursion corresponds
//! to one twist level: a node at twist s sits r − s steps below a
//! top-level query at twist r.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::blocks::{in_block_of_two_p_s, Prime, Weight};
use crate::engine::{ExtDim, ExtQuery};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("leaf query has twist {0}, expected a base-case query with twist 0")]
    LeafNotBaseCase(u32),
    #[error("query is at p = {query}, but this DAG was built at p = {dag}")]
    PrimeMismatch { query: Prime, dag: Prime },
    #[error("root has m + n = {got}, expected the normalization m + n = 2p^s = {expected}")]
    RootNotNormalized { got: BigUint, expected: BigUint },
}

/// How a node's dimension was determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// Twist 0: Ext^a(Δ(b), ∇(2)), nonzero iff (a, b) = (0, 2).
    BaseCase,
    /// Twist ≥ 1 with the weight outside the block of 2pˢ.
    BlockVanish,
    /// Twist ≥ 1, expanded into summands one level down.
    Recursion,
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Rule::BaseCase => "base-case",
            Rule::BlockVanish => "block-vanish",
            Rule::Recursion => "recursion",
        })
    }
}

pub type NodeId = usize;

/// One node of the expansion DAG. Node identity is the query (m, n, s);
/// the prime is fixed DAG-wide.
#[derive(Debug, Clone)]
pub struct TraceNode {
    pub query: ExtQuery,
    pub rule: Rule,
    pub dim: ExtDim,
    /// (summand index i, child), in increasing i. Empty unless the rule is
    /// `Recursion`, where the dimension is the sum of the children's.
    pub children: Vec<(BigUint, NodeId)>,
}

/// The memo key of a node inside one DAG.
fn key_of(query: &ExtQuery) -> (BigUint, BigUint, u32) {
    (query.m.clone(), query.n.clone(), query.s)
}

/// A deduplicated expansion DAG rooted at a single query.
#[derive(Debug, Clone)]
pub struct TraceDag {
    p: Prime,
    /// Discovery (depth-first) order; the root is node 0.
    nodes: Vec<TraceNode>,
    index: HashMap<(BigUint, BigUint, u32), NodeId>,
}

/// Expand a query into its full DAG.
///
/// Every subquery appears once; the root dimension agrees with what the
/// memoized engine computes for the same query (the test suite pins this).
pub fn trace(query: &ExtQuery) -> TraceDag {
    let mut dag = TraceDag {
        p: query.p,
        nodes: Vec::new(),
        index: HashMap::new(),
    };

    struct Frame {
        id: NodeId,
        m: BigUint,
        quotient: Weight,
        next_i: BigUint,
    }

    let mut stack = Vec::new();
    let root = dag.alloc(query);
    if dag.nodes[root].rule == Rule::Recursion {
        stack.push(Frame {
            id: root,
            m: query.m.clone(),
            quotient: &query.n / query.p.get(),
            next_i: BigUint::zero(),
        });
    }
    while let Some(frame) = stack.last_mut() {
        if frame.next_i > frame.m {
            let id = frame.id;
            stack.pop();
            let total: ExtDim = dag.nodes[id]
                .children
                .iter()
                .map(|(_, child)| dag.nodes[*child].dim.clone())
                .sum();
            dag.nodes[id].dim = total;
            continue;
        }
        let i = frame.next_i.clone();
        frame.next_i += 1u32;
        let parent = frame.id;
        let s = dag.nodes[parent].query.s;
        let child_query = ExtQuery {
            m: &frame.m - &i,
            n: &frame.quotient + &i,
            s: s - 1,
            p: dag.p,
        };
        let known = dag.index.contains_key(&key_of(&child_query));
        let child = dag.alloc(&child_query);
        dag.nodes[parent].children.push((i, child));
        if !known && dag.nodes[child].rule == Rule::Recursion {
            stack.push(Frame {
                id: child,
                m: child_query.m.clone(),
                quotient: &child_query.n / dag.p.get(),
                next_i: BigUint::zero(),
            });
        }
    }
    dag
}

impl TraceDag {
    /// Get or create the node for a query. New recursion nodes start with
    /// dimension 0 and no children; the builder fills them in.
    fn alloc(&mut self, query: &ExtQuery) -> NodeId {
        debug_assert_eq!(query.p, self.p);
        if let Some(&id) = self.index.get(&key_of(query)) {
            return id;
        }
        let (rule, dim) = if query.s == 0 {
            let dim = if query.m.is_zero() && query.n == BigUint::from(2u32) {
                ExtDim::one()
            } else {
                ExtDim::zero()
            };
            (Rule::BaseCase, dim)
        } else if !in_block_of_two_p_s(&query.n, query.s, self.p) {
            (Rule::BlockVanish, ExtDim::zero())
        } else {
            (Rule::Recursion, ExtDim::zero())
        };
        let id = self.nodes.len();
        self.nodes.push(TraceNode {
            query: query.clone(),
            rule,
            dim,
            children: Vec::new(),
        });
        self.index.insert(key_of(query), id);
        id
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn root_id(&self) -> NodeId {
        0
    }

    pub fn root(&self) -> &TraceNode {
        &self.nodes[0]
    }

    pub fn nodes(&self) -> &[TraceNode] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &TraceNode {
        &self.nodes[id]
    }

    pub fn find(&self, query: &ExtQuery) -> Option<NodeId> {
        self.index.get(&key_of(query)).copied()
    }

    /// Number of root-to-node expansion paths for every node. Edges go
    /// strictly down in twist, so processing nodes by decreasing twist
    /// propagates counts in topological order.
    fn path_counts(&self) -> Vec<BigUint> {
        let mut order: Vec<NodeId> = (0..self.nodes.len()).collect();
        order.sort_by(|a, b| self.nodes[*b].query.s.cmp(&self.nodes[*a].query.s));
        let mut counts = vec![BigUint::zero(); self.nodes.len()];
        counts[self.root_id()] = BigUint::one();
        for id in order {
            let count = counts[id].clone();
            if count.is_zero() {
                continue;
            }
            for (_, child) in &self.nodes[id].children {
                counts[*child] += &count;
            }
        }
        counts
    }

    /// Number of distinct root-to-leaf expansion paths reaching the given
    /// base-case query — the leaf's occurrence count in the fully expanded
    /// tree. Zero when the leaf does not occur.
    pub fn leaf_path_count(&self, leaf: &ExtQuery) -> Result<BigUint, TraceError> {
        if leaf.p != self.p {
            return Err(TraceError::PrimeMismatch {
                query: leaf.p,
                dag: self.p,
            });
        }
        if leaf.s != 0 {
            return Err(TraceError::LeafNotBaseCase(leaf.s));
        }
        Ok(match self.find(leaf) {
            Some(id) => self.path_counts()[id].clone(),
            None => BigUint::zero(),
        })
    }

    /// Recover the root dimension from the leaves: the sum over base-case
    /// leaves of (occurrence count in the expanded tree) × (leaf
    /// dimension). Always equals the root dimension.
    pub fn dim_from_leaves(&self) -> ExtDim {
        let counts = self.path_counts();
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, node)| node.rule == Rule::BaseCase)
            .map(|(id, node)| &counts[id] * &node.dim)
            .sum()
    }

    /// The view with zero-dimensional children removed: only nodes
    /// reachable from the root through nonzero-dimensional nodes survive
    /// (the root is kept even when its dimension is zero).
    pub fn pruned(&self) -> TraceDag {
        let mut out = TraceDag {
            p: self.p,
            nodes: Vec::new(),
            index: HashMap::new(),
        };
        let mut remap: HashMap<NodeId, NodeId> = HashMap::new();
        let mut stack = vec![self.root_id()];
        let root = &self.nodes[self.root_id()];
        out.nodes.push(TraceNode {
            children: Vec::new(),
            ..root.clone()
        });
        out.index.insert(key_of(&root.query), 0);
        remap.insert(self.root_id(), 0);
        while let Some(old_id) = stack.pop() {
            let new_id = remap[&old_id];
            for (i, old_child) in &self.nodes[old_id].children {
                if self.nodes[*old_child].dim.is_zero() {
                    continue;
                }
                let mapped = match remap.get(old_child) {
                    Some(&m) => m,
                    None => {
                        let node = &self.nodes[*old_child];
                        let m = out.nodes.len();
                        out.nodes.push(TraceNode {
                            children: Vec::new(),
                            ..node.clone()
                        });
                        out.index.insert(key_of(&node.query), m);
                        remap.insert(*old_child, m);
                        stack.push(*old_child);
                        m
                    }
                };
                out.nodes[new_id].children.push((i.clone(), mapped));
            }
        }
        out
    }

    /// Walk every node with nonzero dimension and check m + n ≥ 2pˢ at its
    /// twist level. Requires the root to carry the top-level normalization
    /// m + n = 2pˢ, without which the inequality is not invariant.
    pub fn verify_deficit(&self) -> Result<DeficitReport, TraceError> {
        let root = &self.nodes[self.root_id()].query;
        let root_sum = &root.m + &root.n;
        let expected = self.p.two_p_pow(root.s);
        if root_sum != expected {
            return Err(TraceError::RootNotNormalized {
                got: root_sum,
                expected,
            });
        }
        let mut checked = 0usize;
        let mut violations = Vec::new();
        for node in &self.nodes {
            if node.dim.is_zero() {
                continue;
            }
            checked += 1;
            let sum = &node.query.m + &node.query.n;
            if sum < self.p.two_p_pow(node.query.s) {
                violations.push(node.query.clone());
            }
        }
        Ok(DeficitReport {
            nodes_checked: checked,
            violations,
        })
    }
}

/// Result of a deficit walk; `violations` is expected to be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeficitReport {
    pub nodes_checked: usize,
    pub violations: Vec<ExtQuery>,
}

/// A candidate parent one recursion step above a child query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Precursor {
    /// Expanding `parent` at this summand index yields the child back.
    pub summand_index: BigUint,
    pub parent: ExtQuery,
}

/// All queries at twist s + 1 that can reach `child` = (a, b, s) in one
/// recursion step: for 0 ≤ i ≤ b the parent degree is a + i and the parent
/// weight is p(b − i) when b − i is even, p(b − i) + (p − 2) when b − i is
/// odd — the unique weights with quotient b − i inside the block of
/// 2p^(s+1). Candidates failing that block test are dropped.
pub fn precursors(child: &ExtQuery) -> Vec<Precursor> {
    let p = child.p.get();
    let mut out = Vec::new();
    let mut i = BigUint::zero();
    while i <= child.n {
        let quotient = &child.n - &i;
        let weight = if quotient.is_even() {
            &quotient * p
        } else {
            &quotient * p + (p - 2)
        };
        if in_block_of_two_p_s(&weight, child.s + 1, child.p) {
            out.push(Precursor {
                summand_index: i.clone(),
                parent: ExtQuery {
                    m: &child.m + &i,
                    n: weight,
                    s: child.s + 1,
                    p: child.p,
                },
            });
        }
        i += 1u32;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::ExtEngine;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn q(m: u64, n: u64, s: u32, pr: u64) -> ExtQuery {
        ExtQuery::new(m, n, s, p(pr))
    }

    #[test]
    fn chain_trace() {
        // The only nonzero path at p = 2, twist 2:
        // Hom(Δ(8),∇(2)^(2)) → Hom(Δ(4),∇(2)^(1)) → Hom(Δ(2),∇(2)).
        let dag = trace(&q(0, 8, 2, 2));
        assert_eq!(dag.root().dim, big(1));
        assert_eq!(dag.nodes().len(), 3);
        let chain = [q(0, 8, 2, 2), q(0, 4, 1, 2), q(0, 2, 0, 2)];
        for query in &chain {
            let id = dag.find(query).unwrap();
            assert_eq!(dag.node(id).dim, big(1));
        }
    }

    #[test]
    fn single_base_node() {
        let dag = trace(&q(0, 2, 0, 5));
        assert_eq!(dag.nodes().len(), 1);
        assert_eq!(dag.root().rule, Rule::BaseCase);
        assert_eq!(dag.root().dim, big(1));
        assert!(dag.root().children.is_empty());
    }

    #[test]
    fn block_vanished_root_has_no_children() {
        // Weight 1 is outside the block of 4 at p = 2, so the root
        // vanishes without expanding.
        let dag = trace(&q(3, 1, 1, 2));
        assert_eq!(dag.nodes().len(), 1);
        assert_eq!(dag.root().rule, Rule::BlockVanish);
        assert_eq!(dag.root().dim, big(0));
        assert!(dag.root().children.is_empty());
    }

    #[test]
    fn recursion_node_keeps_all_summands() {
        // (2, 2, 1) at p = 2 expands into all three summands i = 0..2,
        // every one of them zero.
        let dag = trace(&q(2, 2, 1, 2));
        let root = dag.root();
        assert_eq!(root.rule, Rule::Recursion);
        assert_eq!(root.dim, big(0));
        let indices: Vec<BigUint> = root.children.iter().map(|(i, _)| i.clone()).collect();
        assert_eq!(indices, vec![big(0), big(1), big(2)]);
    }

    #[test]
    fn shared_subqueries_are_deduplicated() {
        // Two branches reach the base query (2, 2, 0): through (2, 4, 1)
        // at i = 0 and through (3, 2, 1) at i = 1.
        let dag = trace(&q(6, 0, 3, 2));
        let shared = dag.find(&q(2, 2, 0, 2)).unwrap();
        let parents = dag
            .nodes()
            .iter()
            .filter(|node| node.children.iter().any(|(_, c)| *c == shared))
            .count();
        assert_eq!(parents, 2);
        assert_eq!(dag.leaf_path_count(&q(2, 2, 0, 2)).unwrap(), big(2));
        // The expanded tree is strictly larger than the stored DAG.
        let tree_nodes: BigUint = dag.path_counts().iter().sum();
        assert!(tree_nodes > BigUint::from(dag.nodes().len()));
    }

    #[test]
    fn root_dim_matches_engine() {
        let engine = ExtEngine::new();
        for pr in [2u64, 3] {
            for s in 0..=2u32 {
                for n in 0..=12u64 {
                    for m in 0..=8u64 {
                        let query = q(m, n, s, pr);
                        let dag = trace(&query);
                        assert_eq!(dag.root().dim, engine.ext_delta_nabla2(&query), "{query}");
                        assert_eq!(dag.dim_from_leaves(), dag.root().dim, "{query}");
                    }
                }
            }
        }
    }

    #[test]
    fn leaf_path_count_examples() {
        // Top query at p = 3, r = 2: the unique copy of Hom(Δ(2),∇(2)).
        let dag = trace(&q(0, 6, 1, 3));
        assert_eq!(dag.leaf_path_count(&q(0, 2, 0, 3)).unwrap(), big(1));
        // Root is the leaf.
        let dag = trace(&q(0, 2, 0, 2));
        assert_eq!(dag.leaf_path_count(&q(0, 2, 0, 2)).unwrap(), big(1));
        // No path: every summand vanishes.
        let dag = trace(&q(2, 2, 1, 2));
        assert_eq!(dag.leaf_path_count(&q(0, 2, 0, 2)).unwrap(), big(0));
    }

    #[test]
    fn leaf_path_count_rejects_non_leaves() {
        let dag = trace(&q(0, 4, 1, 2));
        assert_eq!(
            dag.leaf_path_count(&q(0, 4, 1, 2)),
            Err(TraceError::LeafNotBaseCase(1))
        );
        assert!(matches!(
            dag.leaf_path_count(&q(0, 2, 0, 3)),
            Err(TraceError::PrimeMismatch { .. })
        ));
    }

    #[test]
    fn dim_from_leaves_examples() {
        assert_eq!(trace(&q(0, 4, 1, 2)).dim_from_leaves(), big(1));
        assert_eq!(trace(&q(4, 0, 1, 2)).dim_from_leaves(), big(0));
    }

    #[test]
    fn precursor_examples() {
        // Parents of Hom(Δ(2),∇(2)) at p = 2.
        let parents = precursors(&q(0, 2, 0, 2));
        let queries: Vec<ExtQuery> = parents.iter().map(|pr| pr.parent.clone()).collect();
        assert!(queries.contains(&q(0, 4, 1, 2)));
        assert_eq!(parents[0].summand_index, big(0));

        // At p = 3 the formal candidates are Hom(Δ(6),∇(2)^(1)),
        // Ext¹(Δ(4),∇(2)^(1)) and Ext²(Δ(0),∇(2)^(1)).
        let parents = precursors(&q(0, 2, 0, 3));
        let got: Vec<(BigUint, ExtQuery)> = parents
            .iter()
            .map(|pr| (pr.summand_index.clone(), pr.parent.clone()))
            .collect();
        assert_eq!(
            got,
            vec![
                (big(0), q(0, 6, 1, 3)),
                (big(1), q(1, 4, 1, 3)),
                (big(2), q(2, 0, 1, 3)),
            ]
        );

        // b = 0 forces i = 0.
        let parents = precursors(&q(0, 0, 0, 2));
        assert_eq!(parents.len(), 1);
        assert_eq!(parents[0].parent, q(0, 0, 1, 2));
    }

    #[test]
    fn precursors_expand_back_to_child() {
        for pr in [2u64, 3, 5] {
            for s in 0..=2u32 {
                for b in 0..=10u64 {
                    for a in 0..=6u64 {
                        let child = q(a, b, s, pr);
                        for pre in precursors(&child) {
                            // One expansion step of the parent at the
                            // recorded index gives the child back.
                            let i = &pre.summand_index;
                            let m = &pre.parent.m - i;
                            let n = &pre.parent.n / pr + i;
                            assert_eq!(m, child.m);
                            assert_eq!(n, child.n);
                            assert_eq!(pre.parent.s, s + 1);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn deficit_examples() {
        let report = trace(&q(0, 8, 2, 2)).verify_deficit().unwrap();
        assert!(report.violations.is_empty());
        assert_eq!(report.nodes_checked, 3);

        // Boundary: 2 + 0 ≥ 2p⁰ = 2.
        let report = trace(&q(0, 2, 0, 5)).verify_deficit().unwrap();
        assert!(report.violations.is_empty());

        // Unnormalized roots are rejected rather than silently walked.
        let err = trace(&q(1, 2, 1, 2)).verify_deficit().unwrap_err();
        assert_eq!(
            err,
            TraceError::RootNotNormalized {
                got: big(3),
                expected: big(4)
            }
        );
    }

    #[test]
    fn pruned_keeps_nonzero_paths() {
        let dag = trace(&q(6, 0, 3, 2));
        let pruned = dag.pruned();
        assert_eq!(pruned.root().dim, big(1));
        assert_eq!(pruned.nodes().len(), 4);
        for node in pruned.nodes().iter().skip(1) {
            assert!(!node.dim.is_zero());
        }
        // Pruning a zero root leaves just the root.
        let pruned = trace(&q(2, 2, 1, 2)).pruned();
        assert_eq!(pruned.nodes().len(), 1);
        assert!(pruned.root().children.is_empty());
    }
}
