//! Serialized forms of an expansion DAG.
//!
//! JSON schema (stable for downstream tooling): the payload is
//! `{"root": <node_id>, "nodes": {<node_id>: <node>}}` with
//! `node_id = "m:n:s"` and node objects
//! `{"m", "n", "s", "rule", "dim", "children": [{"i", "node_id"}]}`;
//! children are listed in increasing summand index. The Graphviz form has
//! one vertex per node labeled `Ext^m(Δ(n),∇(2)^(s)) = dim` and one edge
//! per expansion step labeled by its summand index.

use serde_json::{json, Map, Value};
use sl2ext::{ExtQuery, TraceDag};

use crate::envelope::exact;

pub fn node_id(query: &ExtQuery) -> String {
    format!("{}:{}:{}", query.m, query.n, query.s)
}

pub fn dag_to_json(dag: &TraceDag) -> Value {
    let mut nodes = Map::new();
    for node in dag.nodes() {
        let children: Vec<Value> = node
            .children
            .iter()
            .map(|(i, child)| {
                json!({
                    "i": exact(i),
                    "node_id": node_id(&dag.node(*child).query),
                })
            })
            .collect();
        nodes.insert(
            node_id(&node.query),
            json!({
                "m": exact(&node.query.m),
                "n": exact(&node.query.n),
                "s": node.query.s,
                "rule": node.rule.to_string(),
                "dim": exact(&node.dim),
                "children": children,
            }),
        );
    }
    json!({
        "root": node_id(&dag.root().query),
        "nodes": nodes,
    })
}

pub fn dag_to_dot(dag: &TraceDag) -> String {
    let mut out = String::from("digraph trace {\n");
    for node in dag.nodes() {
        let q = &node.query;
        out.push_str(&format!(
            "  \"{}\" [label=\"Ext^{}(Δ({}),∇(2)^({})) = {}\"];\n",
            node_id(q),
            q.m,
            q.n,
            q.s,
            node.dim
        ));
    }
    for node in dag.nodes() {
        for (i, child) in &node.children {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                node_id(&node.query),
                node_id(&dag.node(*child).query),
                i
            ));
        }
    }
    out.push_str("}\n");
    out
}
