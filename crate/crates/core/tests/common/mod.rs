#![allow(dead_code)]

use std::sync::Arc;

use kgraph::fixtures;
use kgraph::{
    skew_product, Cocycle, FiniteGroupRealization, GroupPresentation, GroupWord, KGraph, VertexId,
};
use proptest::prelude::*;

/// One-vertex 2-graph with color-1 loops `a0..`, color-2 loops `b0..` and
/// squares from a bijection of `[m] × [n]`: the pair `(b_j, a_i)` (in
/// composition order) is rewritten to `(a_t, b_u)` with `t*n + u = theta[i*n + j]`.
pub fn one_vertex(m: usize, n: usize, theta: &[usize]) -> KGraph {
    let a: Vec<String> = (0..m).map(|i| format!("a{i}")).collect();
    let b: Vec<String> = (0..n).map(|j| format!("b{j}")).collect();
    let mut edges: Vec<(&str, usize, &str, &str)> = Vec::new();
    for x in &a {
        edges.push((x, 1, "v", "v"));
    }
    for y in &b {
        edges.push((y, 2, "v", "v"));
    }
    let mut squares = Vec::new();
    for i in 0..m {
        for j in 0..n {
            let t = theta[i * n + j];
            squares.push([a[t / n].as_str(), b[t % n].as_str(), b[j].as_str(), a[i].as_str()]);
        }
    }
    fixtures::build(2, &["v"], &edges, &squares)
}

pub fn arb_one_vertex() -> impl Strategy<Value = KGraph> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(m, n)| {
        Just((0..m * n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(move |theta| one_vertex(m, n, &theta))
    })
}

/// Skew product of a one-vertex 2-graph by a color-constant cocycle into `ℤ/q`,
/// which is always functorial; gives multi-vertex 2-graphs.
pub fn arb_two_graph() -> impl Strategy<Value = KGraph> {
    (arb_one_vertex(), 1u64..=3, 0i64..3, 0i64..3).prop_map(|(g, q, x, y)| {
        let values = g.edges().iter().map(|e| vec![if e.color == 1 { x } else { y }]).collect();
        let c = Cocycle::abelian(Some(vec![q]), values).unwrap();
        let r = FiniteGroupRealization::finite_abelian(&[q]).unwrap();
        let g = Arc::new(g);
        (*skew_product(&g, &c, &r).unwrap().product).clone()
    })
}

pub fn s3_presentation() -> GroupPresentation {
    presentation(&["r", "s"], &["r^3", "s^2", "s r s r"])
}

pub fn presentation(gens: &[&str], rels: &[&str]) -> GroupPresentation {
    let names: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
    let relators = rels.iter().map(|r| GroupWord::parse(r, &names).unwrap()).collect();
    GroupPresentation::new(names, relators).unwrap()
}

pub fn s3() -> FiniteGroupRealization {
    FiniteGroupRealization::from_presentation(&s3_presentation(), 100).unwrap()
}

pub fn hand_fixtures() -> Vec<(&'static str, KGraph)> {
    vec![
        ("L1", fixtures::l1()),
        ("P2", fixtures::p2()),
        ("C2", fixtures::c2()),
        ("C3", fixtures::cycle(3)),
        ("C4", fixtures::cycle(4)),
        ("T2", fixtures::t2()),
        ("FF2", fixtures::ff2()),
        ("Q2", fixtures::q2()),
        ("C3graph", fixtures::c3_three_graph()),
    ]
}

pub fn v0() -> VertexId {
    VertexId(0)
}
