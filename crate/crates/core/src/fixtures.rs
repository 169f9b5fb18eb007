//! Small named k-graphs used throughout the tests and examples.
//!
//! * `l1`: one vertex `v` with one loop `e` (1-graph).
//! * `p2`: a single edge `a: u → v` (1-graph).
//! * `c2`: vertices `u, v`, edges `a: v → u`, `b: u → v`.
//! * `cycle(n)`: directed n-cycle `e{i}: v{i} → v{i+1}`.
//! * `t2`: one vertex, loops `e` (color 1), `f` (color 2), square `e f = f e`.
//! * `ff2`: one vertex, color-1 loops `a, b`, color-2 loop `f`, squares
//!   `a f = f b` and `b f = f a`.
//! * `q2`: four vertices forming one commuting square `e f = g h`.
//! * `c3_three_graph`: one vertex with commuting loops `x, y, z` of colors 1, 2, 3.

use crate::kgraph::{validate_kgraph, EdgeSpec, KGraph, Skeleton, SquareTable};

pub fn parts(
    k: usize,
    vertices: &[&str],
    edges: &[(&str, usize, &str, &str)],
    squares: &[[&str; 4]],
) -> (Skeleton, SquareTable) {
    let skeleton = Skeleton {
        k,
        vertices: vertices.iter().map(|v| v.to_string()).collect(),
        edges: edges.iter().map(|&(id, c, s, r)| EdgeSpec::new(id, c, s, r)).collect(),
    };
    let squares = SquareTable { squares: squares.iter().map(|q| q.map(String::from)).collect() };
    (skeleton, squares)
}

pub fn build(
    k: usize,
    vertices: &[&str],
    edges: &[(&str, usize, &str, &str)],
    squares: &[[&str; 4]],
) -> KGraph {
    let (skeleton, table) = parts(k, vertices, edges, squares);
    validate_kgraph(&skeleton, &table).expect("fixture is a valid k-graph")
}

pub fn l1() -> KGraph {
    build(1, &["v"], &[("e", 1, "v", "v")], &[])
}

pub fn p2() -> KGraph {
    build(1, &["u", "v"], &[("a", 1, "u", "v")], &[])
}

pub fn c2() -> KGraph {
    build(1, &["u", "v"], &[("a", 1, "v", "u"), ("b", 1, "u", "v")], &[])
}

pub fn cycle(n: usize) -> KGraph {
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, String)> = (0..n)
        .map(|i| (format!("e{i}"), format!("v{i}"), format!("v{}", (i + 1) % n)))
        .collect();
    let vrefs: Vec<&str> = vertices.iter().map(String::as_str).collect();
    let erefs: Vec<(&str, usize, &str, &str)> =
        edges.iter().map(|(e, s, r)| (e.as_str(), 1, s.as_str(), r.as_str())).collect();
    build(1, &vrefs, &erefs, &[])
}

pub fn t2() -> KGraph {
    build(2, &["v"], &[("e", 1, "v", "v"), ("f", 2, "v", "v")], &[["e", "f", "f", "e"]])
}

pub fn ff2() -> KGraph {
    build(
        2,
        &["v"],
        &[("a", 1, "v", "v"), ("b", 1, "v", "v"), ("f", 2, "v", "v")],
        &[["a", "f", "f", "b"], ["b", "f", "f", "a"]],
    )
}

/// FF2 with the pairing broken: `(f, a)` is unmatched and `(f, b)` matched twice.
pub fn ff2_bad_parts() -> (Skeleton, SquareTable) {
    parts(
        2,
        &["v"],
        &[("a", 1, "v", "v"), ("b", 1, "v", "v"), ("f", 2, "v", "v")],
        &[["a", "f", "f", "b"], ["b", "f", "f", "b"]],
    )
}

pub fn q2() -> KGraph {
    build(
        2,
        &["u", "v", "w", "z"],
        &[("e", 1, "u", "z"), ("f", 2, "w", "u"), ("g", 2, "v", "z"), ("h", 1, "w", "v")],
        &[["e", "f", "g", "h"]],
    )
}

pub fn c3_three_graph() -> KGraph {
    build(
        3,
        &["v"],
        &[("x", 1, "v", "v"), ("y", 2, "v", "v"), ("z", 3, "v", "v")],
        &[["x", "y", "y", "x"], ["x", "z", "z", "x"], ["y", "z", "z", "y"]],
    )
}
