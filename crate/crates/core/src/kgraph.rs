//! Finite k-graphs presented by a colored 1-skeleton and a table of
//! commuting squares.
//!
//! A path is a sequence of edges in composition order: `edges[0]` is applied
//! last, so `s(edges[i]) = r(edges[i + 1])`. Morphisms are stored in the
//! unique color-sorted representative (colors non-decreasing left to right),
//! which makes morphism equality a plain sequence comparison.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

/// An element of ℕᵏ.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(pub Vec<u32>);

impl Degree {
    pub fn zero(k: usize) -> Self {
        Degree(vec![0; k])
    }

    /// Standard basis vector for a 1-based color.
    pub fn basis(k: usize, color: usize) -> Self {
        let mut d = vec![0; k];
        d[color - 1] = 1;
        Degree(d)
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    /// Colors in ascending order, each repeated by its multiplicity.
    pub fn sorted_colors(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &n)| std::iter::repeat(i + 1).take(n as usize))
            .collect()
    }
}

impl Add for &Degree {
    type Output = Degree;

    fn add(self, rhs: &Degree) -> Degree {
        assert_eq!(self.k(), rhs.k(), "degree rank mismatch");
        Degree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Unvalidated edge record. `color` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSpec {
    pub id: String,
    pub color: usize,
    pub source: String,
    pub range: String,
}

impl EdgeSpec {
    pub fn new(id: &str, color: usize, source: &str, range: &str) -> Self {
        EdgeSpec { id: id.into(), color, source: source.into(), range: range.into() }
    }
}

/// Unvalidated colored 1-skeleton.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Skeleton {
    pub k: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
}

/// Unvalidated squares; each entry `[e, f, g, h]` reads `e∘f = g∘h` with
/// `color(e) = color(h) < color(f) = color(g)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SquareTable {
    pub squares: Vec<[String; 4]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    /// 1-based color.
    pub color: usize,
    pub source: VertexId,
    pub range: VertexId,
}

/// A validated square `e∘f = g∘h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Square {
    pub e: EdgeId,
    pub f: EdgeId,
    pub g: EdgeId,
    pub h: EdgeId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Morphisms whose source is the given vertex.
    Source,
    /// Morphisms whose range is the given vertex.
    Range,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationOptions {
    /// Largest path length checked exhaustively for unique factorization.
    pub factorization_depth: usize,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions { factorization_depth: 3 }
    }
}

/// A validated finite k-graph.
#[derive(Debug, Clone)]
pub struct KGraph {
    k: usize,
    vertices: Vec<String>,
    vertex_index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    edge_index: HashMap<String, EdgeId>,
    squares: Vec<Square>,
    // (g, h) -> (e, f): rewrites a descending pair into ascending order.
    to_sorted: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    to_unsorted: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    // [vertex][color - 1] -> edges, sorted by id
    out_edges: Vec<Vec<Vec<EdgeId>>>,
    in_edges: Vec<Vec<Vec<EdgeId>>>,
}

impl PartialEq for KGraph {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k
            && self.vertices == other.vertices
            && self.edges == other.edges
            && self.squares == other.squares
    }
}

impl Eq for KGraph {}

/// Validates skeleton-plus-squares data with the default factorization depth.
pub fn validate_kgraph(skeleton: &Skeleton, squares: &SquareTable) -> Result<KGraph> {
    KGraph::validate_with(skeleton, squares, ValidationOptions::default())
}

impl KGraph {
    pub fn validate_with(
        skeleton: &Skeleton,
        table: &SquareTable,
        options: ValidationOptions,
    ) -> Result<KGraph> {
        let k = skeleton.k;
        if k == 0 {
            return Err(Error::Malformed("k must be positive".into()));
        }

        let mut vertices = skeleton.vertices.clone();
        vertices.sort();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Malformed(format!("duplicate vertex id {}", w[0])));
        }
        let vertex_index: HashMap<String, VertexId> =
            vertices.iter().enumerate().map(|(i, v)| (v.clone(), VertexId(i))).collect();

        let mut specs = skeleton.edges.clone();
        specs.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = specs.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::Malformed(format!("duplicate edge id {}", w[0].id)));
        }
        let mut edges = Vec::with_capacity(specs.len());
        for spec in &specs {
            if spec.color == 0 || spec.color > k {
                return Err(Error::Malformed(format!(
                    "edge {} has color {} outside 1..={}",
                    spec.id, spec.color, k
                )));
            }
            let lookup = |v: &str| {
                vertex_index.get(v).copied().ok_or_else(|| {
                    Error::Malformed(format!("edge {} uses undeclared vertex {}", spec.id, v))
                })
            };
            edges.push(Edge {
                id: spec.id.clone(),
                color: spec.color,
                source: lookup(&spec.source)?,
                range: lookup(&spec.range)?,
            });
        }
        let edge_index: HashMap<String, EdgeId> =
            edges.iter().enumerate().map(|(i, e)| (e.id.clone(), EdgeId(i))).collect();

        let mut out_edges = vec![vec![Vec::new(); k]; vertices.len()];
        let mut in_edges = vec![vec![Vec::new(); k]; vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out_edges[e.source.0][e.color - 1].push(EdgeId(i));
            in_edges[e.range.0][e.color - 1].push(EdgeId(i));
        }

        // Endpoint and color constraints on each square.
        let mut squares = Vec::with_capacity(table.squares.len());
        for quad in &table.squares {
            let bad = |reason: &str| Error::BadSquare { square: quad.to_vec(), reason: reason.into() };
            let mut ids = [EdgeId(0); 4];
            for (slot, name) in ids.iter_mut().zip(quad) {
                *slot = *edge_index.get(name).ok_or_else(|| bad(&format!("unknown edge {name}")))?;
            }
            let [e, f, g, h] = ids.map(|id| &edges[id.0]);
            if !(e.color < f.color && g.color == f.color && h.color == e.color) {
                return Err(bad("colors must satisfy color(e) = color(h) < color(f) = color(g)"));
            }
            if e.source != f.range {
                return Err(bad("s(e) != r(f)"));
            }
            if g.source != h.range {
                return Err(bad("s(g) != r(h)"));
            }
            if f.source != h.source {
                return Err(bad("s(f) != s(h)"));
            }
            if e.range != g.range {
                return Err(bad("r(e) != r(g)"));
            }
            squares.push(Square { e: ids[0], f: ids[1], g: ids[2], h: ids[3] });
        }
        squares.sort();
        squares.dedup();

        let mut graph = KGraph {
            k,
            vertices,
            vertex_index,
            edges,
            edge_index,
            squares,
            to_sorted: HashMap::new(),
            to_unsorted: HashMap::new(),
            out_edges,
            in_edges,
        };
        graph.check_bijective()?;
        graph.check_factorization(options.factorization_depth)?;
        Ok(graph)
    }

    fn check_bijective(&mut self) -> Result<()> {
        let mut sorted_uses: BTreeMap<(EdgeId, EdgeId), usize> = BTreeMap::new();
        let mut unsorted_uses: BTreeMap<(EdgeId, EdgeId), usize> = BTreeMap::new();
        for sq in &self.squares {
            *sorted_uses.entry((sq.e, sq.f)).or_default() += 1;
            *unsorted_uses.entry((sq.g, sq.h)).or_default() += 1;
        }
        for i in 1..=self.k {
            for j in (i + 1)..=self.k {
                let colors = format!("{i},{j}");
                for (lo, hi, uses) in [(i, j, &sorted_uses), (j, i, &unsorted_uses)] {
                    for (a, x) in self.edges.iter().enumerate() {
                        if x.color != lo {
                            continue;
                        }
                        for &y in &self.in_edges[x.source.0][hi - 1] {
                            let pair = (EdgeId(a), y);
                            let count = uses.get(&pair).copied().unwrap_or(0);
                            if count != 1 {
                                return Err(Error::NotBijective {
                                    colors,
                                    detail: format!(
                                        "composable pair ({},{}) is matched by {} squares",
                                        x.id, self.edges[y.0].id, count
                                    ),
                                });
                            }
                        }
                    }
                }
            }
        }
        for sq in &self.squares {
            self.to_sorted.insert((sq.g, sq.h), (sq.e, sq.f));
            self.to_unsorted.insert((sq.e, sq.f), (sq.g, sq.h));
        }
        Ok(())
    }

    fn check_factorization(&self, depth: usize) -> Result<()> {
        for len in 3..=depth {
            for start in 0..self.vertices.len() {
                let mut stack: Vec<Vec<EdgeId>> = Vec::new();
                for c in 1..=self.k {
                    for &e in &self.in_edges[start][c - 1] {
                        stack.push(vec![e]);
                    }
                }
                while let Some(path) = stack.pop() {
                    if path.len() == len {
                        let first = self.edges[path[0].0].color;
                        let last = self.edges[path[len - 1].0].color;
                        if first != last {
                            self.check_class(&path)?;
                        }
                        continue;
                    }
                    let tail = self.edges[path[path.len() - 1].0].clone();
                    for c in tail.color..=self.k {
                        for &e in &self.in_edges[tail.source.0][c - 1] {
                            let mut next = path.clone();
                            next.push(e);
                            stack.push(next);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Explores the class of a sorted path under square moves in both
    /// directions and checks that each color arrangement occurs exactly once.
    fn check_class(&self, sorted: &[EdgeId]) -> Result<()> {
        let mut seen: BTreeSet<Vec<EdgeId>> = BTreeSet::new();
        let mut by_colors: BTreeMap<Vec<usize>, Vec<EdgeId>> = BTreeMap::new();
        let mut queue = VecDeque::from([sorted.to_vec()]);
        seen.insert(sorted.to_vec());
        while let Some(path) = queue.pop_front() {
            let colors: Vec<usize> = path.iter().map(|e| self.edges[e.0].color).collect();
            if let Some(other) = by_colors.get(&colors) {
                return Err(Error::FactorizationFailure {
                    first: self.edge_names(other),
                    second: self.edge_names(&path),
                });
            }
            by_colors.insert(colors.clone(), path.clone());
            for i in 0..path.len() - 1 {
                if colors[i] == colors[i + 1] {
                    continue;
                }
                let (a, b) = self.swap(path[i], path[i + 1]);
                let mut next = path.clone();
                next[i] = a;
                next[i + 1] = b;
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        Ok(())
    }

    /// Rewrites an adjacent pair of distinct colors by its square.
    fn swap(&self, x: EdgeId, y: EdgeId) -> (EdgeId, EdgeId) {
        let map = if self.edges[x.0].color < self.edges[y.0].color {
            &self.to_unsorted
        } else {
            &self.to_sorted
        };
        map[&(x, y)]
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex_index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.into()))
    }

    pub fn edge_by_name(&self, name: &str) -> Result<EdgeId> {
        self.edge_index.get(name).copied().ok_or_else(|| Error::UnknownEdge(name.into()))
    }

    pub fn edge_names(&self, path: &[EdgeId]) -> Vec<String> {
        path.iter().map(|e| self.edges[e.0].id.clone()).collect()
    }

    pub fn square_names(&self, sq: &Square) -> Vec<String> {
        self.edge_names(&[sq.e, sq.f, sq.g, sq.h])
    }

    /// Edges of a color with the given source (1-based color).
    pub fn edges_out(&self, v: VertexId, color: usize) -> &[EdgeId] {
        &self.out_edges[v.0][color - 1]
    }

    /// Edges of a color with the given range (1-based color).
    pub fn edges_in(&self, v: VertexId, color: usize) -> &[EdgeId] {
        &self.in_edges[v.0][color - 1]
    }

    /// All edges touching `v`, sorted by id, each listed once.
    pub fn incident_edges(&self, v: VertexId) -> Vec<EdgeId> {
        let mut all: Vec<EdgeId> = self.out_edges[v.0]
            .iter()
            .chain(&self.in_edges[v.0])
            .flatten()
            .copied()
            .collect();
        all.sort();
        all.dedup();
        all
    }

    /// Converts back to unvalidated skeleton-plus-squares data.
    pub fn to_parts(&self) -> (Skeleton, SquareTable) {
        let skeleton = Skeleton {
            k: self.k,
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    id: e.id.clone(),
                    color: e.color,
                    source: self.vertices[e.source.0].clone(),
                    range: self.vertices[e.range.0].clone(),
                })
                .collect(),
        };
        let squares = SquareTable {
            squares: self
                .squares
                .iter()
                .map(|sq| {
                    let names = self.square_names(sq);
                    [names[0].clone(), names[1].clone(), names[2].clone(), names[3].clone()]
                })
                .collect(),
        };
        (skeleton, squares)
    }

    pub fn identity(&self, v: VertexId) -> Morphism {
        Morphism { source: v, range: v, edges: Vec::new(), degree: Degree::zero(self.k) }
    }

    /// The color-sorted representative of a nonempty raw path.
    pub fn normal_form(&self, path: &[EdgeId]) -> Result<Morphism> {
        if path.is_empty() {
            return Err(Error::EmptyPath);
        }
        for (i, w) in path.windows(2).enumerate() {
            if self.edges[w[0].0].source != self.edges[w[1].0].range {
                return Err(Error::NotComposable { index: i });
            }
        }
        let mut edges = path.to_vec();
        loop {
            let descent = edges
                .windows(2)
                .position(|w| self.edges[w[0].0].color > self.edges[w[1].0].color);
            match descent {
                Some(i) => {
                    let (a, b) = self.to_sorted[&(edges[i], edges[i + 1])];
                    edges[i] = a;
                    edges[i + 1] = b;
                }
                None => break,
            }
        }
        let mut degree = Degree::zero(self.k);
        for e in &edges {
            degree.0[self.edges[e.0].color - 1] += 1;
        }
        Ok(Morphism {
            range: self.edges[edges[0].0].range,
            source: self.edges[edges[edges.len() - 1].0].source,
            edges,
            degree,
        })
    }

    /// Composition `m1 ∘ m2`; requires `s(m1) = r(m2)`.
    pub fn compose(&self, m1: &Morphism, m2: &Morphism) -> Result<Morphism> {
        if m1.source != m2.range {
            return Err(Error::NotComposable { index: m1.edges.len().saturating_sub(1) });
        }
        if m1.is_identity() {
            return Ok(m2.clone());
        }
        if m2.is_identity() {
            return Ok(m1.clone());
        }
        let mut path = m1.edges.clone();
        path.extend_from_slice(&m2.edges);
        self.normal_form(&path)
    }

    /// The unique `(β, γ)` with `d(β) = n`, `d(γ) = l` and `β∘γ = m`.
    pub fn factor(&self, m: &Morphism, n: &Degree, l: &Degree) -> Result<(Morphism, Morphism)> {
        if n.k() != self.k || l.k() != self.k || &(n + l) != m.degree() {
            return Err(Error::DegreeMismatch(format!(
                "{} + {} != {}",
                n,
                l,
                m.degree()
            )));
        }
        let mut target = n.sorted_colors();
        target.extend(l.sorted_colors());
        let path = self.rearrange(&m.edges, &target);
        let split = n.total();
        let front = if split == 0 {
            self.identity(m.range)
        } else {
            self.normal_form(&path[..split])?
        };
        let back = if split == path.len() {
            self.identity(m.source)
        } else {
            self.normal_form(&path[split..])?
        };
        Ok((front, back))
    }

    /// Moves a path into the given color arrangement using square moves.
    fn rearrange(&self, path: &[EdgeId], target: &[usize]) -> Vec<EdgeId> {
        let mut path = path.to_vec();
        for (i, &color) in target.iter().enumerate() {
            let j = (i..path.len())
                .find(|&j| self.edges[path[j].0].color == color)
                .expect("color multiset matches");
            for pos in (i..j).rev() {
                let (a, b) = self.swap(path[pos], path[pos + 1]);
                path[pos] = a;
                path[pos + 1] = b;
            }
        }
        path
    }

    /// All morphisms of degree `n` with the given endpoint at `v`.
    pub fn morphisms_of_degree(&self, v: VertexId, n: &Degree, direction: Direction) -> Vec<Morphism> {
        if n.total() == 0 {
            return vec![self.identity(v)];
        }
        let colors = n.sorted_colors();
        let len = colors.len();
        let mut results = Vec::new();
        let mut partial: Vec<Vec<EdgeId>> = vec![Vec::new()];
        for step in 0..len {
            let mut next = Vec::new();
            for p in partial {
                match direction {
                    Direction::Range => {
                        let at = p.last().map_or(v, |e| self.edges[e.0].source);
                        for &e in self.edges_in(at, colors[step]) {
                            let mut q = p.clone();
                            q.push(e);
                            next.push(q);
                        }
                    }
                    Direction::Source => {
                        // built back to front, reversed at the end
                        let at = p.last().map_or(v, |e| self.edges[e.0].range);
                        for &e in self.edges_out(at, colors[len - 1 - step]) {
                            let mut q = p.clone();
                            q.push(e);
                            next.push(q);
                        }
                    }
                }
            }
            partial = next;
        }
        for mut p in partial {
            if direction == Direction::Source {
                p.reverse();
            }
            results.push(Morphism {
                range: self.edges[p[0].0].range,
                source: self.edges[p[len - 1].0].source,
                edges: p,
                degree: n.clone(),
            });
        }
        results.sort_by(|a, b| a.edges.cmp(&b.edges));
        results
    }

    /// Component index per vertex of the undirected skeleton, numbered in
    /// order of the least vertex of each component.
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for e in self.incident_edges(VertexId(u)) {
                    let edge = &self.edges[e.0];
                    for w in [edge.source.0, edge.range.0] {
                        if comp[w] == usize::MAX {
                            comp[w] = next;
                            queue.push_back(w);
                        }
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        !self.vertices.is_empty() && self.components().iter().all(|&c| c == 0)
    }

    /// Disjoint union; ids of the second graph get `suffix` appended.
    pub fn disjoint_union(&self, other: &KGraph, suffix: &str) -> Result<KGraph> {
        let (mut skel, mut sq) = self.to_parts();
        let (s2, q2) = other.to_parts();
        if s2.k != skel.k {
            return Err(Error::Malformed("rank mismatch in disjoint union".into()));
        }
        skel.vertices.extend(s2.vertices.iter().map(|v| format!("{v}{suffix}")));
        skel.edges.extend(s2.edges.iter().map(|e| EdgeSpec {
            id: format!("{}{suffix}", e.id),
            color: e.color,
            source: format!("{}{suffix}", e.source),
            range: format!("{}{suffix}", e.range),
        }));
        sq.squares.extend(q2.squares.iter().map(|q| q.clone().map(|x| format!("{x}{suffix}"))));
        validate_kgraph(&skel, &sq)
    }
}

/// A morphism in color-sorted normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    source: VertexId,
    range: VertexId,
    edges: Vec<EdgeId>,
    degree: Degree,
}

impl Morphism {
    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn is_identity(&self) -> bool {
        self.edges.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ids(g: &KGraph, names: &[&str]) -> Vec<EdgeId> {
        names.iter().map(|n| g.edge_by_name(n).unwrap()).collect()
    }

    #[test]
    fn t2_validates_and_sorts() {
        let t2 = fixtures::t2();
        assert_eq!(t2.k(), 2);
        let m = t2.normal_form(&ids(&t2, &["f", "e"])).unwrap();
        assert_eq!(t2.edge_names(m.edges()), ["e", "f"]);
        assert_eq!(m.degree(), &Degree(vec![1, 1]));
    }

    #[test]
    fn ff2_bad_is_not_bijective() {
        let (skel, sq) = fixtures::ff2_bad_parts();
        let err = validate_kgraph(&skel, &sq).unwrap_err();
        assert_eq!(err.name(), "NotBijective");
    }

    #[test]
    fn corrupted_square_is_rejected() {
        let (skel, mut sq) = fixtures::q2().to_parts();
        sq.squares[0] = ["e".into(), "f".into(), "h".into(), "g".into()];
        assert_eq!(validate_kgraph(&skel, &sq).unwrap_err().name(), "BadSquare");
    }

    #[test]
    fn reversed_square_orientation_is_rejected() {
        let (skel, _) = fixtures::t2().to_parts();
        let sq = SquareTable { squares: vec![["f".into(), "e".into(), "e".into(), "f".into()]] };
        assert_eq!(validate_kgraph(&skel, &sq).unwrap_err().name(), "BadSquare");
    }

    #[test]
    fn missing_square_is_not_bijective() {
        let (skel, _) = fixtures::t2().to_parts();
        let err = validate_kgraph(&skel, &SquareTable::default()).unwrap_err();
        assert_eq!(err.name(), "NotBijective");
    }

    #[test]
    fn k_zero_rejected_and_k_one_accepted() {
        let skel = Skeleton { k: 0, vertices: vec!["v".into()], edges: vec![] };
        assert_eq!(validate_kgraph(&skel, &SquareTable::default()).unwrap_err().name(), "Malformed");
        let l1 = fixtures::l1();
        assert_eq!(l1.k(), 1);
        assert!(l1.squares().is_empty());
    }

    #[test]
    fn inconsistent_three_colored_squares_fail_factorization() {
        // Pairwise bijective square tables whose two braid routes disagree.
        let mut edges = Vec::new();
        for (c, names) in [(1, ["a1", "a2"]), (2, ["b1", "b2"]), (3, ["c1", "c2"])] {
            for n in names {
                edges.push(EdgeSpec::new(n, c, "v", "v"));
            }
        }
        let skel = Skeleton { k: 3, vertices: vec!["v".into()], edges };
        let rows = "a1 b1 b2 a2|a1 b2 b1 a1|a2 b1 b2 a1|a2 b2 b1 a2|\
                    a1 c1 c2 a2|a1 c2 c1 a2|a2 c1 c1 a1|a2 c2 c2 a1|\
                    b1 c1 c1 b1|b1 c2 c2 b1|b2 c1 c1 b2|b2 c2 c2 b2";
        let squares = rows
            .split('|')
            .map(|r| {
                let w: Vec<String> = r.split_whitespace().map(String::from).collect();
                [w[0].clone(), w[1].clone(), w[2].clone(), w[3].clone()]
            })
            .collect();
        let sq = SquareTable { squares };
        let err = validate_kgraph(&skel, &sq).unwrap_err();
        assert_eq!(err.name(), "FactorizationFailure");
        // depth 2 skips the triple check
        let shallow = ValidationOptions { factorization_depth: 2 };
        assert!(KGraph::validate_with(&skel, &sq, shallow).is_ok());
    }

    #[test]
    fn factor_splits_in_both_orders() {
        let t2 = fixtures::t2();
        let m = t2.normal_form(&ids(&t2, &["e", "f"])).unwrap();
        let (b, c) = t2.factor(&m, &Degree(vec![1, 0]), &Degree(vec![0, 1])).unwrap();
        assert_eq!(t2.edge_names(b.edges()), ["e"]);
        assert_eq!(t2.edge_names(c.edges()), ["f"]);
        let (b, c) = t2.factor(&m, &Degree(vec![0, 1]), &Degree(vec![1, 0])).unwrap();
        assert_eq!(t2.edge_names(b.edges()), ["f"]);
        assert_eq!(t2.edge_names(c.edges()), ["e"]);
        let (b, c) = t2.factor(&m, m.degree(), &Degree::zero(2)).unwrap();
        assert_eq!(b, m);
        assert!(c.is_identity());
        assert_eq!(
            t2.factor(&m, &Degree(vec![1, 1]), &Degree(vec![1, 0])).unwrap_err().name(),
            "DegreeMismatch"
        );
    }

    #[test]
    fn not_composable_reports_index() {
        let p2 = fixtures::p2();
        let a = p2.edge_by_name("a").unwrap();
        assert_eq!(p2.normal_form(&[a, a]).unwrap_err(), Error::NotComposable { index: 0 });
        assert_eq!(p2.normal_form(&[]).unwrap_err(), Error::EmptyPath);
    }

    #[test]
    fn connectivity() {
        assert!(fixtures::t2().is_connected());
        assert!(fixtures::q2().is_connected());
        let l1 = fixtures::l1();
        assert!(!l1.disjoint_union(&l1, "_2").unwrap().is_connected());
    }
}
