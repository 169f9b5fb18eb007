//! Covering maps, groupoid actions, stabilizer subgroups, covering
//! morphisms, deck groups and quotients by free actions.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use crate::enumeration::CosetTable;
use crate::error::{Error, Result};
use crate::fundamental::fundamental_group;
use crate::kgraph::{validate_kgraph, EdgeId, EdgeSpec, KGraph, Skeleton, SquareTable, VertexId};
use crate::word::{GroupPresentation, GroupWord};

/// A validated covering `p: Ω → Λ`.
#[derive(Debug, Clone)]
pub struct CoveringMap {
    domain: Arc<KGraph>,
    codomain: Arc<KGraph>,
    vertex_map: Vec<VertexId>,
    edge_map: Vec<EdgeId>,
    fibers: Vec<Vec<VertexId>>,
    lift_source: HashMap<(VertexId, EdgeId), EdgeId>,
    lift_range: HashMap<(VertexId, EdgeId), EdgeId>,
}

/// Checks that the maps define a covering: functorial on the skeleton,
/// locally bijective at every vertex and color, surjective, and sending
/// squares to squares.
pub fn check_covering(
    domain: Arc<KGraph>,
    codomain: Arc<KGraph>,
    vertex_map: Vec<VertexId>,
    edge_map: Vec<EdgeId>,
) -> Result<CoveringMap> {
    if vertex_map.len() != domain.vertex_count() || edge_map.len() != domain.edge_count() {
        return Err(Error::Malformed("covering maps must be total on the domain".into()));
    }
    if vertex_map.iter().any(|v| v.0 >= codomain.vertex_count())
        || edge_map.iter().any(|e| e.0 >= codomain.edge_count())
    {
        return Err(Error::Malformed("covering maps point outside the codomain".into()));
    }
    if domain.k() != codomain.k() {
        return Err(Error::NotFunctorial(format!("rank {} maps to rank {}", domain.k(), codomain.k())));
    }
    for e in domain.edge_ids() {
        let (de, ce) = (domain.edge(e), codomain.edge(edge_map[e.0]));
        if de.color != ce.color
            || vertex_map[de.source.0] != ce.source
            || vertex_map[de.range.0] != ce.range
        {
            return Err(Error::NotFunctorial(format!("edge {} maps to {}", de.id, ce.id)));
        }
    }
    let mut lift_source = HashMap::new();
    let mut lift_range = HashMap::new();
    for w in domain.vertex_ids() {
        let x = vertex_map[w.0];
        for color in 1..=domain.k() {
            for (direction, up, down, table) in [
                ("out", domain.edges_out(w, color), codomain.edges_out(x, color), &mut lift_source),
                ("in", domain.edges_in(w, color), codomain.edges_in(x, color), &mut lift_range),
            ] {
                for &e in up {
                    if table.insert((w, edge_map[e.0]), e).is_some() {
                        return Err(Error::NotLocallyInjective {
                            vertex: domain.vertex_name(w).into(),
                            color,
                            direction,
                        });
                    }
                }
                if down.iter().any(|a| !table.contains_key(&(w, *a))) {
                    return Err(Error::NotLocallySurjective {
                        vertex: domain.vertex_name(w).into(),
                        color,
                        direction,
                    });
                }
            }
        }
    }
    let mut fibers = vec![Vec::new(); codomain.vertex_count()];
    for w in domain.vertex_ids() {
        fibers[vertex_map[w.0].0].push(w);
    }
    if let Some(x) = codomain.vertex_ids().find(|x| fibers[x.0].is_empty()) {
        return Err(Error::NotSurjective(format!("vertex {} has an empty fiber", codomain.vertex_name(x))));
    }
    let image: BTreeSet<_> = codomain.squares().iter().copied().collect();
    for sq in domain.squares() {
        let mapped = crate::kgraph::Square {
            e: edge_map[sq.e.0],
            f: edge_map[sq.f.0],
            g: edge_map[sq.g.0],
            h: edge_map[sq.h.0],
        };
        if !image.contains(&mapped) {
            return Err(Error::SquareBroken { square: domain.square_names(sq) });
        }
    }
    Ok(CoveringMap { domain, codomain, vertex_map, edge_map, fibers, lift_source, lift_range })
}

impl CoveringMap {
    pub fn domain(&self) -> &Arc<KGraph> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<KGraph> {
        &self.codomain
    }

    pub fn vertex_image(&self, w: VertexId) -> VertexId {
        self.vertex_map[w.0]
    }

    pub fn edge_image(&self, e: EdgeId) -> EdgeId {
        self.edge_map[e.0]
    }

    pub fn vertex_map(&self) -> &[VertexId] {
        &self.vertex_map
    }

    pub fn edge_map(&self) -> &[EdgeId] {
        &self.edge_map
    }

    /// Domain vertices over `x`, in index order.
    pub fn fiber(&self, x: VertexId) -> &[VertexId] {
        &self.fibers[x.0]
    }

    /// The unique lift of `a` with source `w`.
    pub fn lift_from_source(&self, w: VertexId, a: EdgeId) -> Option<EdgeId> {
        self.lift_source.get(&(w, a)).copied()
    }

    /// The unique lift of `a` with range `w`.
    pub fn lift_to_range(&self, w: VertexId, a: EdgeId) -> Option<EdgeId> {
        self.lift_range.get(&(w, a)).copied()
    }

    /// Sheet count when every fiber has the same size.
    pub fn sheets(&self) -> Option<usize> {
        let n = self.fibers.first()?.len();
        self.fibers.iter().all(|f| f.len() == n).then_some(n)
    }

    /// Checks unique path lifting directly: every normal-form path of total
    /// degree at most `max_total` ending at `p(w)` lifts to exactly one path
    /// ending at `w`. Quadratic in path counts; meant for tests.
    pub fn path_lifting_holds(&self, max_total: usize) -> bool {
        for w in self.domain.vertex_ids() {
            let x = self.vertex_image(w);
            for deg in degrees_up_to(self.domain.k(), max_total) {
                let below = self.codomain.morphisms_of_degree(x, &deg, crate::kgraph::Direction::Range);
                let above = self.domain.morphisms_of_degree(w, &deg, crate::kgraph::Direction::Range);
                if below.len() != above.len() {
                    return false;
                }
                let mut images: Vec<Vec<EdgeId>> = above
                    .iter()
                    .map(|m| m.edges().iter().map(|e| self.edge_image(*e)).collect())
                    .collect();
                images.sort();
                let expected: Vec<Vec<EdgeId>> = below.iter().map(|m| m.edges().to_vec()).collect();
                if images != expected {
                    return false;
                }
            }
        }
        true
    }
}

fn degrees_up_to(k: usize, max_total: usize) -> Vec<crate::kgraph::Degree> {
    let mut out = vec![crate::kgraph::Degree::zero(k)];
    let mut frontier = out.clone();
    for _ in 0..max_total {
        let mut next = BTreeSet::new();
        for d in &frontier {
            for c in 1..=k {
                next.insert(d + &crate::kgraph::Degree::basis(k, c));
            }
        }
        frontier = next.into_iter().collect();
        out.extend(frontier.iter().cloned());
    }
    out.retain(|d| d.total() > 0);
    out
}

/// A left action of the path groupoid of `Λ` on finite fibers: edge `a` maps
/// the fiber over `s(a)` bijectively onto the fiber over `r(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidAction {
    base: Arc<KGraph>,
    fibers: Vec<Vec<String>>,
    act: Vec<Vec<usize>>,
}

impl GroupoidAction {
    /// `act[a][i]` is the image in the fiber over `r(a)` of point `i` of the
    /// fiber over `s(a)`. Checks bijectivity and the square relations.
    pub fn new(base: Arc<KGraph>, fibers: Vec<Vec<String>>, act: Vec<Vec<usize>>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidAction(m));
        if fibers.len() != base.vertex_count() || act.len() != base.edge_count() {
            return bad("one fiber per vertex and one bijection per edge required".into());
        }
        let mut names = BTreeSet::new();
        for f in &fibers {
            for n in f {
                if !names.insert(n) {
                    return bad(format!("fiber point {n} appears twice"));
                }
            }
        }
        for a in base.edge_ids() {
            let e = base.edge(a);
            let (from, to) = (fibers[e.source.0].len(), fibers[e.range.0].len());
            let mut seen = vec![false; to];
            if act[a.0].len() != from || from != to {
                return bad(format!("edge {} is not a bijection between fibers", e.id));
            }
            for &j in &act[a.0] {
                if j >= to || std::mem::replace(&mut seen[j], true) {
                    return bad(format!("edge {} is not a bijection between fibers", e.id));
                }
            }
        }
        for sq in base.squares() {
            let n = fibers[base.edge(sq.h).source.0].len();
            for i in 0..n {
                let left = act[sq.e.0][act[sq.f.0][i]];
                let right = act[sq.g.0][act[sq.h.0][i]];
                if left != right {
                    return bad(format!("square ({}) fails on {}", base.square_names(sq).join(","), fibers[base.edge(sq.h).source.0][i]));
                }
            }
        }
        Ok(GroupoidAction { base, fibers, act })
    }

    pub fn base(&self) -> &Arc<KGraph> {
        &self.base
    }

    pub fn fiber(&self, x: VertexId) -> &[String] {
        &self.fibers[x.0]
    }

    pub fn apply(&self, a: EdgeId, i: usize) -> usize {
        self.act[a.0][i]
    }

    pub fn apply_inverse(&self, a: EdgeId, j: usize) -> usize {
        self.act[a.0].iter().position(|&i| i == j).expect("action is bijective")
    }
}

/// The action on fibers by unique lifting: `a·w = r(lift of a at w)`.
pub fn covering_to_action(p: &CoveringMap) -> GroupoidAction {
    let base = p.codomain.clone();
    let position: HashMap<VertexId, usize> = p
        .fibers
        .iter()
        .flat_map(|f| f.iter().enumerate().map(|(i, w)| (*w, i)))
        .collect();
    let fibers = p
        .fibers
        .iter()
        .map(|f| f.iter().map(|w| p.domain.vertex_name(*w).to_string()).collect())
        .collect();
    let act = base
        .edge_ids()
        .map(|a| {
            p.fibers[base.edge(a).source.0]
                .iter()
                .map(|&w| position[&p.domain.edge(p.lift_from_source(w, a).unwrap()).range])
                .collect()
        })
        .collect();
    GroupoidAction { base, fibers, act }
}

/// The action covering: vertices `x@v` for `v` in the fiber over `x`, and
/// edges `a@v` from `(s(a), v)` to `(r(a), a·v)`.
pub fn action_to_covering(action: &GroupoidAction) -> Result<CoveringMap> {
    let base = &action.base;
    let tag = |x: &str, v: &str| format!("{x}@{v}");
    let mut skeleton = Skeleton { k: base.k(), vertices: Vec::new(), edges: Vec::new() };
    for x in base.vertex_ids() {
        for v in &action.fibers[x.0] {
            skeleton.vertices.push(tag(base.vertex_name(x), v));
        }
    }
    let mut edge_names = Vec::new();
    for a in base.edge_ids() {
        let e = base.edge(a);
        for (i, v) in action.fibers[e.source.0].iter().enumerate() {
            let target = &action.fibers[e.range.0][action.act[a.0][i]];
            skeleton.edges.push(EdgeSpec {
                id: tag(&e.id, v),
                color: e.color,
                source: tag(base.vertex_name(e.source), v),
                range: tag(base.vertex_name(e.range), target),
            });
            edge_names.push((a, tag(&e.id, v)));
        }
    }
    let mut squares = SquareTable::default();
    for sq in base.squares() {
        let names = base.square_names(sq);
        let hs = base.edge(sq.h).source;
        let point = |a: EdgeId, i: usize| &action.fibers[base.edge(a).source.0][i];
        for (i, v) in action.fibers[hs.0].iter().enumerate() {
            squares.squares.push([
                tag(&names[0], point(sq.e, action.act[sq.f.0][i])),
                tag(&names[1], v),
                tag(&names[2], point(sq.g, action.act[sq.h.0][i])),
                tag(&names[3], v),
            ]);
        }
    }
    let domain = Arc::new(validate_kgraph(&skeleton, &squares)?);
    let mut vmap = vec![VertexId(0); domain.vertex_count()];
    for x in base.vertex_ids() {
        for v in &action.fibers[x.0] {
            vmap[domain.vertex(&tag(base.vertex_name(x), v))?.0] = x;
        }
    }
    let mut emap = vec![EdgeId(0); domain.edge_count()];
    for (a, name) in edge_names {
        emap[domain.edge_by_name(&name)?.0] = a;
    }
    check_covering(domain, base.clone(), vmap, emap)
}

/// Whether every fiber point can be reached from every other.
pub fn is_transitive(action: &GroupoidAction) -> bool {
    let offsets: Vec<usize> = action
        .fibers
        .iter()
        .scan(0, |acc, f| {
            let o = *acc;
            *acc += f.len();
            Some(o)
        })
        .collect();
    let total: usize = action.fibers.iter().map(Vec::len).sum();
    if total == 0 {
        return true;
    }
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let mut groups = total;
    for a in action.base.edge_ids() {
        let e = action.base.edge(a);
        for (i, &j) in action.act[a.0].iter().enumerate() {
            let (u, v) = (find(&mut parent, offsets[e.source.0] + i), find(&mut parent, offsets[e.range.0] + j));
            if u != v {
                parent[u] = v;
                groups -= 1;
            }
        }
    }
    groups == 1
}

/// A subgroup of a presented group, given by generators and, once
/// enumerated, by its standardized coset table.
#[derive(Debug, Clone)]
pub struct SubgroupData {
    pub ambient: GroupPresentation,
    pub generators: Vec<GroupWord>,
    pub table: Option<CosetTable>,
}

/// The stabilizer of `v` in `π(Λ, p(v))` under the right action on the fiber.
///
/// The returned table is the fiber itself as a right coset space, numbered
/// from `v`.
pub fn stabilizer_subgroup(p: &CoveringMap, v: VertexId) -> Result<SubgroupData> {
    if !p.domain.is_connected() {
        return Err(Error::NotConnected("stabilizers need a connected covering".into()));
    }
    let g = &p.codomain;
    let x = p.vertex_image(v);
    let fg = fundamental_group(g, x)?;
    let fiber = p.fiber(x);
    let position: HashMap<VertexId, usize> = fiber.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    let walk = |w: VertexId, word: &GroupWord| -> VertexId {
        word.letters().iter().rev().fold(w, |w, l| {
            let a = EdgeId(l.gen);
            if l.inverse {
                p.domain.edge(p.lift_to_range(w, a).expect("covering lifts edges")).source
            } else {
                p.domain.edge(p.lift_from_source(w, a).expect("covering lifts edges")).range
            }
        })
    };
    let paths = &fg.tree.paths;
    let mut rows = vec![Vec::with_capacity(2 * fg.generator_edges.len()); fiber.len()];
    for &a in &fg.generator_edges {
        let e = g.edge(a);
        // right action of the generator is the left action of its inverse
        let back = GroupWord::product([
            &paths[e.source.0].inverse(),
            &GroupWord::generator(a.0).inverse(),
            &paths[e.range.0],
        ]);
        let forth = back.inverse();
        for (i, &w) in fiber.iter().enumerate() {
            rows[i].push(position[&walk(w, &back)]);
            rows[i].push(position[&walk(w, &forth)]);
        }
    }
    let table = CosetTable::from_permutations(fg.generator_edges.len(), rows, position[&v])?;
    Ok(SubgroupData {
        ambient: fg.presentation,
        generators: table.schreier_generators(),
        table: Some(table),
    })
}

/// A morphism of coverings over the same base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringMorphism {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl CoveringMorphism {
    /// Checks that the maps commute with the projections and preserve
    /// endpoints, colors and squares.
    pub fn new(p: &CoveringMap, q: &CoveringMap, vertices: Vec<VertexId>, edges: Vec<EdgeId>) -> Result<Self> {
        let (s, t) = (&p.domain, &q.domain);
        if vertices.len() != s.vertex_count() || edges.len() != s.edge_count() {
            return Err(Error::Malformed("morphism maps must be total".into()));
        }
        for w in s.vertex_ids() {
            if q.vertex_image(vertices[w.0]) != p.vertex_image(w) {
                return Err(Error::NotFunctorial(format!("vertex {} changes its image", s.vertex_name(w))));
            }
        }
        for e in s.edge_ids() {
            let (a, b) = (s.edge(e), t.edge(edges[e.0]));
            if q.edge_image(edges[e.0]) != p.edge_image(e)
                || vertices[a.source.0] != b.source
                || vertices[a.range.0] != b.range
            {
                return Err(Error::NotFunctorial(format!("edge {} maps to {}", a.id, b.id)));
            }
        }
        let target: BTreeSet<_> = t.squares().iter().copied().collect();
        for sq in s.squares() {
            let m = crate::kgraph::Square { e: edges[sq.e.0], f: edges[sq.f.0], g: edges[sq.g.0], h: edges[sq.h.0] };
            if !target.contains(&m) {
                return Err(Error::SquareBroken { square: s.square_names(sq) });
            }
        }
        Ok(CoveringMorphism { vertices, edges })
    }

    pub fn is_bijective(&self) -> bool {
        let distinct_v: BTreeSet<_> = self.vertices.iter().collect();
        let distinct_e: BTreeSet<_> = self.edges.iter().collect();
        distinct_v.len() == self.vertices.len() && distinct_e.len() == self.edges.len()
    }
}

fn same_base(p: &CoveringMap, q: &CoveringMap) -> Result<()> {
    if Arc::ptr_eq(&p.codomain, &q.codomain) || p.codomain == q.codomain {
        Ok(())
    } else {
        Err(Error::BasepointMismatch("coverings have different bases".into()))
    }
}

/// The unique morphism `p → q` sending `v` to `u`, if one exists.
pub fn covering_morphism(
    p: &CoveringMap,
    q: &CoveringMap,
    v: VertexId,
    u: VertexId,
) -> Result<Option<CoveringMorphism>> {
    same_base(p, q)?;
    if p.vertex_image(v) != q.vertex_image(u) {
        return Err(Error::BasepointMismatch(format!(
            "{} and {} lie over different vertices",
            p.domain.vertex_name(v),
            q.domain.vertex_name(u)
        )));
    }
    if !p.domain.is_connected() {
        return Err(Error::NotConnected("morphisms are determined only on connected coverings".into()));
    }
    let Some((vmap, emap)) = propagate(p, q, v, u) else { return Ok(None) };
    let vertices = vmap.into_iter().map(Option::unwrap).collect();
    let edges = emap.into_iter().map(Option::unwrap).collect();
    Ok(Some(CoveringMorphism::new(p, q, vertices, edges)?))
}

type PartialMaps = (Vec<Option<VertexId>>, Vec<Option<EdgeId>>);

/// Extends `v ↦ u` over the component of `v` by unique lifting; `None` when
/// two routes disagree.
fn propagate(p: &CoveringMap, q: &CoveringMap, v: VertexId, u: VertexId) -> Option<PartialMaps> {
    let s = &p.domain;
    let mut vmap: Vec<Option<VertexId>> = vec![None; s.vertex_count()];
    let mut emap: Vec<Option<EdgeId>> = vec![None; s.edge_count()];
    vmap[v.0] = Some(u);
    let mut queue = VecDeque::from([v]);
    while let Some(w) = queue.pop_front() {
        let image = vmap[w.0].unwrap();
        for lambda in s.incident_edges(w) {
            let edge = s.edge(lambda);
            let a = p.edge_image(lambda);
            let (mu, far, far_image) = if edge.source == w {
                let mu = q.lift_from_source(image, a).expect("covering lifts edges");
                (mu, edge.range, q.domain.edge(mu).range)
            } else {
                let mu = q.lift_to_range(image, a).expect("covering lifts edges");
                (mu, edge.source, q.domain.edge(mu).source)
            };
            match emap[lambda.0] {
                Some(prev) if prev != mu => return None,
                _ => emap[lambda.0] = Some(mu),
            }
            match vmap[far.0] {
                Some(prev) if prev != far_image => return None,
                Some(_) => {}
                None => {
                    vmap[far.0] = Some(far_image);
                    queue.push_back(far);
                }
            }
        }
    }
    Some((vmap, emap))
}

/// An isomorphism of coverings `p ≅ q`, if one exists. Disconnected
/// coverings are matched component by component.
pub fn are_isomorphic_coverings(p: &CoveringMap, q: &CoveringMap) -> Result<Option<CoveringMorphism>> {
    same_base(p, q)?;
    let (s, t) = (&p.domain, &q.domain);
    if s.vertex_count() != t.vertex_count() || s.edge_count() != t.edge_count() {
        return Ok(None);
    }
    let (pc, qc) = (s.components(), t.components());
    let mut q_used = vec![false; qc.iter().max().map_or(0, |m| m + 1)];
    let mut vertices = vec![VertexId(0); s.vertex_count()];
    let mut edges = vec![EdgeId(0); s.edge_count()];
    let mut done = vec![false; pc.iter().max().map_or(0, |m| m + 1)];
    for v in s.vertex_ids() {
        if std::mem::replace(&mut done[pc[v.0]], true) {
            continue;
        }
        let size = pc.iter().filter(|&&c| c == pc[v.0]).count();
        let mut matched = false;
        for &u in q.fiber(p.vertex_image(v)) {
            let d = qc[u.0];
            if q_used[d] || qc.iter().filter(|&&c| c == d).count() != size {
                continue;
            }
            let Some((vm, em)) = propagate(p, q, v, u) else { continue };
            let image: BTreeSet<VertexId> = vm.iter().flatten().copied().collect();
            if image.len() != size {
                continue;
            }
            for (w, x) in vm.iter().enumerate() {
                if let Some(x) = x {
                    vertices[w] = *x;
                }
            }
            for (e, x) in em.iter().enumerate() {
                if let Some(x) = x {
                    edges[e] = *x;
                }
            }
            q_used[d] = true;
            matched = true;
            break;
        }
        if !matched {
            return Ok(None);
        }
    }
    let m = CoveringMorphism::new(p, q, vertices, edges)?;
    Ok(m.is_bijective().then_some(m))
}

/// A k-graph automorphism given on vertices and edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Automorphism {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Automorphism {
    pub fn identity(g: &KGraph) -> Self {
        Automorphism { vertices: g.vertex_ids().collect(), edges: g.edge_ids().collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.vertices.iter().enumerate().all(|(i, v)| v.0 == i)
            && self.edges.iter().enumerate().all(|(i, e)| e.0 == i)
    }

    /// Apply `self`, then `other`.
    pub fn then(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            vertices: self.vertices.iter().map(|v| other.vertices[v.0]).collect(),
            edges: self.edges.iter().map(|e| other.edges[e.0]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut vertices = self.vertices.clone();
        let mut edges = self.edges.clone();
        for (i, v) in self.vertices.iter().enumerate() {
            vertices[v.0] = VertexId(i);
        }
        for (i, e) in self.edges.iter().enumerate() {
            edges[e.0] = EdgeId(i);
        }
        Automorphism { vertices, edges }
    }

    /// Checks bijectivity and preservation of colors, endpoints and squares.
    pub fn check(&self, g: &KGraph) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidAction(m));
        let distinct_v: BTreeSet<_> = self.vertices.iter().collect();
        let distinct_e: BTreeSet<_> = self.edges.iter().collect();
        if self.vertices.len() != g.vertex_count()
            || self.edges.len() != g.edge_count()
            || distinct_v.len() != g.vertex_count()
            || distinct_e.len() != g.edge_count()
            || self.vertices.iter().any(|v| v.0 >= g.vertex_count())
            || self.edges.iter().any(|e| e.0 >= g.edge_count())
        {
            return bad("automorphism is not a bijection".into());
        }
        for e in g.edge_ids() {
            let (a, b) = (g.edge(e), g.edge(self.edges[e.0]));
            if a.color != b.color || self.vertices[a.source.0] != b.source || self.vertices[a.range.0] != b.range {
                return bad(format!("edge {} maps to {}", a.id, b.id));
            }
        }
        let squares: BTreeSet<_> = g.squares().iter().copied().collect();
        for sq in g.squares() {
            let m = crate::kgraph::Square {
                e: self.edges[sq.e.0],
                f: self.edges[sq.f.0],
                g: self.edges[sq.g.0],
                h: self.edges[sq.h.0],
            };
            if !squares.contains(&m) {
                return bad(format!("square ({}) has no image", g.square_names(sq).join(",")));
            }
        }
        Ok(())
    }
}

/// Covering automorphisms of a connected covering, identity first.
#[derive(Debug, Clone)]
pub struct DeckGroup {
    pub elements: Vec<Automorphism>,
    /// Fiber size over the base vertex used for the search.
    pub fiber_size: usize,
}

impl DeckGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Whether the deck group acts transitively on fibers (a normal covering).
    pub fn is_transitive(&self) -> bool {
        self.elements.len() == self.fiber_size
    }

    /// `table[i][j]` is the index of "apply `i`, then `j`".
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        let index: HashMap<&Automorphism, usize> = self.elements.iter().enumerate().map(|(i, a)| (a, i)).collect();
        self.elements
            .iter()
            .map(|a| self.elements.iter().map(|b| index[&a.then(b)]).collect())
            .collect()
    }
}

pub fn deck_group(p: &CoveringMap) -> Result<DeckGroup> {
    if !p.domain.is_connected() {
        return Err(Error::NotConnected("deck groups need a connected covering".into()));
    }
    let v = VertexId(0);
    let fiber = p.fiber(p.vertex_image(v));
    let mut elements = Vec::new();
    for &u in fiber {
        if let Some(m) = covering_morphism(p, p, v, u)? {
            if m.is_bijective() {
                elements.push(Automorphism { vertices: m.vertices, edges: m.edges });
            }
        }
    }
    debug_assert!(elements.first().is_some_and(Automorphism::is_identity));
    Ok(DeckGroup { elements, fiber_size: fiber.len() })
}

/// `Ω/G` with its orbit covering.
#[derive(Debug, Clone)]
pub struct QuotientResult {
    pub quotient: Arc<KGraph>,
    /// The orbit map `Ω → Ω/G`.
    pub orbit_map: CoveringMap,
    /// Least vertex of each orbit, indexed by quotient vertex; quotient
    /// vertices carry the names of these representatives.
    pub representatives: Vec<VertexId>,
}

/// Quotient of `Ω` by a finite group of automorphisms acting freely on
/// vertices. The list must be closed under composition and contain the
/// identity.
pub fn quotient(omega: &Arc<KGraph>, group: &[Automorphism]) -> Result<QuotientResult> {
    for a in group {
        a.check(omega)?;
    }
    let members: BTreeSet<&Automorphism> = group.iter().collect();
    if !group.iter().any(Automorphism::is_identity) {
        return Err(Error::NotClosed("the identity is missing".into()));
    }
    for a in group {
        for b in group {
            if !members.contains(&a.then(b)) {
                return Err(Error::NotClosed("the automorphisms are not closed under composition".into()));
            }
        }
    }
    for a in group.iter().filter(|a| !a.is_identity()) {
        if let Some(w) = omega.vertex_ids().find(|w| a.vertices[w.0] == *w) {
            return Err(Error::NotFree(omega.vertex_name(w).into()));
        }
    }
    let vertex_rep: Vec<VertexId> =
        omega.vertex_ids().map(|w| group.iter().map(|a| a.vertices[w.0]).min().unwrap()).collect();
    let edge_rep: Vec<EdgeId> =
        omega.edge_ids().map(|e| group.iter().map(|a| a.edges[e.0]).min().unwrap()).collect();
    let representatives: Vec<VertexId> = omega.vertex_ids().filter(|w| vertex_rep[w.0] == *w).collect();

    let vname = |w: VertexId| omega.vertex_name(vertex_rep[w.0]).to_string();
    let ename = |e: EdgeId| omega.edge(edge_rep[e.0]).id.clone();
    let skeleton = Skeleton {
        k: omega.k(),
        vertices: representatives.iter().map(|w| omega.vertex_name(*w).to_string()).collect(),
        edges: omega
            .edge_ids()
            .filter(|e| edge_rep[e.0] == *e)
            .map(|e| {
                let edge = omega.edge(e);
                EdgeSpec { id: edge.id.clone(), color: edge.color, source: vname(edge.source), range: vname(edge.range) }
            })
            .collect(),
    };
    let squares: BTreeSet<[String; 4]> = omega
        .squares()
        .iter()
        .map(|sq| [ename(sq.e), ename(sq.f), ename(sq.g), ename(sq.h)])
        .collect();
    let quotient = Arc::new(validate_kgraph(&skeleton, &SquareTable { squares: squares.into_iter().collect() })?);
    let vmap = omega.vertex_ids().map(|w| quotient.vertex(&vname(w))).collect::<Result<Vec<_>>>()?;
    let emap = omega.edge_ids().map(|e| quotient.edge_by_name(&ename(e))).collect::<Result<Vec<_>>>()?;
    let orbit_map = check_covering(omega.clone(), quotient.clone(), vmap, emap)?;
    Ok(QuotientResult { quotient, orbit_map, representatives })
}

/// The covering `Ω/G → Λ` induced by a covering `p` whose deck group
/// contains `group`.
pub fn quotient_covering(p: &CoveringMap, group: &[Automorphism]) -> Result<(QuotientResult, CoveringMap)> {
    for a in group {
        let moves = p.domain.vertex_ids().any(|w| p.vertex_image(a.vertices[w.0]) != p.vertex_image(w))
            || p.domain.edge_ids().any(|e| p.edge_image(a.edges[e.0]) != p.edge_image(e));
        if moves {
            return Err(Error::InvalidAction("automorphism does not commute with the covering".into()));
        }
    }
    let q = quotient(&p.domain, group)?;
    let vmap = q.representatives.iter().map(|w| p.vertex_image(*w)).collect();
    let mut emap = vec![EdgeId(0); q.quotient.edge_count()];
    for e in p.domain.edge_ids() {
        emap[q.orbit_map.edge_image(e).0] = p.edge_image(e);
    }
    let induced = check_covering(q.quotient.clone(), p.codomain.clone(), vmap, emap)?;
    Ok((q, induced))
}
