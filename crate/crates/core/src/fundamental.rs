//! Fundamental-group presentations from a spanning tree and the squares,
//! cocycles (functors into groups) and their cohomology.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::kgraph::{Degree, EdgeId, KGraph, Morphism, VertexId};
use crate::skew::FiniteGroupRealization;
use crate::word::{GroupPresentation, GroupWord, Letter};

/// BFS spanning tree of the component of `base`.
///
/// `paths[y]` is the tree path `t_y` from `base` to `y`, written as a word
/// over edge indices in composition order (range `y`, source `base`); an edge
/// traversed against its direction appears inverted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    pub base: VertexId,
    pub tree_edges: Vec<EdgeId>,
    pub paths: Vec<GroupWord>,
}

impl SpanningTree {
    pub fn contains(&self, e: EdgeId) -> bool {
        self.tree_edges.contains(&e)
    }
}

pub fn spanning_tree(g: &KGraph, x: VertexId) -> Result<SpanningTree> {
    if !g.is_connected() {
        return Err(Error::NotConnected(format!("{} vertices in several components", g.vertex_count())));
    }
    let mut paths: Vec<Option<GroupWord>> = vec![None; g.vertex_count()];
    paths[x.0] = Some(GroupWord::identity());
    let mut tree_edges = Vec::new();
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        for a in g.incident_edges(u) {
            let edge = g.edge(a);
            let (other, letter) = if edge.source == u {
                (edge.range, Letter::new(a.0))
            } else {
                (edge.source, Letter::inv(a.0))
            };
            if paths[other.0].is_some() {
                continue;
            }
            let t_u = paths[u.0].clone().unwrap();
            paths[other.0] = Some(GroupWord::from_letters([letter]).mul(&t_u));
            tree_edges.push(a);
            queue.push_back(other);
        }
    }
    Ok(SpanningTree {
        base: x,
        tree_edges,
        paths: paths.into_iter().map(|p| p.expect("graph is connected")).collect(),
    })
}

/// `π(Λ, x)` after eliminating the tree generators.
#[derive(Debug, Clone)]
pub struct FundamentalGroup {
    pub base: VertexId,
    pub tree: SpanningTree,
    pub presentation: GroupPresentation,
    /// Skeleton edge for each presentation generator.
    pub generator_edges: Vec<EdgeId>,
    /// Image of each skeleton edge: empty for tree edges, its generator otherwise.
    pub rho: Vec<GroupWord>,
}

pub fn fundamental_group(g: &KGraph, x: VertexId) -> Result<FundamentalGroup> {
    let tree = spanning_tree(g, x)?;
    let generator_edges: Vec<EdgeId> = g.edge_ids().filter(|&e| !tree.contains(e)).collect();
    let mut rho = vec![GroupWord::identity(); g.edge_count()];
    for (i, &e) in generator_edges.iter().enumerate() {
        rho[e.0] = GroupWord::generator(i);
    }
    let mut relators = Vec::new();
    for sq in g.squares() {
        let r = GroupWord::product([
            &rho[sq.e.0],
            &rho[sq.f.0],
            &rho[sq.h.0].inverse(),
            &rho[sq.g.0].inverse(),
        ]);
        if !r.is_empty() {
            relators.push(r);
        }
    }
    let names = generator_edges.iter().map(|e| g.edge(*e).id.clone()).collect();
    Ok(FundamentalGroup {
        base: x,
        tree,
        presentation: GroupPresentation { generators: names, relators },
        generator_edges,
        rho,
    })
}

/// The presentation before tree elimination: every edge is a generator,
/// tree edges are relators, and each square contributes `e f h⁻¹ g⁻¹`.
pub fn full_presentation(g: &KGraph, x: VertexId) -> Result<GroupPresentation> {
    let tree = spanning_tree(g, x)?;
    let mut relators: Vec<GroupWord> =
        tree.tree_edges.iter().map(|e| GroupWord::generator(e.0)).collect();
    for sq in g.squares() {
        relators.push(GroupWord::from_letters([
            Letter::new(sq.e.0),
            Letter::new(sq.f.0),
            Letter::inv(sq.h.0),
            Letter::inv(sq.g.0),
        ]));
    }
    let names = g.edges().iter().map(|e| e.id.clone()).collect();
    Ok(GroupPresentation { generators: names, relators })
}

/// A functor from a k-graph into a group, given on skeleton edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cocycle {
    /// Values are words in a presented group.
    Presented { group: GroupPresentation, values: Vec<GroupWord> },
    /// Values in `ℤᵏ`, or in `ℤ/m₁ × … × ℤ/m_k` when moduli are given.
    Abelian { moduli: Option<Vec<u64>>, values: Vec<Vec<i64>> },
}

/// Value of a cocycle on a morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Voltage {
    Word(GroupWord),
    Vector(Vec<i64>),
}

impl Cocycle {
    pub fn abelian(moduli: Option<Vec<u64>>, values: Vec<Vec<i64>>) -> Result<Cocycle> {
        let rank = match &moduli {
            Some(m) => {
                if m.iter().any(|&x| x == 0) {
                    return Err(Error::Malformed("moduli must be positive".into()));
                }
                m.len()
            }
            None => values.first().map_or(0, Vec::len),
        };
        if values.iter().any(|v| v.len() != rank) {
            return Err(Error::TargetMismatch("vector length differs from the target rank".into()));
        }
        let values = match &moduli {
            Some(m) => values.into_iter().map(|v| reduce(&v, m)).collect(),
            None => values,
        };
        Ok(Cocycle::Abelian { moduli, values })
    }

    pub fn edge_count(&self) -> usize {
        match self {
            Cocycle::Presented { values, .. } => values.len(),
            Cocycle::Abelian { values, .. } => values.len(),
        }
    }

    /// Value on a single skeleton edge.
    pub fn edge_value(&self, e: EdgeId) -> Voltage {
        match self {
            Cocycle::Presented { values, .. } => Voltage::Word(values[e.0].clone()),
            Cocycle::Abelian { values, .. } => Voltage::Vector(values[e.0].clone()),
        }
    }

    /// The target as a presentation; abelian values become words `c1^v1 … ck^vk`.
    pub fn to_presented(&self) -> Cocycle {
        match self {
            Cocycle::Presented { .. } => self.clone(),
            Cocycle::Abelian { moduli, values } => {
                let rank = moduli.as_ref().map_or_else(|| values.first().map_or(0, Vec::len), Vec::len);
                let group = match moduli {
                    Some(m) => GroupPresentation::finite_abelian(m),
                    None => GroupPresentation::free_abelian(rank),
                };
                let values = values.iter().map(|v| vector_word(v)).collect();
                Cocycle::Presented { group, values }
            }
        }
    }

    /// Functoriality check for `ℤᵏ`-valued and finite abelian cocycles.
    pub fn check_abelian(&self, g: &KGraph) -> Result<()> {
        let Cocycle::Abelian { moduli, values } = self else {
            return Err(Error::TargetMismatch("not an abelian cocycle".into()));
        };
        for sq in g.squares() {
            let lhs: Vec<i64> = values[sq.e.0].iter().zip(&values[sq.f.0]).map(|(a, b)| a + b).collect();
            let rhs: Vec<i64> = values[sq.g.0].iter().zip(&values[sq.h.0]).map(|(a, b)| a + b).collect();
            let (lhs, rhs) = match moduli {
                Some(m) => (reduce(&lhs, m), reduce(&rhs, m)),
                None => (lhs, rhs),
            };
            if lhs != rhs {
                return Err(Error::CocycleInvalid { square: g.square_names(sq) });
            }
        }
        Ok(())
    }
}

fn reduce(v: &[i64], moduli: &[u64]) -> Vec<i64> {
    v.iter().zip(moduli).map(|(&x, &m)| x.rem_euclid(m as i64)).collect()
}

fn vector_word(v: &[i64]) -> GroupWord {
    let parts: Vec<GroupWord> = v.iter().enumerate().map(|(i, &n)| GroupWord::power(i, n)).collect();
    GroupWord::product(&parts)
}

/// `η(a) = t_{r(a)}⁻¹ a t_{s(a)}`, expressed in the generators of `π(Λ, x)`.
pub fn canonical_cocycle(g: &KGraph, x: VertexId) -> Result<Cocycle> {
    let fg = fundamental_group(g, x)?;
    let through_rho = |w: &GroupWord| w.substitute(|e| fg.rho[e].clone());
    let values = g
        .edge_ids()
        .map(|a| {
            let edge = g.edge(a);
            GroupWord::product([
                &through_rho(&fg.tree.paths[edge.range.0]).inverse(),
                &fg.rho[a.0],
                &through_rho(&fg.tree.paths[edge.source.0]),
            ])
        })
        .collect();
    Ok(Cocycle::Presented { group: fg.presentation, values })
}

/// Product of the cocycle over the morphism's edges in composition order.
pub fn eval_cocycle(c: &Cocycle, m: &Morphism) -> Voltage {
    match c {
        Cocycle::Presented { values, .. } => {
            Voltage::Word(GroupWord::product(m.edges().iter().map(|e| &values[e.0])))
        }
        Cocycle::Abelian { moduli, values } => {
            let rank = moduli.as_ref().map_or_else(|| values.first().map_or(0, Vec::len), Vec::len);
            let mut sum = vec![0i64; rank];
            for e in m.edges() {
                for (s, v) in sum.iter_mut().zip(&values[e.0]) {
                    *s += v;
                }
            }
            Voltage::Vector(match moduli {
                Some(m) => reduce(&sum, m),
                None => sum,
            })
        }
    }
}

/// The degree functor as a `ℤᵏ` cocycle, optionally reduced modulo `moduli`.
pub fn degree_cocycle(g: &KGraph, moduli: Option<Vec<u64>>) -> Result<Cocycle> {
    let values = g
        .edges()
        .iter()
        .map(|e| Degree::basis(g.k(), e.color).0.into_iter().map(i64::from).collect())
        .collect();
    Cocycle::abelian(moduli, values)
}

/// Searches for `τ: Λ⁰ → G` with `τ_{r(a)} η(a) = κ(a) τ_{s(a)}` on every edge.
///
/// Each component is handled separately: `τ` at the least vertex runs over
/// the group in element order and is propagated along a BFS tree.
pub fn are_cohomologous(
    g: &KGraph,
    eta: &Cocycle,
    kappa: &Cocycle,
    realization: &FiniteGroupRealization,
) -> Result<Option<Vec<usize>>> {
    let eta = realization.voltages(eta)?;
    let kappa = realization.voltages(kappa)?;
    if eta.len() != g.edge_count() || kappa.len() != g.edge_count() {
        return Err(Error::TargetMismatch("cocycle edge count differs from the graph".into()));
    }
    let comps = g.components();
    let mut tau = vec![usize::MAX; g.vertex_count()];
    let ncomp = comps.iter().copied().max().map_or(0, |m| m + 1);
    for comp in 0..ncomp {
        let root = comps.iter().position(|&c| c == comp).unwrap();
        let members: Vec<usize> = (0..g.vertex_count()).filter(|&v| comps[v] == comp).collect();
        let mut found = false;
        for start in 0..realization.order() {
            for &v in &members {
                tau[v] = usize::MAX;
            }
            tau[root] = start;
            let mut queue = VecDeque::from([VertexId(root)]);
            let mut ok = true;
            'bfs: while let Some(u) = queue.pop_front() {
                for a in g.incident_edges(u) {
                    let edge = g.edge(a);
                    let (s, r) = (edge.source.0, edge.range.0);
                    let want_r = |ts: usize| {
                        realization.mul(realization.mul(kappa[a.0], ts), realization.inverse(eta[a.0]))
                    };
                    if tau[s] != usize::MAX && tau[r] == usize::MAX {
                        tau[r] = want_r(tau[s]);
                        queue.push_back(VertexId(r));
                    } else if tau[r] != usize::MAX && tau[s] == usize::MAX {
                        tau[s] = realization.mul(
                            realization.mul(realization.inverse(kappa[a.0]), tau[r]),
                            eta[a.0],
                        );
                        queue.push_back(VertexId(s));
                    } else if want_r(tau[s]) != tau[r] {
                        ok = false;
                        break 'bfs;
                    }
                }
            }
            if ok {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(None);
        }
    }
    Ok(Some(tau))
}
