//! Skew products, relative skew products, universal covers, the
//! Gross–Tucker reconstruction of free actions, and the k-tree test.
//!
//! Skew-product vertices are named `x@g` and edges `a@g`, where `g` is a
//! group element (or coset) index.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coverings::{
    check_covering, quotient, Automorphism, CoveringMap, CoveringMorphism, QuotientResult,
    SubgroupData,
};
use crate::enumeration::{todd_coxeter, CosetTable};
use crate::error::{Error, Result};
use crate::fundamental::{canonical_cocycle, fundamental_group, Cocycle};
use crate::kgraph::{validate_kgraph, EdgeSpec, KGraph, Skeleton, SquareTable, VertexId};
use crate::word::{GroupPresentation, GroupWord, Letter};

const CAYLEY_LIMIT: usize = 1024;

/// A finite group carried by the complete coset table of the trivial
/// subgroup; elements are coset indices and 0 is the identity.
#[derive(Debug, Clone)]
pub struct FiniteGroupRealization {
    presentation: GroupPresentation,
    table: CosetTable,
    elements: Vec<GroupWord>,
    cayley: Option<Vec<Vec<usize>>>,
    inverses: Vec<usize>,
}

impl FiniteGroupRealization {
    pub fn from_presentation(p: &GroupPresentation, max_cosets: usize) -> Result<Self> {
        let table = todd_coxeter(p, &[], max_cosets)?;
        Ok(Self::from_table(p.clone(), table))
    }

    fn from_table(presentation: GroupPresentation, table: CosetTable) -> Self {
        let elements = table.transversal();
        let n = elements.len();
        let inverses = elements.iter().map(|w| table.trace(0, &w.inverse())).collect();
        let cayley = (n <= CAYLEY_LIMIT).then(|| {
            (0..n).map(|i| elements.iter().map(|w| table.trace(i, w)).collect()).collect()
        });
        FiniteGroupRealization { presentation, table, elements, cayley, inverses }
    }

    /// `ℤ/m₁ × … × ℤ/m_k` on generators `c1..ck`.
    pub fn finite_abelian(moduli: &[u64]) -> Result<Self> {
        let order: u64 = moduli.iter().product();
        Self::from_presentation(&GroupPresentation::finite_abelian(moduli), order as usize + 1)
    }

    /// Realizes a group given by its multiplication table (`table[i][j] = i·j`,
    /// element 0 the identity) on generators `g1..g{n-1}`, one per
    /// non-identity element. Returns the realization and, for each table
    /// index, the corresponding element.
    pub fn from_cayley_table(table: &[Vec<usize>]) -> Result<(Self, Vec<usize>)> {
        let n = table.len();
        let not_group = |why: &str| Error::NotClosed(format!("multiplication table: {why}"));
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(not_group("not a square table over its own elements"));
        }
        if (0..n).any(|i| table[0][i] != i || table[i][0] != i) {
            return Err(not_group("element 0 is not the identity"));
        }
        let mut inverse = vec![usize::MAX; n];
        for i in 0..n {
            inverse[i] = (0..n).find(|&j| table[i][j] == 0).ok_or_else(|| not_group("missing inverse"))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(not_group("not associative"));
                    }
                }
            }
        }
        let gens = n - 1;
        let generators: Vec<String> = (1..n).map(|i| format!("g{i}")).collect();
        let word = |i: usize| if i == 0 { GroupWord::identity() } else { GroupWord::generator(i - 1) };
        let mut relators = Vec::new();
        for i in 1..n {
            for j in 1..n {
                let r = GroupWord::product([&word(i), &word(j), &word(table[i][j]).inverse()]);
                if !r.is_empty() {
                    relators.push(r);
                }
            }
        }
        let presentation = GroupPresentation { generators, relators };
        // right regular representation
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|i| (1..n).flat_map(|j| [table[i][j], table[i][inverse[j]]]).collect())
            .collect();
        let coset_table = if gens == 0 {
            CosetTable::trivial(0)
        } else {
            CosetTable::from_permutations(gens, rows, 0)?
        };
        let realization = Self::from_table(presentation, coset_table);
        let mapping = (0..n).map(|i| realization.element_of(&word(i))).collect();
        Ok((realization, mapping))
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    /// Representative word of an element.
    pub fn element_word(&self, i: usize) -> &GroupWord {
        &self.elements[i]
    }

    pub fn element_of(&self, w: &GroupWord) -> usize {
        self.table.trace(0, w)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.cayley {
            Some(t) => t[a][b],
            None => self.table.trace(a, &self.elements[b]),
        }
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Element of each edge value, after checking that the cocycle's target
    /// maps homomorphically into this group by generator name.
    pub fn voltages(&self, c: &Cocycle) -> Result<Vec<usize>> {
        let Cocycle::Presented { group, values } = c.to_presented() else { unreachable!() };
        let image: Vec<usize> = group
            .generators
            .iter()
            .map(|name| {
                self.presentation.generator_index(name).ok_or_else(|| {
                    Error::TargetMismatch(format!("generator {name} is not in the realized group"))
                })
            })
            .collect::<Result<_>>()?;
        let translate = |w: &GroupWord| {
            GroupWord::from_letters(w.letters().iter().map(|l| Letter { gen: image[l.gen], inverse: l.inverse }))
        };
        for r in &group.relators {
            if self.element_of(&translate(r)) != 0 {
                return Err(Error::TargetMismatch(format!(
                    "relator {} does not hold in the realized group",
                    r.display(&group.generators)
                )));
            }
        }
        Ok(values.iter().map(|w| self.element_of(&translate(w))).collect())
    }

    /// Voltages of a cocycle that is functorial in this group.
    pub fn check_cocycle(&self, g: &KGraph, c: &Cocycle) -> Result<Vec<usize>> {
        if c.edge_count() != g.edge_count() {
            return Err(Error::TargetMismatch("cocycle edge count differs from the graph".into()));
        }
        let eta = self.voltages(c)?;
        for sq in g.squares() {
            if self.mul(eta[sq.e.0], eta[sq.f.0]) != self.mul(eta[sq.g.0], eta[sq.h.0]) {
                return Err(Error::CocycleInvalid { square: g.square_names(sq) });
            }
        }
        Ok(eta)
    }
}

/// A skew-product covering together with its group action, when one exists.
#[derive(Debug, Clone)]
pub struct SkewProductResult {
    pub product: Arc<KGraph>,
    pub covering: CoveringMap,
    /// Deck automorphisms indexed by group element (or coset, when the
    /// subgroup of a relative product is normal), acting on the right.
    pub action: Option<Vec<Automorphism>>,
    /// Coset table behind a relative skew product.
    pub table: Option<CosetTable>,
}

fn tag(name: &str, i: usize) -> String {
    format!("{name}@{i}")
}

/// Builds a product over `g` whose sheets are indexed by `0..sheets`, with
/// edge `a` moving sheet `i` to `step(a, i)`.
fn build_product<F: Fn(usize, usize) -> usize>(
    g: &Arc<KGraph>,
    sheets: usize,
    step: F,
) -> Result<(Arc<KGraph>, CoveringMap)> {
    let mut skeleton = Skeleton { k: g.k(), vertices: Vec::new(), edges: Vec::new() };
    for x in g.vertex_names() {
        for i in 0..sheets {
            skeleton.vertices.push(tag(x, i));
        }
    }
    for a in g.edge_ids() {
        let edge = g.edge(a);
        for i in 0..sheets {
            skeleton.edges.push(EdgeSpec {
                id: tag(&edge.id, i),
                color: edge.color,
                source: tag(g.vertex_name(edge.source), i),
                range: tag(g.vertex_name(edge.range), step(a.0, i)),
            });
        }
    }
    let mut table = SquareTable::default();
    for sq in g.squares() {
        let n = g.square_names(sq);
        for i in 0..sheets {
            let fi = step(sq.f.0, i);
            let hi = step(sq.h.0, i);
            table.squares.push([tag(&n[0], fi), tag(&n[1], i), tag(&n[2], hi), tag(&n[3], i)]);
        }
    }
    let product = Arc::new(validate_kgraph(&skeleton, &table)?);
    let mut vmap = vec![VertexId(0); product.vertex_count()];
    for x in g.vertex_ids() {
        for i in 0..sheets {
            vmap[product.vertex(&tag(g.vertex_name(x), i))?.0] = x;
        }
    }
    let mut emap = vec![crate::kgraph::EdgeId(0); product.edge_count()];
    for a in g.edge_ids() {
        for i in 0..sheets {
            emap[product.edge_by_name(&tag(&g.edge(a).id, i))?.0] = a;
        }
    }
    let covering = check_covering(product.clone(), g.clone(), vmap, emap)?;
    Ok((product, covering))
}

/// Sheet permutations `(x, i) ↦ (x, σ(i))` as automorphisms of a product.
fn sheet_automorphism<F: Fn(usize) -> usize>(
    g: &KGraph,
    product: &KGraph,
    sheets: usize,
    sigma: F,
) -> Result<Automorphism> {
    let mut vertices = vec![VertexId(0); product.vertex_count()];
    let mut edges = vec![crate::kgraph::EdgeId(0); product.edge_count()];
    for x in g.vertex_names() {
        for i in 0..sheets {
            vertices[product.vertex(&tag(x, i))?.0] = product.vertex(&tag(x, sigma(i)))?;
        }
    }
    for e in g.edges() {
        for i in 0..sheets {
            edges[product.edge_by_name(&tag(&e.id, i))?.0] = product.edge_by_name(&tag(&e.id, sigma(i)))?;
        }
    }
    Ok(Automorphism { vertices, edges })
}

/// `Λ ×_η G`: edge `(a, g)` runs from `(s(a), g)` to `(r(a), η(a)g)`, with
/// the right action `(λ, g)h = (λ, gh)` attached.
pub fn skew_product(
    g: &Arc<KGraph>,
    c: &Cocycle,
    r: &FiniteGroupRealization,
) -> Result<SkewProductResult> {
    let eta = r.check_cocycle(g, c)?;
    let (product, covering) = build_product(g, r.order(), |a, i| r.mul(eta[a], i))?;
    let action = (0..r.order())
        .map(|h| sheet_automorphism(g, &product, r.order(), |k| r.mul(k, h)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SkewProductResult { product, covering, action: Some(action), table: None })
}

/// `Λ ×_η G/H` over the coset table of `H`.
///
/// Coset `c` of the table is the right coset `Hw`, identified with the left
/// coset `w⁻¹H`; so left multiplication by `η(a)` sends `c` to `c·η(a)⁻¹`.
pub fn relative_skew_product(
    g: &Arc<KGraph>,
    c: &Cocycle,
    h: &SubgroupData,
    max_cosets: usize,
) -> Result<SkewProductResult> {
    let Cocycle::Presented { group, values } = c.to_presented() else { unreachable!() };
    if group.generators != h.ambient.generators {
        return Err(Error::TargetMismatch("cocycle and subgroup live in different groups".into()));
    }
    if values.len() != g.edge_count() {
        return Err(Error::TargetMismatch("cocycle edge count differs from the graph".into()));
    }
    let table = match &h.table {
        Some(t) => t.clone(),
        None => todd_coxeter(&h.ambient, &h.generators, max_cosets)?,
    };
    let inv: Vec<GroupWord> = values.iter().map(GroupWord::inverse).collect();
    for sq in g.squares() {
        let lhs = GroupWord::product([&values[sq.e.0], &values[sq.f.0]]).inverse();
        let rhs = GroupWord::product([&values[sq.g.0], &values[sq.h.0]]).inverse();
        if (0..table.index()).any(|k| table.trace(k, &lhs) != table.trace(k, &rhs)) {
            return Err(Error::CocycleInvalid { square: g.square_names(sq) });
        }
    }
    let n = table.index();
    let (product, covering) = build_product(g, n, |a, k| table.trace(k, &inv[a]))?;
    let action = if table.is_normal() {
        let words = table.transversal();
        let act = (0..n)
            .map(|d| {
                let start = table.trace(0, &words[d].inverse());
                sheet_automorphism(g, &product, n, |k| table.trace(start, &words[k]))
            })
            .collect::<Result<Vec<_>>>()?;
        Some(act)
    } else {
        None
    };
    Ok(SkewProductResult { product, covering, action, table: Some(table) })
}

/// `Λ ×_η π(Λ, x)` for the canonical cocycle; needs `π(Λ, x)` finite.
pub fn universal_cover(g: &Arc<KGraph>, x: VertexId, max_cosets: usize) -> Result<SkewProductResult> {
    let fg = fundamental_group(g, x)?;
    let table = todd_coxeter(&fg.presentation, &[], max_cosets)?;
    let h = SubgroupData { ambient: fg.presentation.clone(), generators: Vec::new(), table: Some(table) };
    let eta = canonical_cocycle(g, x)?;
    let result = relative_skew_product(g, &eta, &h, max_cosets)?;
    debug_assert!(result.product.is_connected());
    Ok(result)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KTree {
    Yes,
    No,
    Unknown,
}

impl std::fmt::Display for KTree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            KTree::Yes => "yes",
            KTree::No => "no",
            KTree::Unknown => "unknown",
        })
    }
}

/// Whether `π(Λ)` is trivial: `No` when the abelianization is nontrivial or
/// the group enumerates to more than one element, `Yes` when it enumerates to
/// one element, `Unknown` when enumeration exceeds the budget.
pub fn is_ktree(g: &KGraph, max_cosets: usize) -> Result<KTree> {
    if !g.is_connected() {
        return Err(Error::NotConnected("k-tree test needs a connected graph".into()));
    }
    let fg = fundamental_group(g, VertexId(0))?;
    if !fg.presentation.abelianization().is_trivial() {
        return Ok(KTree::No);
    }
    match todd_coxeter(&fg.presentation, &[], max_cosets) {
        Ok(t) if t.index() == 1 => Ok(KTree::Yes),
        Ok(_) => Ok(KTree::No),
        Err(Error::CosetOverflow { .. }) => Ok(KTree::Unknown),
        Err(e) => Err(e),
    }
}

/// Output of [`gross_tucker`].
#[derive(Debug, Clone)]
pub struct GrossTucker {
    pub quotient: QuotientResult,
    /// Cocycle on the quotient with values in the acting group.
    pub cocycle: Cocycle,
    /// The skew product of the quotient by the cocycle.
    pub skew: SkewProductResult,
    /// Isomorphism from the skew-product covering to the quotient covering.
    pub isomorphism: CoveringMorphism,
}

/// Recovers a free right action of a finite group as a skew product.
///
/// `action[i]` is the automorphism of element `i` of `group`, acting on the
/// right: `action[i·j]` applies `action[i]` then `action[j]`.
pub fn gross_tucker(
    sigma: &Arc<KGraph>,
    action: &[Automorphism],
    group: &FiniteGroupRealization,
) -> Result<GrossTucker> {
    if action.len() != group.order() {
        return Err(Error::NotClosed(format!(
            "{} automorphisms for a group of order {}",
            action.len(),
            group.order()
        )));
    }
    for a in action {
        a.check(sigma)?;
    }
    for i in 0..group.order() {
        for j in 0..group.order() {
            if action[group.mul(i, j)] != action[i].then(&action[j]) {
                return Err(Error::NotClosed(format!("elements {i} and {j} do not compose as in the group")));
            }
        }
    }
    let q = quotient(sigma, action)?;
    let lambda = q.quotient.clone();
    let section = &q.representatives;

    let mut element_at: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut values = Vec::with_capacity(lambda.edge_count());
    let mut lifts = Vec::with_capacity(lambda.edge_count());
    for a in lambda.edge_ids() {
        let edge = lambda.edge(a);
        let (vx, vy) = (section[edge.range.0], section[edge.source.0]);
        let lift = q.orbit_map.lift_from_source(vy, a).expect("covering lifts every edge");
        let target = sigma.edge(lift).range;
        element_at.clear();
        for (k, alpha) in action.iter().enumerate() {
            element_at.insert(alpha.vertices[vx.0], k);
        }
        let k = element_at[&target];
        values.push(group.element_word(k).clone());
        lifts.push(lift);
    }
    let cocycle = Cocycle::Presented { group: group.presentation().clone(), values };
    let skew = skew_product(&lambda, &cocycle, group)?;

    let product = &skew.product;
    let mut vmap = vec![VertexId(0); product.vertex_count()];
    let mut emap = vec![crate::kgraph::EdgeId(0); product.edge_count()];
    for x in lambda.vertex_ids() {
        for (k, alpha) in action.iter().enumerate() {
            vmap[product.vertex(&tag(lambda.vertex_name(x), k))?.0] = alpha.vertices[section[x.0].0];
        }
    }
    for a in lambda.edge_ids() {
        for (k, alpha) in action.iter().enumerate() {
            emap[product.edge_by_name(&tag(&lambda.edge(a).id, k))?.0] = alpha.edges[lifts[a.0].0];
        }
    }
    let isomorphism = CoveringMorphism::new(&skew.covering, &q.orbit_map, vmap, emap)?;
    if !isomorphism.is_bijective() {
        return Err(Error::CrossCheckFailed("cross-section map is not bijective".into()));
    }
    Ok(GrossTucker { quotient: q, cocycle, skew, isomorphism })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::fundamental::degree_cocycle;

    fn s3() -> FiniteGroupRealization {
        let names = vec!["r".to_string(), "s".to_string()];
        let rels = ["r^3", "s^2", "s r s r"].iter().map(|r| GroupWord::parse(r, &names).unwrap()).collect();
        FiniteGroupRealization::from_presentation(&GroupPresentation::new(names, rels).unwrap(), 100).unwrap()
    }

    fn z(n: u64) -> FiniteGroupRealization {
        FiniteGroupRealization::finite_abelian(&[n]).unwrap()
    }

    #[test]
    fn realization_arithmetic() {
        let g = s3();
        assert_eq!(g.order(), 6);
        for a in 0..6 {
            assert_eq!(g.mul(a, g.inverse(a)), 0);
            assert_eq!(g.mul(0, a), a);
        }
        let r = g.element_of(&GroupWord::generator(0));
        let s = g.element_of(&GroupWord::generator(1));
        assert_ne!(g.mul(r, s), g.mul(s, r));
    }

    #[test]
    fn cayley_realization_matches_table() {
        // Z/4 with table (i + j) mod 4
        let table: Vec<Vec<usize>> = (0..4).map(|i| (0..4).map(|j| (i + j) % 4).collect()).collect();
        let (g, map) = FiniteGroupRealization::from_cayley_table(&table).unwrap();
        assert_eq!(g.order(), 4);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(g.mul(map[i], map[j]), map[table[i][j]]);
            }
        }
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert_eq!(FiniteGroupRealization::from_cayley_table(&bad).unwrap_err().name(), "NotClosed");
    }

    #[test]
    fn two_cycle_from_l1() {
        let l1 = Arc::new(fixtures::l1());
        let c = Cocycle::abelian(Some(vec![2]), vec![vec![1]]).unwrap();
        let sp = skew_product(&l1, &c, &z(2)).unwrap();
        assert_eq!(sp.product.vertex_count(), 2);
        assert!(sp.product.is_connected());
        assert_eq!(sp.covering.fiber(VertexId(0)).len(), 2);
    }

    #[test]
    fn trivial_group_gives_identity_covering() {
        let t2 = Arc::new(fixtures::t2());
        let c = Cocycle::abelian(Some(vec![1, 1]), vec![vec![0, 0], vec![0, 0]]).unwrap();
        let sp = skew_product(&t2, &c, &FiniteGroupRealization::finite_abelian(&[1, 1]).unwrap()).unwrap();
        assert_eq!(sp.product.vertex_count(), 1);
        assert_eq!(sp.product.edge_count(), 2);
    }

    #[test]
    fn degree_double_cover_of_t2() {
        let t2 = Arc::new(fixtures::t2());
        let d = degree_cocycle(&t2, Some(vec![2, 1])).unwrap();
        let r = FiniteGroupRealization::finite_abelian(&[2, 1]).unwrap();
        let sp = skew_product(&t2, &d, &r).unwrap();
        let p = &sp.product;
        assert!(p.is_connected());
        for e in p.edges() {
            let swaps = e.source != e.range;
            assert_eq!(swaps, e.color == 1, "edge {}", e.id);
        }
    }

    #[test]
    fn invalid_cocycle_is_rejected() {
        let ff2 = Arc::new(fixtures::ff2());
        let c = Cocycle::abelian(Some(vec![2]), vec![vec![1], vec![0], vec![0]]).unwrap();
        let err = skew_product(&ff2, &c, &z(2)).unwrap_err();
        assert_eq!(err.name(), "CocycleInvalid");
    }

    #[test]
    fn target_mismatch_on_wrong_modulus() {
        let l1 = Arc::new(fixtures::l1());
        let c = Cocycle::abelian(Some(vec![2]), vec![vec![1]]).unwrap();
        assert_eq!(skew_product(&l1, &c, &z(3)).unwrap_err().name(), "TargetMismatch");
    }

    #[test]
    fn relative_products() {
        let l1 = Arc::new(fixtures::l1());
        let eta = canonical_cocycle(&l1, VertexId(0)).unwrap();
        let fg = fundamental_group(&l1, VertexId(0)).unwrap();
        let h = SubgroupData { ambient: fg.presentation.clone(), generators: vec![GroupWord::power(0, 2)], table: None };
        let sp = relative_skew_product(&l1, &eta, &h, 100).unwrap();
        assert_eq!(sp.product.vertex_count(), 2);
        assert!(sp.product.is_connected());
        assert!(sp.action.is_some());

        let whole = SubgroupData { ambient: fg.presentation, generators: vec![GroupWord::generator(0)], table: None };
        let sp = relative_skew_product(&l1, &eta, &whole, 100).unwrap();
        assert_eq!(sp.product.vertex_count(), 1);

        let t2 = Arc::new(fixtures::t2());
        let eta = canonical_cocycle(&t2, VertexId(0)).unwrap();
        let fg = fundamental_group(&t2, VertexId(0)).unwrap();
        let h = SubgroupData {
            ambient: fg.presentation,
            generators: vec![GroupWord::power(0, 2), GroupWord::generator(1)],
            table: None,
        };
        let sp = relative_skew_product(&t2, &eta, &h, 100).unwrap();
        assert_eq!(sp.product.vertex_count(), 2);
        assert!(sp.product.is_connected());
        for e in sp.product.edges() {
            assert_eq!(e.source != e.range, e.color == 1);
        }
    }

    #[test]
    fn universal_covers() {
        let p2 = Arc::new(fixtures::p2());
        let u = universal_cover(&p2, VertexId(0), 10).unwrap();
        assert_eq!(u.product.vertex_count(), 2);
        let q2 = Arc::new(fixtures::q2());
        let u = universal_cover(&q2, q2.vertex("w").unwrap(), 10).unwrap();
        assert_eq!(u.product.vertex_count(), 4);
        let l1 = Arc::new(fixtures::l1());
        assert_eq!(universal_cover(&l1, VertexId(0), 1000).unwrap_err().name(), "CosetOverflow");
    }

    #[test]
    fn ktree_decisions() {
        assert_eq!(is_ktree(&fixtures::q2(), 100).unwrap(), KTree::Yes);
        assert_eq!(is_ktree(&fixtures::l1(), 100).unwrap(), KTree::No);
        assert_eq!(is_ktree(&fixtures::t2(), 100).unwrap(), KTree::No);
    }

    #[test]
    fn gross_tucker_on_small_cycles() {
        let l1 = Arc::new(fixtures::l1());
        for n in [2u64, 3] {
            let c = Cocycle::abelian(Some(vec![n]), vec![vec![1]]).unwrap();
            let g = z(n);
            let sp = skew_product(&l1, &c, &g).unwrap();
            let gt = gross_tucker(&sp.product, sp.action.as_ref().unwrap(), &g).unwrap();
            assert_eq!(gt.quotient.quotient.vertex_count(), 1);
            let got = g.voltages(&gt.cocycle).unwrap();
            assert_eq!(got, g.voltages(&c).unwrap());
        }
    }

    #[test]
    fn gross_tucker_rejects_mismatched_action() {
        let l1 = Arc::new(fixtures::l1());
        let c = Cocycle::abelian(Some(vec![3]), vec![vec![1]]).unwrap();
        let g = z(3);
        let sp = skew_product(&l1, &c, &g).unwrap();
        let mut action = sp.action.clone().unwrap();
        action.swap(1, 2);
        let wrong = FiniteGroupRealization::finite_abelian(&[3]).unwrap();
        // swapping two elements breaks nothing for Z/3 when the table agrees,
        // so break the identity instead
        action.swap(0, 1);
        assert_eq!(gross_tucker(&sp.product, &action, &wrong).unwrap_err().name(), "NotClosed");
    }
}
