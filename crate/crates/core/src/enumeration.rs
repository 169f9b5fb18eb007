//! Coset enumeration, low-index subgroups and the classification of
//! connected coverings by sheet count.
//!
//! Coset tables act on the right: row `c`, column `2i` holds `c·gᵢ` and
//! column `2i + 1` holds `c·gᵢ⁻¹`. Row 0 is the subgroup itself.

use std::cmp::Ordering;
use std::collections::VecDeque;

use crate::coverings::{are_isomorphic_coverings, stabilizer_subgroup, CoveringMap, SubgroupData};
use crate::error::{Error, Result};
use crate::fundamental::{canonical_cocycle, fundamental_group};
use crate::kgraph::{KGraph, VertexId};
use crate::skew::relative_skew_product;
use crate::word::{GroupPresentation, GroupWord, Letter};

const NONE: usize = usize::MAX;

/// A complete, standardized coset table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CosetTable {
    generators: usize,
    rows: Vec<Vec<usize>>,
}

impl PartialOrd for CosetTable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CosetTable {
    /// Index first, then rows lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.rows.len().cmp(&other.rows.len()).then_with(|| self.rows.cmp(&other.rows))
    }
}

impl CosetTable {
    /// Builds a table from a complete permutation representation and
    /// standardizes it at `base`.
    pub fn from_permutations(generators: usize, rows: Vec<Vec<usize>>, base: usize) -> Result<Self> {
        let n = rows.len();
        if base >= n {
            return Err(Error::Malformed("base coset out of range".into()));
        }
        for (c, row) in rows.iter().enumerate() {
            if row.len() != 2 * generators {
                return Err(Error::Malformed(format!("row {c} has wrong width")));
            }
            for (x, &d) in row.iter().enumerate() {
                if d >= n || rows[d][x ^ 1] != c {
                    return Err(Error::Malformed(format!("row {c} column {x} is not a permutation")));
                }
            }
        }
        let raw = CosetTable { generators, rows };
        let (table, _) = raw.standardize_from(base);
        if table.index() != n {
            return Err(Error::Malformed("permutation representation is not transitive".into()));
        }
        Ok(table)
    }

    pub fn trivial(generators: usize) -> Self {
        CosetTable { generators, rows: vec![vec![0; 2 * generators]] }
    }

    pub fn index(&self) -> usize {
        self.rows.len()
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn act(&self, coset: usize, letter: Letter) -> usize {
        self.rows[coset][letter.column()]
    }

    /// `coset · word`, letters applied left to right.
    pub fn trace(&self, coset: usize, word: &GroupWord) -> usize {
        word.letters().iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// Whether `word` lies in the subgroup of row 0.
    pub fn contains(&self, word: &GroupWord) -> bool {
        self.trace(0, word) == 0
    }

    /// Renumbers cosets in first-encounter order scanning rows from `base`,
    /// keeping only the cosets reachable from it. Returns the table and the
    /// old index of each new coset.
    fn standardize_from(&self, base: usize) -> (CosetTable, Vec<usize>) {
        let mut order = vec![base];
        let mut new_index = vec![NONE; self.rows.len()];
        new_index[base] = 0;
        let mut i = 0;
        while i < order.len() {
            for &d in &self.rows[order[i]] {
                if new_index[d] == NONE {
                    new_index[d] = order.len();
                    order.push(d);
                }
            }
            i += 1;
        }
        let rows = order
            .iter()
            .map(|&c| self.rows[c].iter().map(|&d| new_index[d]).collect())
            .collect();
        (CosetTable { generators: self.generators, rows }, order)
    }

    /// The standardized table of the stabilizer of `coset`, a conjugate of
    /// the subgroup of row 0.
    pub fn rebased(&self, coset: usize) -> CosetTable {
        self.standardize_from(coset).0
    }

    pub fn is_standardized(&self) -> bool {
        &self.rebased(0) == self
    }

    /// Representative words: coset `i` is `0 · words[i]`.
    pub fn transversal(&self) -> Vec<GroupWord> {
        let mut words: Vec<Option<GroupWord>> = vec![None; self.rows.len()];
        words[0] = Some(GroupWord::identity());
        let mut queue = VecDeque::from([0]);
        while let Some(c) = queue.pop_front() {
            for x in 0..2 * self.generators {
                let d = self.rows[c][x];
                if words[d].is_none() {
                    let letter = Letter { gen: x / 2, inverse: x % 2 == 1 };
                    let w = words[c].as_ref().unwrap().mul(&GroupWord::from_letters([letter]));
                    words[d] = Some(w);
                    queue.push_back(d);
                }
            }
        }
        words.into_iter().map(|w| w.expect("table is transitive")).collect()
    }

    /// Schreier generators of the subgroup of row 0.
    pub fn schreier_generators(&self) -> Vec<GroupWord> {
        let transversal = self.transversal();
        let mut gens = Vec::new();
        for (c, rep) in transversal.iter().enumerate() {
            for g in 0..self.generators {
                let d = self.act(c, Letter::new(g));
                let s = GroupWord::product([rep, &GroupWord::generator(g), &transversal[d].inverse()]);
                if !s.is_empty() && !gens.contains(&s) {
                    gens.push(s);
                }
            }
        }
        gens
    }

    /// `|N(H) / H|`: the number of cosets whose stabilizer equals `H`.
    pub fn normalizer_order(&self) -> usize {
        (0..self.index()).filter(|&c| &self.rebased(c) == self).count()
    }

    pub fn is_normal(&self) -> bool {
        self.normalizer_order() == self.index()
    }

    /// Least table among the conjugates of the subgroup.
    pub fn canonical_conjugate(&self) -> CosetTable {
        (0..self.index()).map(|c| self.rebased(c)).min().expect("nonempty table")
    }

    /// Whether every relator of `p` closes at every coset.
    pub fn satisfies(&self, p: &GroupPresentation) -> bool {
        p.generator_count() == self.generators
            && (0..self.index()).all(|c| p.relators.iter().all(|r| self.trace(c, r) == c))
    }
}

#[derive(Debug)]
struct Full;

/// Hard-limited HLT coset enumerator with a lookahead pass before giving up.
struct Enumerator {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    live: usize,
    limit: usize,
    relators: Vec<Vec<usize>>,
}

impl Enumerator {
    fn new(cols: usize, relators: Vec<Vec<usize>>, limit: usize) -> Self {
        Enumerator {
            cols,
            table: vec![vec![NONE; cols]],
            parent: vec![0],
            live: 1,
            limit,
            relators,
        }
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut k = c;
        while self.parent[k] != root {
            let next = self.parent[k];
            self.parent[k] = root;
            k = next;
        }
        root
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> std::result::Result<(), Full> {
        if self.live >= self.limit {
            return Err(Full);
        }
        let n = self.table.len();
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(n);
        self.live += 1;
        self.table[c][x] = n;
        self.table[n][x ^ 1] = c;
        Ok(())
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (x, y) = (self.rep(a), self.rep(b));
        if x != y {
            let (keep, drop) = if x < y { (x, y) } else { (y, x) };
            self.parent[drop] = keep;
            self.live -= 1;
            queue.push(drop);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let g = queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.table[g][x];
                if d == NONE {
                    continue;
                }
                self.table[d][x ^ 1] = NONE;
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.table[mu][x] != NONE {
                    let t = self.table[mu][x];
                    self.merge(nu, t, &mut queue);
                } else if self.table[nu][x ^ 1] != NONE {
                    let t = self.table[nu][x ^ 1];
                    self.merge(mu, t, &mut queue);
                } else {
                    self.table[mu][x] = nu;
                    self.table[nu][x ^ 1] = mu;
                }
            }
        }
    }

    /// Scans `word` at `start`; fills gaps by defining new cosets when
    /// `fill` is set, otherwise only records deductions and coincidences.
    fn scan(&mut self, start: usize, word: &[usize], fill: bool) -> std::result::Result<(), Full> {
        let (mut f, mut b) = (start, start);
        let (mut i, mut j) = (0, word.len());
        loop {
            while i < j && self.table[f][word[i]] != NONE {
                f = self.table[f][word[i]];
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i && self.table[b][word[j - 1] ^ 1] != NONE {
                b = self.table[b][word[j - 1] ^ 1];
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.table[f][word[i]] = b;
                self.table[b][word[i] ^ 1] = f;
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }

    fn lookahead(&mut self) -> bool {
        let relators = self.relators.clone();
        for c in 0..self.table.len() {
            for r in &relators {
                if !self.is_live(c) {
                    break;
                }
                let _ = self.scan(c, r, false);
            }
        }
        self.live < self.limit
    }

    fn process(&mut self, c: usize) -> std::result::Result<(), Full> {
        let relators = self.relators.clone();
        for r in &relators {
            if !self.is_live(c) {
                return Ok(());
            }
            self.scan(c, r, true)?;
        }
        for x in 0..self.cols {
            if !self.is_live(c) {
                return Ok(());
            }
            if self.table[c][x] == NONE {
                self.define(c, x)?;
            }
        }
        Ok(())
    }

    fn run(&mut self, subgroup: &[Vec<usize>]) -> Result<()> {
        let overflow = Error::CosetOverflow { limit: self.limit };
        for h in subgroup {
            while self.scan(0, h, true).is_err() {
                if !self.lookahead() {
                    return Err(overflow);
                }
            }
        }
        loop {
            let mut c = 0;
            while c < self.table.len() {
                if self.is_live(c) && self.process(c).is_err() {
                    if !self.lookahead() {
                        return Err(overflow);
                    }
                    continue;
                }
                c += 1;
            }
            let incomplete = (0..self.table.len())
                .any(|c| self.is_live(c) && self.table[c].iter().any(|&d| d == NONE));
            if !incomplete {
                return Ok(());
            }
        }
    }

    fn finish(mut self, generators: usize) -> CosetTable {
        let n = self.table.len();
        let mut rows = vec![Vec::new(); n];
        for c in 0..n {
            if self.is_live(c) {
                let row: Vec<usize> = self.table[c].clone();
                rows[c] = row.into_iter().map(|d| self.rep(d)).collect();
            }
        }
        let raw = CosetTable { generators, rows };
        raw.standardize_from(0).0
    }
}

fn word_columns(w: &GroupWord) -> Vec<usize> {
    w.letters().iter().map(|l| l.column()).collect()
}

/// Enumerates the cosets of `⟨subgroup⟩` in the presented group.
pub fn todd_coxeter(
    p: &GroupPresentation,
    subgroup: &[GroupWord],
    max_cosets: usize,
) -> Result<CosetTable> {
    let relators: Vec<Vec<usize>> =
        p.relators.iter().filter(|r| !r.is_empty()).map(word_columns).collect();
    let subgroup: Vec<Vec<usize>> = subgroup.iter().map(word_columns).collect();
    let mut e = Enumerator::new(2 * p.generator_count(), relators, max_cosets.max(1));
    e.run(&subgroup)?;
    let table = e.finish(p.generator_count());
    debug_assert!(table.satisfies(p));
    debug_assert!(table.is_standardized());
    Ok(table)
}

/// Backtracking search over partial tables with at most `n` cosets.
struct LowIndex<'a> {
    cols: usize,
    n: usize,
    relators: &'a [Vec<usize>],
    found: Vec<CosetTable>,
}

impl LowIndex<'_> {
    fn assign(table: &mut [Vec<usize>], c: usize, x: usize, d: usize) -> bool {
        if table[c][x] != NONE {
            return table[c][x] == d;
        }
        if table[d][x ^ 1] != NONE {
            return false;
        }
        table[c][x] = d;
        table[d][x ^ 1] = c;
        true
    }

    /// Relator scanning to a fixpoint; false on contradiction.
    fn deduce(&self, table: &mut [Vec<usize>], count: usize) -> bool {
        loop {
            let mut changed = false;
            for c in 0..count {
                for r in self.relators {
                    let (mut f, mut i) = (c, 0);
                    while i < r.len() && table[f][r[i]] != NONE {
                        f = table[f][r[i]];
                        i += 1;
                    }
                    if i == r.len() {
                        if f != c {
                            return false;
                        }
                        continue;
                    }
                    let (mut b, mut j) = (c, r.len());
                    while j > i && table[b][r[j - 1] ^ 1] != NONE {
                        b = table[b][r[j - 1] ^ 1];
                        j -= 1;
                    }
                    if j == i {
                        if f != b {
                            return false;
                        }
                    } else if j == i + 1 {
                        if !Self::assign(table, f, r[i], b) {
                            return false;
                        }
                        changed = true;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn search(&mut self, table: Vec<Vec<usize>>, count: usize) {
        let gap = (0..count)
            .flat_map(|c| (0..self.cols).map(move |x| (c, x)))
            .find(|&(c, x)| table[c][x] == NONE);
        let Some((c, x)) = gap else {
            self.found.push(CosetTable {
                generators: self.cols / 2,
                rows: table[..count].to_vec(),
            });
            return;
        };
        for d in 0..count {
            if table[d][x ^ 1] != NONE {
                continue;
            }
            let mut next = table.clone();
            if Self::assign(&mut next, c, x, d) && self.deduce(&mut next, count) {
                self.search(next, count);
            }
        }
        if count < self.n {
            let mut next = table;
            if Self::assign(&mut next, c, x, count) && self.deduce(&mut next, count + 1) {
                self.search(next, count + 1);
            }
        }
    }
}

/// Standardized tables of every subgroup of index at most `n`.
pub fn subgroups_up_to_index(p: &GroupPresentation, n: usize) -> Vec<CosetTable> {
    let relators: Vec<Vec<usize>> =
        p.relators.iter().filter(|r| !r.is_empty()).map(word_columns).collect();
    let cols = 2 * p.generator_count();
    let mut search = LowIndex { cols, n: n.max(1), relators: &relators, found: Vec::new() };
    search.search(vec![vec![NONE; cols]; n.max(1)], 1);
    let mut found = search.found;
    found.sort();
    found
}

/// One table per conjugacy class of subgroups of index at most `n`: the
/// least table among the conjugates, sorted by index then rows.
pub fn low_index_subgroups(p: &GroupPresentation, n: usize) -> Vec<CosetTable> {
    subgroups_up_to_index(p, n)
        .into_iter()
        .filter(|t| &t.canonical_conjugate() == t)
        .collect()
}

/// One relative skew-product covering per conjugacy class of subgroups of
/// index at most `sheets` in `π(Λ, x)`, built from the canonical cocycle.
pub fn classify_coverings(g: &KGraph, x: VertexId, sheets: usize) -> Result<Vec<Classified>> {
    let fg = fundamental_group(g, x)?;
    let eta = canonical_cocycle(g, x)?;
    let base = std::sync::Arc::new(g.clone());
    let mut out: Vec<Classified> = Vec::new();
    for table in low_index_subgroups(&fg.presentation, sheets) {
        let h = SubgroupData {
            ambient: fg.presentation.clone(),
            generators: table.schreier_generators(),
            table: Some(table.clone()),
        };
        let skew = relative_skew_product(&base, &eta, &h, table.index())?;
        let covering = skew.covering;
        if !covering.domain().is_connected() {
            return Err(Error::CrossCheckFailed("emitted covering is disconnected".into()));
        }
        let basepoint = covering.domain().vertex(&skew_vertex_name(g.vertex_name(x), 0))?;
        let stab = stabilizer_subgroup(&covering, basepoint)?;
        if stab.table.as_ref() != Some(&table) {
            return Err(Error::CrossCheckFailed(format!(
                "stabilizer table differs from the defining table of index {}",
                table.index()
            )));
        }
        for prev in &out {
            if are_isomorphic_coverings(&prev.covering, &covering)?.is_some() {
                return Err(Error::CrossCheckFailed("two emitted coverings are isomorphic".into()));
            }
        }
        out.push(Classified { table, covering, basepoint });
    }
    Ok(out)
}

pub(crate) fn skew_vertex_name(x: &str, coset: usize) -> String {
    format!("{x}@{coset}")
}

/// A covering emitted by [`classify_coverings`] with its defining data.
#[derive(Debug, Clone)]
pub struct Classified {
    pub table: CosetTable,
    pub covering: CoveringMap,
    /// The vertex `x@0` over the base vertex, whose stabilizer is the subgroup.
    pub basepoint: VertexId,
}
