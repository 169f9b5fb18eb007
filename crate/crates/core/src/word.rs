//! Freely reduced group words and finite group presentations.
//!
//! A word is read as a product in the order written; when its letters are
//! skeleton edges this is composition order, so the rightmost letter is the
//! first one traversed.

use std::fmt;

use crate::error::{Error, Result};

/// A generator or its formal inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn inv(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    /// Coset table column: `2 * gen` for the generator, `2 * gen + 1` for its inverse.
    pub fn column(self) -> usize {
        2 * self.gen + self.inverse as usize
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupWord(Vec<Letter>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    pub fn generator(gen: usize) -> Self {
        GroupWord(vec![Letter::new(gen)])
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupWord(out)
    }

    /// `g^n` for a generator.
    pub fn power(gen: usize, n: i64) -> Self {
        let l = if n < 0 { Letter::inv(gen) } else { Letter::new(gen) };
        GroupWord(vec![l; n.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn mul(&self, other: &GroupWord) -> Self {
        GroupWord::from_letters(self.0.iter().chain(&other.0).copied())
    }

    /// Product of several words, left to right.
    pub fn product<'a, I: IntoIterator<Item = &'a GroupWord>>(words: I) -> Self {
        GroupWord::from_letters(words.into_iter().flat_map(|w| w.0.iter().copied()))
    }

    /// Replaces each letter through `f` and reduces.
    pub fn substitute<F: Fn(usize) -> GroupWord>(&self, f: F) -> Self {
        let mut out = Vec::new();
        for l in &self.0 {
            let image = f(l.gen);
            if l.inverse {
                out.extend(image.inverse().0);
            } else {
                out.extend(image.0);
            }
        }
        GroupWord::from_letters(out)
    }

    /// Exponent sum per generator.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut v = vec![0; generators];
        for l in &self.0 {
            v[l.gen] += if l.inverse { -1 } else { 1 };
        }
        v
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }

    /// Parses whitespace-separated tokens `g`, `g^-1`, `g^n`; `1` is the identity.
    pub fn parse(text: &str, names: &[String]) -> Result<GroupWord> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| Error::Malformed(format!("bad exponent in {token}")))?;
                    (n, e)
                }
                None => (token, 1),
            };
            let gen = names
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| Error::Malformed(format!("unknown generator {name}")))?;
            letters.extend(GroupWord::power(gen, exp).0);
        }
        Ok(GroupWord::from_letters(letters))
    }
}

pub struct WordDisplay<'a> {
    word: &'a GroupWord,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        let tokens: Vec<String> = self
            .word
            .0
            .iter()
            .map(|l| {
                let n = &self.names[l.gen];
                if l.inverse {
                    format!("{n}^-1")
                } else {
                    n.clone()
                }
            })
            .collect();
        write!(f, "{}", tokens.join(" "))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<GroupWord>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<GroupWord>) -> Result<Self> {
        let p = GroupPresentation { generators, relators };
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<()> {
        for r in &self.relators {
            if r.letters().iter().any(|l| l.gen >= self.generators.len()) {
                return Err(Error::Malformed("relator uses an undeclared generator".into()));
            }
        }
        Ok(())
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// `ℤ/m₁ × … × ℤ/m_k` on generators `c1..ck`.
    pub fn finite_abelian(moduli: &[u64]) -> Self {
        let mut p = GroupPresentation::free_abelian(moduli.len());
        for (i, &m) in moduli.iter().enumerate() {
            p.relators.push(GroupWord::power(i, m as i64));
        }
        p
    }

    /// `ℤᵏ` on generators `c1..ck`.
    pub fn free_abelian(k: usize) -> Self {
        let generators = (1..=k).map(|i| format!("c{i}")).collect();
        let mut relators = Vec::new();
        for i in 0..k {
            for j in (i + 1)..k {
                relators.push(GroupWord::from_letters([
                    Letter::new(i),
                    Letter::new(j),
                    Letter::inv(i),
                    Letter::inv(j),
                ]));
            }
        }
        GroupPresentation { generators, relators }
    }

    /// Abelian invariants of the presented group.
    pub fn abelianization(&self) -> AbelianInvariants {
        let n = self.generators.len();
        let matrix: Vec<Vec<i64>> = self.relators.iter().map(|r| r.exponent_sums(n)).collect();
        let diag = smith_diagonal(matrix, n);
        let torsion: Vec<u64> =
            diag.iter().map(|d| d.unsigned_abs()).filter(|&d| d > 1).collect();
        let rank = n - diag.iter().filter(|&&d| d != 0).count();
        AbelianInvariants { free_rank: rank, torsion }
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> =
            self.relators.iter().map(|r| r.display(&self.generators).to_string()).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

/// `ℤ^free_rank ⊕ ⨁ ℤ/tᵢ` with `t₁ | t₂ | …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        if parts.is_empty() {
            write!(f, "trivial")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// Diagonal of the Smith normal form of an integer matrix with `cols` columns.
fn smith_diagonal(mut a: Vec<Vec<i64>>, cols: usize) -> Vec<i64> {
    let rows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows && t < cols {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut pivot = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && pivot.map_or(true, |(pi, pj): (usize, usize)| a[i][j].abs() < a[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in (t + 1)..rows {
                let q = a[i][t] / a[t][t];
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            for j in (t + 1)..cols {
                let q = a[t][j] / a[t][t];
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if !dirty {
                // enforce divisibility of the rest of the block
                let bad = ((t + 1)..rows)
                    .flat_map(|i| ((t + 1)..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % a[t][t] != 0);
                match bad {
                    Some((i, _)) => {
                        for j in t..cols {
                            a[t][j] += a[i][j];
                        }
                    }
                    None => break,
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}
