//! Row words, the four Knuth relations and the canonical tableau `P(w)`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;
use crate::jdt::{rectify, CornerPolicy};
use crate::shapes::{SkewShape, StrictPartition};
use crate::tableaux::{content_of, rel_double, rel_single, Content, Letter, ShiftedTableau};

/// A finite word over an ordered alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word<L>(pub Vec<L>);

impl<L: Letter> Word<L> {
    pub fn letters(&self) -> &[L] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn content(&self) -> Content {
        content_of(self.0.iter().copied())
    }

    /// `|w|`: every mark removed.
    pub fn unmark(&self) -> Self {
        Word(self.0.iter().map(|l| l.unmarked()).collect())
    }
}

impl<L: fmt::Display> fmt::Display for Word<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl<L: Letter> FromStr for Word<L> {
    type Err = ParseError;

    /// Space-separated letters, e.g. `"3 2' 2"`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for token in s.split(' ') {
            if !token.is_empty() {
                letters.push(token.parse::<L>().map_err(|m| ParseError::new(s, offset, m))?);
            }
            offset += token.len() + 1;
        }
        Ok(Word(letters))
    }
}

/// Reads rows left to right, starting from the bottom row.
pub fn row_word<L: Letter>(t: &ShiftedTableau<L>) -> Word<L> {
    Word(t.rows().iter().rev().flatten().copied().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum KnuthRelation {
    /// `u·cab·v ~ u·acb·v` with `a ← b ⇐ c`
    I,
    /// `u·bac·v ~ u·bca·v` with `a ⇐ b ← c`
    II,
    /// `ab·w ~ ba·w` with `|a| ≠ |b|`
    III,
    /// `a|a|·w ~ a|a|′·w`
    IV,
}

impl fmt::Display for KnuthRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            KnuthRelation::I => "(i)",
            KnuthRelation::II => "(ii)",
            KnuthRelation::III => "(iii)",
            KnuthRelation::IV => "(iv)",
        };
        f.write_str(tag)
    }
}

/// Every word reachable from `w` by one Knuth relation, in either direction.
/// Relations (iii) and (iv) only act on the first two letters.
pub fn knuth_neighbors<L: Letter>(w: &Word<L>) -> Vec<(KnuthRelation, Word<L>)> {
    let x = &w.0;
    let mut out = Vec::new();
    let mut push = |rel, p: usize, window: [L; 3]| {
        let mut v = x.clone();
        v[p..p + 3].copy_from_slice(&window);
        out.push((rel, Word(v)));
    };
    for p in 0..x.len().saturating_sub(2) {
        let (s, t, u) = (x[p], x[p + 1], x[p + 2]);
        // (i): window c a b  <->  a c b
        if rel_single(t, u) && rel_double(u, s) {
            push(KnuthRelation::I, p, [t, s, u]);
        }
        if rel_single(s, u) && rel_double(u, t) {
            push(KnuthRelation::I, p, [t, s, u]);
        }
        // (ii): window b a c  <->  b c a
        if rel_double(t, s) && rel_single(s, u) {
            push(KnuthRelation::II, p, [s, u, t]);
        }
        if rel_double(u, s) && rel_single(s, t) {
            push(KnuthRelation::II, p, [s, u, t]);
        }
    }
    if x.len() >= 2 {
        let (a, b) = (x[0], x[1]);
        if a.unmarked() != b.unmarked() {
            let mut v = x.clone();
            v.swap(0, 1);
            out.push((KnuthRelation::III, Word(v)));
        }
        let bare = a.unmarked();
        if b == bare || b == bare.with_mark(true) {
            let mut v = x.clone();
            v[1] = if b == bare { bare.with_mark(true) } else { bare };
            out.push((KnuthRelation::IV, Word(v)));
        }
    }
    out
}

/// The tag of a single Knuth relation taking `w0` to `w1`, if there is one.
pub fn knuth_step<L: Letter>(w0: &Word<L>, w1: &Word<L>) -> Option<KnuthRelation> {
    if w0.len() != w1.len() {
        return None;
    }
    knuth_neighbors(w0)
        .into_iter()
        .find(|(_, v)| v == w1)
        .map(|(rel, _)| rel)
}

/// `P(w)`: the unique normal QSST whose row word is Knuth equivalent to `w`.
///
/// The word is laid out one letter per row on a staircase skew shape so that its row
/// word is exactly `w`, then rectified.
pub fn canonical_tableau<L: Letter>(w: &Word<L>) -> ShiftedTableau<L> {
    let n = w.len() as u32;
    let outer = StrictPartition::new((1..=n).map(|i| 2 * n - 2 * i + 2).collect()).expect("strict staircase");
    let inner = StrictPartition::new((1..=n).map(|i| 2 * n - 2 * i + 1).collect()).expect("strict staircase");
    let shape = SkewShape::new(outer, inner).expect("inner inside outer");
    // row i holds w_{n-i+1}
    let entries: Vec<L> = w.0.iter().rev().copied().collect();
    let staircase = ShiftedTableau::from_row_major(shape, entries).expect("one cell per row");
    rectify(&staircase, CornerPolicy::default()).tableau
}

/// Knuth equivalence decided by comparing canonical tableaux.
pub fn knuth_equivalent<L: Letter>(w0: &Word<L>, w1: &Word<L>) -> bool {
    w0.content() == w1.content() && canonical_tableau(w0) == canonical_tableau(w1)
}

/// Breadth-first closure of `w` under single Knuth steps. Exponential; only meant as a
/// cross-check for short words.
pub fn knuth_class<L: Letter>(w: &Word<L>) -> HashSet<Word<L>> {
    let mut seen = HashSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(v) = queue.pop_front() {
        for (_, u) in knuth_neighbors(&v) {
            if seen.insert(u.clone()) {
                queue.push_back(u);
            }
        }
    }
    seen
}

/// Knuth equivalence decided by exhaustive closure, for words of length at most `max_len`.
pub fn knuth_equivalent_by_closure<L: Letter>(w0: &Word<L>, w1: &Word<L>, max_len: usize) -> Option<bool> {
    if w0.len() > max_len || w1.len() > max_len {
        return None;
    }
    if w0.content() != w1.content() {
        return Some(false);
    }
    Some(knuth_class(w0).contains(w1))
}
