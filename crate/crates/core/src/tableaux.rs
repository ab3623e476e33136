//! Marked alphabets, shifted tableaux, the PST1–PST4 rules and tableau enumeration.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, ParseError, Result};
use crate::shapes::{Cell, SkewShape};

/// A totally ordered alphabet with a mark and an unmarking map `|·|`.
pub trait Letter: Copy + Eq + Ord + Hash + fmt::Debug + fmt::Display + FromStr<Err = String> {
    /// The underlying positive integer `k`, ignoring marks and subscripts.
    fn base(&self) -> u32;
    fn is_marked(&self) -> bool;
    fn with_mark(self, marked: bool) -> Self;

    fn unmarked(self) -> Self {
        self.with_mark(false)
    }
}

/// `a ← b` iff `a < b` or `a = b` unmarked.
pub fn rel_single<L: Letter>(a: L, b: L) -> bool {
    a < b || (a == b && !a.is_marked())
}

/// `a ⇐ b` iff `a < b` or `a = b` marked.
pub fn rel_double<L: Letter>(a: L, b: L) -> bool {
    a < b || (a == b && a.is_marked())
}

/// An element of `ℕ′ = {1′ < 1 < 2′ < 2 < …}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MarkedLetter {
    pub base: u32,
    pub marked: bool,
}

impl MarkedLetter {
    pub const fn new(base: u32, marked: bool) -> Self {
        Self { base, marked }
    }

    pub const fn plain(base: u32) -> Self {
        Self::new(base, false)
    }

    pub const fn primed(base: u32) -> Self {
        Self::new(base, true)
    }

    /// Position in the order `1′, 1, 2′, 2, …` starting at 0.
    pub fn rank(&self) -> u32 {
        2 * (self.base - 1) + u32::from(!self.marked)
    }

    pub fn from_rank(rank: u32) -> Self {
        Self::new(rank / 2 + 1, rank.is_multiple_of(2))
    }
}

impl Ord for MarkedLetter {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.base, !self.marked).cmp(&(other.base, !other.marked))
    }
}

impl PartialOrd for MarkedLetter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Letter for MarkedLetter {
    fn base(&self) -> u32 {
        self.base
    }

    fn is_marked(&self) -> bool {
        self.marked
    }

    fn with_mark(self, marked: bool) -> Self {
        Self { marked, ..self }
    }
}

impl fmt::Display for MarkedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.base, if self.marked { "'" } else { "" })
    }
}

fn split_mark(s: &str) -> (&str, bool) {
    if let Some(rest) = s.strip_suffix('\'') {
        (rest, true)
    } else if let Some(rest) = s.strip_suffix('′') {
        (rest, true)
    } else {
        (s, false)
    }
}

fn parse_base(s: &str) -> std::result::Result<u32, String> {
    match s.parse::<u32>() {
        Ok(0) | Err(_) => Err(format!("expected a positive integer letter, found {s:?}")),
        Ok(k) => Ok(k),
    }
}

impl FromStr for MarkedLetter {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (digits, marked) = split_mark(s.trim());
        Ok(Self::new(parse_base(digits)?, marked))
    }
}

/// An element `k_l` or `k′_l` of the labeled alphabet `Ñ′`, ordered by `(k, l, marked first)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LabeledLetter {
    pub base: u32,
    pub label: u32,
    pub marked: bool,
}

impl LabeledLetter {
    pub const fn new(base: u32, label: u32, marked: bool) -> Self {
        Self { base, label, marked }
    }

    /// Drops the subscript.
    pub fn strip_label(&self) -> MarkedLetter {
        MarkedLetter::new(self.base, self.marked)
    }
}

impl Ord for LabeledLetter {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.base, self.label, !self.marked).cmp(&(other.base, other.label, !other.marked))
    }
}

impl PartialOrd for LabeledLetter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Letter for LabeledLetter {
    fn base(&self) -> u32 {
        self.base
    }

    fn is_marked(&self) -> bool {
        self.marked
    }

    fn with_mark(self, marked: bool) -> Self {
        Self { marked, ..self }
    }
}

impl fmt::Display for LabeledLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}_{}",
            self.base,
            if self.marked { "'" } else { "" },
            self.label
        )
    }
}

impl FromStr for LabeledLetter {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let (head, label) = s
            .split_once('_')
            .ok_or_else(|| format!("expected a labeled letter like 2'_1, found {s:?}"))?;
        let (digits, marked) = split_mark(head);
        let label = label
            .parse::<u32>()
            .ok()
            .filter(|&l| l > 0)
            .ok_or_else(|| format!("expected a positive subscript, found {label:?}"))?;
        Ok(Self::new(parse_base(digits)?, label, marked))
    }
}

/// A filling of the cells of a (skew) shifted shape, stored row by row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShiftedTableau<E> {
    shape: SkewShape,
    rows: Vec<Vec<E>>,
}

impl<E> ShiftedTableau<E> {
    pub fn new(shape: SkewShape, rows: Vec<Vec<E>>) -> Result<Self> {
        if rows.len() != shape.num_rows() {
            return Err(Error::RowCount {
                expected: shape.num_rows(),
                found: rows.len(),
            });
        }
        for (i, row) in rows.iter().enumerate() {
            let expected = shape.row_len(i + 1);
            if row.len() != expected {
                return Err(Error::RowLength {
                    row: i + 1,
                    expected,
                    found: row.len(),
                });
            }
        }
        Ok(Self { shape, rows })
    }

    /// Builds a tableau from entries listed in row-major cell order.
    pub fn from_row_major(shape: SkewShape, entries: Vec<E>) -> Result<Self> {
        if entries.len() != shape.size() {
            return Err(Error::Invalid(format!(
                "{} entries given for a shape with {} cells",
                entries.len(),
                shape.size()
            )));
        }
        let mut it = entries.into_iter();
        let rows = (1..=shape.num_rows())
            .map(|i| it.by_ref().take(shape.row_len(i)).collect())
            .collect();
        Ok(Self { shape, rows })
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.shape.size()
    }

    pub fn is_empty(&self) -> bool {
        self.shape.size() == 0
    }

    pub fn get(&self, cell: Cell) -> Option<&E> {
        if !self.shape.contains(cell) {
            return None;
        }
        let start = *self.shape.row_cols(cell.row).start();
        self.rows[cell.row - 1].get(cell.col - start)
    }

    /// `(cell, entry)` pairs in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (Cell, &E)> + '_ {
        self.rows.iter().enumerate().flat_map(move |(i, row)| {
            let start = *self.shape.row_cols(i + 1).start();
            row.iter()
                .enumerate()
                .map(move |(k, e)| (Cell::new(i + 1, start + k), e))
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = &E> + '_ {
        self.rows.iter().flatten()
    }

    pub fn map<F, G: FnMut(&E) -> F>(&self, mut f: G) -> ShiftedTableau<F> {
        ShiftedTableau {
            shape: self.shape.clone(),
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(&mut f).collect())
                .collect(),
        }
    }
}

impl<E: fmt::Display> fmt::Display for ShiftedTableau<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            for (k, e) in row.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

impl<E: FromStr<Err = String>> ShiftedTableau<E> {
    /// Parses `"1,2',3;2',4;2'"`: rows separated by `;`, entries by `,`. Cells of the
    /// inner shape are implied and must not be written.
    pub fn parse(shape: &SkewShape, text: &str) -> std::result::Result<Self, ParseError> {
        let mut rows = Vec::new();
        if shape.num_rows() > 0 || !text.trim().is_empty() {
            let mut offset = 0;
            for row_text in text.split(';') {
                let mut row = Vec::new();
                if !row_text.trim().is_empty() {
                    let mut pos = offset;
                    for token in row_text.split(',') {
                        let at = pos + (token.len() - token.trim_start().len());
                        row.push(token.trim().parse::<E>().map_err(|m| ParseError::new(text, at, m))?);
                        pos += token.len() + 1;
                    }
                }
                rows.push(row);
                offset += row_text.len() + 1;
            }
        }
        ShiftedTableau::new(shape.clone(), rows).map_err(|e| ParseError::new(text, text.len(), e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct RawTableau {
    shape: SkewShape,
    entries: Vec<(usize, usize, String)>,
}

impl<E: fmt::Display> Serialize for ShiftedTableau<E> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RawTableau {
            shape: self.shape.clone(),
            entries: self
                .iter()
                .map(|(c, e)| (c.row, c.col, e.to_string()))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, E: FromStr<Err = String>> Deserialize<'de> for ShiftedTableau<E> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawTableau::deserialize(deserializer)?;
        let mut by_cell: Vec<(Cell, E)> = raw
            .entries
            .into_iter()
            .map(|(i, j, s)| s.parse::<E>().map(|e| (Cell::new(i, j), e)))
            .collect::<std::result::Result<_, _>>()
            .map_err(D::Error::custom)?;
        by_cell.sort_by_key(|(c, _)| *c);
        let cells = raw.shape.cells();
        if by_cell.len() != cells.len() || by_cell.iter().zip(&cells).any(|((c, _), d)| c != d) {
            return Err(D::Error::custom("entries do not cover exactly the cells of the shape"));
        }
        ShiftedTableau::from_row_major(raw.shape, by_cell.into_iter().map(|(_, e)| e).collect())
            .map_err(D::Error::custom)
    }
}

impl<L: Letter> ShiftedTableau<L> {
    /// `|T|`: the pointwise unmarked tableau.
    pub fn unmark(&self) -> Self {
        self.map(|l| l.unmarked())
    }

    pub fn content(&self) -> Content {
        content_of(self.entries().copied())
    }
}

/// Which family of tableaux: `P` obeys PST1–PST4, `Q` only PST1–PST3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    P,
    Q,
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "p" | "psst" => Ok(Kind::P),
            "q" | "qsst" => Ok(Kind::Q),
            other => Err(format!("unknown tableau kind {other:?}, expected p or q")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    /// weakly increasing along rows and columns
    Pst1,
    /// at most one `k′` per row
    Pst2,
    /// at most one `k` per column
    Pst3,
    /// no `k′` on the main diagonal
    Pst4,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Rule::Pst1 => "PST1",
            Rule::Pst2 => "PST2",
            Rule::Pst3 => "PST3",
            Rule::Pst4 => "PST4",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: Rule,
    pub cell: Cell,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated at {}", self.rule, self.cell)
    }
}

/// Checks PST1–PST3 (and PST4 for `Kind::P`). The report names the lowest-numbered
/// violated rule and the first offending cell in row-major order.
///
/// Rows and columns of a shifted skew shape are contiguous, so all four rules reduce
/// to comparisons between neighbouring cells.
pub fn validate<L: Letter>(kind: Kind, t: &ShiftedTableau<L>) -> std::result::Result<(), Violation> {
    let mut rules = vec![Rule::Pst1, Rule::Pst2, Rule::Pst3];
    if kind == Kind::P {
        rules.push(Rule::Pst4);
    }
    for rule in rules {
        for (cell, &x) in t.iter() {
            let right = t.get(cell.right()).copied();
            let below = t.get(cell.below()).copied();
            let bad = match rule {
                Rule::Pst1 => right.is_some_and(|r| r < x) || below.is_some_and(|b| b < x),
                Rule::Pst2 => x.is_marked() && right == Some(x),
                Rule::Pst3 => !x.is_marked() && below == Some(x),
                Rule::Pst4 => cell.is_diagonal() && x.is_marked(),
            };
            if bad {
                return Err(Violation { rule, cell });
            }
        }
    }
    Ok(())
}

/// Per-base occurrence counts `(n_1, n_2, …)` with trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<u32>", into = "Vec<u32>")]
pub struct Content(Vec<u32>);

impl Content {
    pub fn new(mut counts: Vec<u32>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        Self(counts)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    /// `n_k` for 1-based `k`.
    pub fn get(&self, k: u32) -> u32 {
        if k == 0 {
            return 0;
        }
        self.0.get(k as usize - 1).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Largest base with a nonzero count.
    pub fn max_base(&self) -> u32 {
        self.0.len() as u32
    }

    /// All contents of total weight `weight` supported on `1..=max_base`.
    pub fn all(weight: u32, max_base: u32) -> Vec<Content> {
        fn rec(k: usize, remaining: u32, acc: &mut Vec<u32>, out: &mut Vec<Content>) {
            if k == acc.len() {
                if remaining == 0 {
                    out.push(Content::new(acc.clone()));
                }
                return;
            }
            for c in 0..=remaining {
                acc[k] = c;
                rec(k + 1, remaining - c, acc, out);
            }
            acc[k] = 0;
        }
        let mut out = Vec::new();
        rec(0, weight, &mut vec![0; max_base as usize], &mut out);
        out.sort();
        out
    }
}

impl From<Vec<u32>> for Content {
    fn from(v: Vec<u32>) -> Self {
        Content::new(v)
    }
}

impl From<Content> for Vec<u32> {
    fn from(c: Content) -> Self {
        c.0
    }
}

impl fmt::Display for Content {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Content {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        if body.trim().is_empty() {
            return Ok(Content::default());
        }
        body.split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| format!("bad content entry {t:?}")))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Content::new)
    }
}

pub fn content_of<L: Letter>(letters: impl IntoIterator<Item = L>) -> Content {
    let mut counts: Vec<u32> = Vec::new();
    for l in letters {
        let k = l.base() as usize;
        if counts.len() < k {
            counts.resize(k, 0);
        }
        counts[k - 1] += 1;
    }
    Content::new(counts)
}

/// Backtracking enumeration of PSST/QSST fillings with bases bounded by `max_base`.
///
/// Cells are filled in row-major order and letters tried in increasing order, so the
/// stream is lexicographic in `(cell, letter)`.
pub struct Enumerator {
    kind: Kind,
    shape: SkewShape,
    cells: Vec<Cell>,
    /// index of the left / upper neighbour of each cell within `cells`
    left: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
    letter_count: u32,
    target: Option<Vec<u32>>,
    used: Vec<u32>,
    ranks: Vec<u32>,
    letters: Vec<MarkedLetter>,
    pos: usize,
    state: EnumState,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum EnumState {
    Fresh,
    Yielded,
    Done,
}

impl Enumerator {
    pub fn new(kind: Kind, shape: &SkewShape, max_base: u32, content: Option<&Content>) -> Self {
        let cells = shape.cells();
        let index_of = |c: Cell| cells.binary_search(&c).ok();
        let left = cells
            .iter()
            .map(|c| if c.col > 1 { index_of(Cell::new(c.row, c.col - 1)) } else { None })
            .collect();
        let above = cells
            .iter()
            .map(|c| if c.row > 1 { index_of(Cell::new(c.row - 1, c.col)) } else { None })
            .collect();
        let mut state = EnumState::Fresh;
        let target = content.map(|c| {
            let feasible = c.max_base() <= max_base && c.weight() as usize == cells.len();
            if !feasible {
                state = EnumState::Done;
            }
            let mut t = c.counts().to_vec();
            t.resize(max_base as usize, 0);
            t
        });
        let n = cells.len();
        Self {
            kind,
            shape: shape.clone(),
            left,
            above,
            letter_count: 2 * max_base,
            target,
            used: vec![0; max_base as usize],
            ranks: vec![0; n],
            letters: vec![MarkedLetter::plain(1); n],
            pos: 0,
            state,
            cells,
        }
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    fn lower_rank(&self, pos: usize) -> u32 {
        let l = self.left[pos].map_or(0, |p| self.ranks[p]);
        let a = self.above[pos].map_or(0, |p| self.ranks[p]);
        l.max(a)
    }

    fn admissible(&self, pos: usize, rank: u32) -> bool {
        let x = MarkedLetter::from_rank(rank);
        if let Some(p) = self.left[pos] {
            let l = self.letters[p];
            if l > x || (l == x && x.marked) {
                return false;
            }
        }
        if let Some(p) = self.above[pos] {
            let a = self.letters[p];
            if a > x || (a == x && !x.marked) {
                return false;
            }
        }
        if self.kind == Kind::P && x.marked && self.cells[pos].is_diagonal() {
            return false;
        }
        if let Some(t) = &self.target {
            if self.used[x.base as usize - 1] >= t[x.base as usize - 1] {
                return false;
            }
        }
        true
    }

    fn place(&mut self, pos: usize, rank: u32) {
        self.ranks[pos] = rank;
        let x = MarkedLetter::from_rank(rank);
        self.letters[pos] = x;
        self.used[x.base as usize - 1] += 1;
    }

    fn unplace(&mut self, pos: usize) {
        let b = self.letters[pos].base as usize;
        self.used[b - 1] -= 1;
    }

    /// Advances to the next filling, returned as letters in row-major cell order.
    pub fn next_filling(&mut self) -> Option<&[MarkedLetter]> {
        let n = self.cells.len();
        let mut start;
        match self.state {
            EnumState::Done => return None,
            EnumState::Fresh => {
                self.pos = 0;
                start = if n > 0 { self.lower_rank(0) } else { 0 };
            }
            EnumState::Yielded => {
                if n == 0 {
                    self.state = EnumState::Done;
                    return None;
                }
                self.pos = n - 1;
                self.unplace(self.pos);
                start = self.ranks[self.pos] + 1;
            }
        }
        loop {
            if self.pos == n {
                self.state = EnumState::Yielded;
                return Some(&self.letters);
            }
            let pos = self.pos;
            let found = (start..self.letter_count).find(|&r| self.admissible(pos, r));
            match found {
                Some(r) => {
                    self.place(pos, r);
                    self.pos += 1;
                    if self.pos < n {
                        start = self.lower_rank(self.pos);
                    }
                }
                None => {
                    if pos == 0 {
                        self.state = EnumState::Done;
                        return None;
                    }
                    self.pos -= 1;
                    self.unplace(self.pos);
                    start = self.ranks[self.pos] + 1;
                }
            }
        }
    }
}

impl Iterator for Enumerator {
    type Item = ShiftedTableau<MarkedLetter>;

    fn next(&mut self) -> Option<Self::Item> {
        let letters = self.next_filling()?.to_vec();
        let shape = self.shape.clone();
        Some(ShiftedTableau::from_row_major(shape, letters).expect("filling matches shape"))
    }
}

/// All tableaux of the given kind on `shape` with bases `≤ max_base` (and the given content).
pub fn enumerate(kind: Kind, shape: &SkewShape, max_base: u32, content: Option<&Content>) -> Enumerator {
    Enumerator::new(kind, shape, max_base, content)
}
