//! Elementary slides, slides from inside corners and jeu de taquin rectification.
//!
//! Every entry carries the cell it started in, so the bijection from the original
//! skew shape onto the rectified shape falls out of the rectification directly.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shapes::{Cell, SkewShape, StrictPartition};
use crate::tableaux::{rel_double, rel_single, Letter, ShiftedTableau};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Slot<L> {
    entry: L,
    origin: Cell,
}

/// A tableau with exactly one vacated cell (the dot) in the middle of a slide.
#[derive(Clone, Debug)]
pub struct SlideState<L> {
    outer: Vec<usize>,
    inner: Vec<usize>,
    cols: usize,
    grid: Vec<Option<Slot<L>>>,
    dot: Option<Cell>,
}

/// What an elementary slide did.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlideMove {
    /// the entry below the dot moved up
    Up,
    /// the entry right of the dot moved left
    Left,
    /// the diagonal case: `(i,i+1)` and `(i+1,i+1)` rotate into `(i,i)` and `(i,i+1)`
    Exceptional,
}

impl<L: Letter> SlideState<L> {
    /// Loads `t` without a dot.
    fn load(t: &ShiftedTableau<L>) -> Self {
        let shape = t.shape();
        let rows = shape.num_rows();
        let cols = shape.outer().part(1) as usize;
        let mut grid = vec![None; rows * cols];
        for (cell, &entry) in t.iter() {
            grid[(cell.row - 1) * cols + cell.col - 1] = Some(Slot { entry, origin: cell });
        }
        Self {
            outer: (1..=rows).map(|i| shape.outer().part(i) as usize).collect(),
            inner: (1..=rows).map(|i| shape.inner().part(i) as usize).collect(),
            cols,
            grid,
            dot: None,
        }
    }

    /// Puts the dot into the inside corner `corner` of `t`.
    pub fn start(t: &ShiftedTableau<L>, corner: Cell) -> Result<Self> {
        let mut state = Self::load(t);
        state.place_dot(corner)?;
        Ok(state)
    }

    fn place_dot(&mut self, corner: Cell) -> Result<()> {
        if !self.inside_corners().contains(&corner) {
            return Err(Error::NotInsideCorner(corner));
        }
        self.inner[corner.row - 1] -= 1;
        self.dot = Some(corner);
        Ok(())
    }

    pub fn dot(&self) -> Option<Cell> {
        self.dot
    }

    fn index(&self, cell: Cell) -> Option<usize> {
        if cell.row == 0 || cell.col == 0 || cell.row > self.outer.len() || cell.col > self.cols {
            None
        } else {
            Some((cell.row - 1) * self.cols + cell.col - 1)
        }
    }

    fn slot(&self, cell: Cell) -> Option<Slot<L>> {
        self.index(cell).and_then(|k| self.grid[k])
    }

    fn set(&mut self, cell: Cell, slot: Option<Slot<L>>) {
        let k = self.index(cell).expect("cell inside the board");
        self.grid[k] = slot;
    }

    /// The entry at `cell`, if any.
    pub fn entry(&self, cell: Cell) -> Option<L> {
        self.slot(cell).map(|s| s.entry)
    }

    fn inside_corners(&self) -> Vec<Cell> {
        let mu = |i: usize| self.inner.get(i).copied().unwrap_or(0);
        (0..self.inner.len())
            .filter(|&i| mu(i) > 0 && (mu(i + 1) == 0 || mu(i + 1) + 1 < mu(i)))
            .map(|i| Cell::new(i + 1, mu(i) + i))
            .collect()
    }

    /// True once neither neighbour of the dot holds an entry.
    pub fn at_outside_corner(&self) -> bool {
        match self.dot {
            Some(d) => self.slot(d.right()).is_none() && self.slot(d.below()).is_none(),
            None => false,
        }
    }

    /// Moves one entry into the dot.
    pub fn elementary_slide(&mut self) -> Result<SlideMove> {
        let dot = self
            .dot
            .ok_or_else(|| Error::Invalid("no slide in progress".into()))?;
        let right = self.slot(dot.right());
        let below = self.slot(dot.below());

        if dot.is_diagonal() {
            let diag = Cell::new(dot.row + 1, dot.col + 1);
            if let (Some(r), Some(d)) = (right, self.slot(diag)) {
                if r.entry.is_marked() && d.entry.base() == r.entry.base() {
                    let moved_left = Slot {
                        entry: r.entry.with_mark(d.entry.is_marked()),
                        origin: r.origin,
                    };
                    let moved_up = Slot {
                        entry: d.entry.unmarked(),
                        origin: d.origin,
                    };
                    self.set(dot, Some(moved_left));
                    self.set(dot.right(), Some(moved_up));
                    self.set(diag, None);
                    self.dot = Some(diag);
                    return Ok(SlideMove::Exceptional);
                }
            }
        }

        let up = match (below, right) {
            (None, None) => return Err(Error::DotAtOutsideCorner(dot)),
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => {
                let up = rel_single(a.entry, b.entry);
                debug_assert_ne!(up, rel_double(b.entry, a.entry));
                up
            }
        };
        let from = if up { dot.below() } else { dot.right() };
        let moving = self.slot(from);
        self.set(dot, moving);
        self.set(from, None);
        self.dot = Some(from);
        Ok(if up { SlideMove::Up } else { SlideMove::Left })
    }

    /// Deletes the box holding the dot; it must sit at an outside corner.
    fn remove_dot(&mut self) {
        let dot = self.dot.take().expect("dot present");
        self.outer[dot.row - 1] -= 1;
    }

    fn run_slide(&mut self, corner: Cell, frames: Option<&mut Vec<Frame<L>>>) -> Result<()> {
        self.place_dot(corner)?;
        let mut frames = frames;
        if let Some(f) = frames.as_deref_mut() {
            f.push(self.frame());
        }
        while !self.at_outside_corner() {
            self.elementary_slide()?;
            if let Some(f) = frames.as_deref_mut() {
                f.push(self.frame());
            }
        }
        self.remove_dot();
        if let Some(f) = frames {
            f.push(self.frame());
        }
        Ok(())
    }

    fn partition(lengths: &[usize]) -> StrictPartition {
        let parts: Vec<u32> = lengths
            .iter()
            .take_while(|&&l| l > 0)
            .map(|&l| l as u32)
            .collect();
        StrictPartition::new(parts).expect("slides keep shapes strict")
    }

    fn current_shape(&self) -> SkewShape {
        SkewShape::new(Self::partition(&self.outer), Self::partition(&self.inner))
            .expect("inner stays inside outer")
    }

    fn into_parts(self) -> (ShiftedTableau<L>, Vec<(Cell, Cell)>) {
        let shape = self.current_shape();
        let mut entries = Vec::with_capacity(shape.size());
        let mut pairs = Vec::with_capacity(shape.size());
        for cell in shape.cells() {
            let slot = self.slot(cell).expect("every cell of the shape is filled");
            entries.push(slot.entry);
            pairs.push((slot.origin, cell));
        }
        let t = ShiftedTableau::from_row_major(shape, entries).expect("entries match shape");
        (t, pairs)
    }

    fn frame(&self) -> Frame<L> {
        let mut rows = Vec::new();
        for i in 1..=self.outer.len() {
            let lam = self.outer[i - 1];
            if lam == 0 {
                continue;
            }
            let start = self.inner[i - 1] + i;
            let row = (start..lam + i)
                .map(|j| {
                    let c = Cell::new(i, j);
                    if self.dot == Some(c) {
                        FrameEntry::Dot
                    } else {
                        FrameEntry::Entry(self.entry(c).expect("filled"))
                    }
                })
                .collect();
            rows.push(row);
        }
        Frame {
            outer: Self::partition(&self.outer),
            inner: Self::partition(&self.inner),
            rows,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameEntry<L> {
    Dot,
    Entry(L),
}

/// A snapshot of a slide in progress, printed in the tableau text format with `•` for the dot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame<L> {
    pub outer: StrictPartition,
    pub inner: StrictPartition,
    pub rows: Vec<Vec<FrameEntry<L>>>,
}

impl<L: fmt::Display> fmt::Display for Frame<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        FrameEntry::Dot => "•".to_string(),
                        FrameEntry::Entry(l) => l.to_string(),
                    })
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        let shape = if self.inner.is_empty() {
            self.outer.to_plain()
        } else {
            format!("{}/{}", self.outer.to_plain(), self.inner.to_plain())
        };
        write!(f, "{shape}: {}", rows.join(";"))
    }
}

/// Performs one full slide of `t` starting from the inside corner `corner`.
pub fn slide<L: Letter>(t: &ShiftedTableau<L>, corner: Cell) -> Result<ShiftedTableau<L>> {
    let mut state = SlideState::load(t);
    state.run_slide(corner, None)?;
    Ok(state.into_parts().0)
}

/// How the next inside corner is picked during rectification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CornerPolicy {
    /// the corner of the bottom-most inner row first
    #[default]
    BottomFirst,
    /// the corner of the top inner row first
    TopFirst,
    /// uniformly random among the current inside corners
    Seeded(u64),
}

impl std::str::FromStr for CornerPolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "bottom" => Ok(Self::BottomFirst),
            "top" => Ok(Self::TopFirst),
            other => other
                .strip_prefix("seed:")
                .and_then(|n| n.parse().ok())
                .map(Self::Seeded)
                .ok_or_else(|| format!("unknown corner policy {other:?}; use bottom, top or seed:<n>")),
        }
    }
}

/// Bijection from the cells of the original skew shape to the cells of the rectified shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<PositionPair>", from = "Vec<PositionPair>")]
pub struct PositionMap {
    pairs: BTreeMap<Cell, Cell>,
}

#[derive(Clone, Copy, Serialize, Deserialize)]
struct PositionPair {
    from: Cell,
    to: Cell,
}

impl From<PositionMap> for Vec<PositionPair> {
    fn from(m: PositionMap) -> Self {
        m.iter().map(|(from, to)| PositionPair { from, to }).collect()
    }
}

impl From<Vec<PositionPair>> for PositionMap {
    fn from(pairs: Vec<PositionPair>) -> Self {
        Self {
            pairs: pairs.into_iter().map(|p| (p.from, p.to)).collect(),
        }
    }
}

impl PositionMap {
    pub fn get(&self, source: Cell) -> Option<Cell> {
        self.pairs.get(&source).copied()
    }

    /// Target cell → source cell.
    pub fn inverse(&self) -> BTreeMap<Cell, Cell> {
        self.pairs.iter().map(|(&s, &t)| (t, s)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Cell, Cell)> + '_ {
        self.pairs.iter().map(|(&s, &t)| (s, t))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.iter().all(|(s, t)| s == t)
    }

    /// JSON list of `{"from": [i, j], "to": [i', j']}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rectification<L> {
    pub tableau: ShiftedTableau<L>,
    pub positions: PositionMap,
}

/// Jeu de taquin: slides from inside corners, chosen by `policy`, until the shape is normal.
pub fn rectify<L: Letter>(t: &ShiftedTableau<L>, policy: CornerPolicy) -> Rectification<L> {
    rectify_inner(t, policy, None)
}

/// Like [`rectify`], also returning every intermediate frame.
pub fn rectify_traced<L: Letter>(t: &ShiftedTableau<L>, policy: CornerPolicy) -> (Rectification<L>, Vec<Frame<L>>) {
    let mut frames = Vec::new();
    let r = rectify_inner(t, policy, Some(&mut frames));
    (r, frames)
}

fn rectify_inner<L: Letter>(
    t: &ShiftedTableau<L>,
    policy: CornerPolicy,
    mut frames: Option<&mut Vec<Frame<L>>>,
) -> Rectification<L> {
    let mut state = SlideState::load(t);
    if let Some(f) = frames.as_deref_mut() {
        f.push(state.frame());
    }
    let mut rng = match policy {
        CornerPolicy::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    loop {
        let corners = state.inside_corners();
        if corners.is_empty() {
            break;
        }
        let pick = match (&policy, rng.as_mut()) {
            (CornerPolicy::BottomFirst, _) => corners.len() - 1,
            (CornerPolicy::TopFirst, _) => 0,
            (_, Some(r)) => r.gen_range(0..corners.len()),
            (_, None) => unreachable!("seeded policy always has an rng"),
        };
        state
            .run_slide(corners[pick], frames.as_deref_mut())
            .expect("inside corner from the list");
    }
    let (tableau, pairs) = state.into_parts();
    Rectification {
        tableau,
        positions: PositionMap {
            pairs: pairs.into_iter().collect(),
        },
    }
}
