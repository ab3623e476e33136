//! Strict partitions, skew shifted shapes and their cell geometry.
//!
//! Cells use matrix orientation with 1-based indices: row `i` of the shifted
//! diagram of `λ` occupies columns `i ..= λ_i + i - 1`.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

/// A box `(row, col)` of a shifted diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    pub fn is_diagonal(&self) -> bool {
        self.row == self.col
    }

    pub fn right(&self) -> Cell {
        Cell::new(self.row, self.col + 1)
    }

    pub fn below(&self) -> Cell {
        Cell::new(self.row + 1, self.col)
    }
}

impl From<(usize, usize)> for Cell {
    fn from((row, col): (usize, usize)) -> Self {
        Cell::new(row, col)
    }
}

impl From<Cell> for (usize, usize) {
    fn from(c: Cell) -> Self {
        (c.row, c.col)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A strictly decreasing sequence of positive integers. The empty sequence is `∅`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct StrictPartition {
    parts: Vec<u32>,
}

impl StrictPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let positive = parts.iter().all(|&p| p > 0);
        let decreasing = parts.windows(2).all(|w| w[0] > w[1]);
        if positive && decreasing {
            Ok(Self { parts })
        } else {
            Err(Error::NotStrict(parts))
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `λ_i` with 1-based `i`; zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `SD(other) ⊆ SD(self)`.
    pub fn contains(&self, other: &StrictPartition) -> bool {
        other.len() <= self.len() && (1..=other.len()).all(|i| other.part(i) <= self.part(i))
    }

    /// All strict partitions of `n`, in increasing lexicographic order of parts.
    pub fn all_of_weight(n: u32) -> Vec<StrictPartition> {
        fn rec(remaining: u32, max_part: u32, acc: &mut Vec<u32>, out: &mut Vec<StrictPartition>) {
            if remaining == 0 {
                out.push(StrictPartition { parts: acc.clone() });
                return;
            }
            for p in (1..=max_part.min(remaining)).rev() {
                acc.push(p);
                rec(remaining - p, p - 1, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Plain comma-separated form, as accepted on the command line.
    pub fn to_plain(&self) -> String {
        self.parts
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    fn parse_at(s: &str, full: &str, offset: usize) -> std::result::Result<Self, ParseError> {
        let trimmed = s.trim();
        let lead = offset + (s.len() - s.trim_start().len());
        let (body, body_offset) = match trimmed.strip_prefix('(') {
            Some(rest) => match rest.strip_suffix(')') {
                Some(inner) => (inner, lead + 1),
                None => {
                    return Err(ParseError::new(full, lead + trimmed.len(), "missing ')'"));
                }
            },
            None => (trimmed, lead),
        };
        if body.trim().is_empty() || body.trim() == "0" || body.trim() == "∅" {
            return Ok(Self::empty());
        }
        let mut parts = Vec::new();
        let mut pos = body_offset;
        for token in body.split(',') {
            let t = token.trim();
            let at = pos + (token.len() - token.trim_start().len());
            let value: u32 = t
                .parse()
                .map_err(|_| ParseError::new(full, at, format!("expected a positive integer, found {t:?}")))?;
            if value == 0 {
                return Err(ParseError::new(full, at, "parts must be positive"));
            }
            if let Some(&prev) = parts.last() {
                if value >= prev {
                    return Err(ParseError::new(
                        full,
                        at,
                        format!("part {value} does not decrease strictly after {prev}"),
                    ));
                }
            }
            parts.push(value);
            pos += token.len() + 1;
        }
        Ok(Self { parts })
    }
}

impl TryFrom<Vec<u32>> for StrictPartition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<StrictPartition> for Vec<u32> {
    fn from(p: StrictPartition) -> Self {
        p.parts
    }
}

impl FromStr for StrictPartition {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        Self::parse_at(s, s, 0)
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_plain())
    }
}

/// A skew strict partition `λ/μ` together with its shifted diagram `SD(λ) ∖ SD(μ)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSkewShape")]
pub struct SkewShape {
    outer: StrictPartition,
    inner: StrictPartition,
}

#[derive(Deserialize)]
struct RawSkewShape {
    outer: StrictPartition,
    #[serde(default)]
    inner: StrictPartition,
}

impl TryFrom<RawSkewShape> for SkewShape {
    type Error = Error;

    fn try_from(raw: RawSkewShape) -> Result<Self> {
        Self::new(raw.outer, raw.inner)
    }
}

/// The split of a skew shape into its shifted arm (a suffix of row 1) and its body.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArmBody {
    pub arm: Vec<Cell>,
    pub body: Vec<Cell>,
}

impl SkewShape {
    pub fn new(outer: StrictPartition, inner: StrictPartition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::NotContained {
                outer: outer.parts.clone(),
                inner: inner.parts.clone(),
            });
        }
        Ok(Self { outer, inner })
    }

    pub fn normal(outer: StrictPartition) -> Self {
        Self {
            outer,
            inner: StrictPartition::empty(),
        }
    }

    pub fn outer(&self) -> &StrictPartition {
        &self.outer
    }

    pub fn inner(&self) -> &StrictPartition {
        &self.inner
    }

    pub fn is_normal(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn size(&self) -> usize {
        (self.outer.weight() - self.inner.weight()) as usize
    }

    pub fn num_rows(&self) -> usize {
        self.outer.len()
    }

    /// Columns occupied by row `i` (1-based); empty when the row is fully deleted.
    pub fn row_cols(&self, i: usize) -> RangeInclusive<usize> {
        let lam = self.outer.part(i) as usize;
        let mu = self.inner.part(i) as usize;
        (mu + i)..=(lam + i - 1)
    }

    pub fn row_len(&self, i: usize) -> usize {
        (self.outer.part(i) - self.inner.part(i)) as usize
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.row <= self.num_rows() && self.row_cols(cell.row).contains(&cell.col)
    }

    /// Cells of `SD(λ/μ)` in row-major order.
    pub fn cells(&self) -> Vec<Cell> {
        (1..=self.num_rows())
            .flat_map(|i| self.row_cols(i).map(move |j| Cell::new(i, j)))
            .collect()
    }

    /// Cells with neither `(i+1, j)` nor `(i, j+1)` in the shape.
    pub fn corners(&self) -> Vec<Cell> {
        self.cells()
            .into_iter()
            .filter(|c| !self.contains(c.below()) && !self.contains(c.right()))
            .collect()
    }

    /// Corners of the deleted diagram `μ`, in row order.
    pub fn inside_corners(&self) -> Vec<Cell> {
        let inner = SkewShape::normal(self.inner.clone());
        inner.corners()
    }

    /// `m = min{λ_2, Σ_{i≥2}(λ_i − μ_i)}`.
    pub fn arm_offset(&self) -> usize {
        let lower: u32 = (2..=self.num_rows())
            .map(|i| self.outer.part(i) - self.inner.part(i))
            .sum();
        self.outer.part(2).min(lower) as usize
    }

    /// Shifted arm: cells `(1, m+μ_1+1) ..= (1, λ_1)`; everything else is body.
    pub fn arm_body(&self) -> ArmBody {
        let mut arm = Vec::new();
        if !self.outer.is_empty() {
            let start = self.arm_offset() + self.inner.part(1) as usize + 1;
            let end = self.outer.part(1) as usize;
            arm = (start..=end).map(|j| Cell::new(1, j)).collect();
        }
        let body = self
            .cells()
            .into_iter()
            .filter(|c| !arm.contains(c))
            .collect();
        ArmBody { arm, body }
    }

    /// Plain `outer/inner` text form; the inner part is omitted for normal shapes.
    pub fn to_plain(&self) -> String {
        if self.is_normal() {
            self.outer.to_plain()
        } else {
            format!("{}/{}", self.outer.to_plain(), self.inner.to_plain())
        }
    }
}

impl From<StrictPartition> for SkewShape {
    fn from(outer: StrictPartition) -> Self {
        SkewShape::normal(outer)
    }
}

impl FromStr for SkewShape {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let (outer, inner) = match s.find('/') {
            Some(idx) => (
                StrictPartition::parse_at(&s[..idx], s, 0)?,
                StrictPartition::parse_at(&s[idx + 1..], s, idx + 1)?,
            ),
            None => (StrictPartition::parse_at(s, s, 0)?, StrictPartition::empty()),
        };
        SkewShape::new(outer, inner).map_err(|e| ParseError::new(s, s.find('/').unwrap_or(0), e.to_string()))
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_normal() {
            write!(f, "{}", self.outer)
        } else {
            write!(f, "{}/{}", self.outer, self.inner)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(s: &str) -> SkewShape {
        s.parse().unwrap()
    }

    fn cells(pairs: &[(usize, usize)]) -> Vec<Cell> {
        pairs.iter().map(|&(i, j)| Cell::new(i, j)).collect()
    }

    #[test]
    fn shifted_cells_examples() {
        assert_eq!(shape("3,1").cells(), cells(&[(1, 1), (1, 2), (1, 3), (2, 2)]));
        assert_eq!(
            shape("6,3,1/3,1").cells(),
            cells(&[(1, 4), (1, 5), (1, 6), (2, 3), (2, 4), (3, 3)])
        );
        assert!(shape("").cells().is_empty());
        assert!(shape("0/0").cells().is_empty());
    }

    #[test]
    fn corner_examples() {
        assert_eq!(shape("3,1").corners(), cells(&[(1, 3), (2, 2)]));
        assert_eq!(shape("6,3,1").corners(), cells(&[(1, 6), (2, 4), (3, 3)]));
        assert_eq!(shape("6,3,1/3,1").inside_corners(), cells(&[(1, 3), (2, 2)]));
        assert_eq!(shape("6,3,1/2,1").inside_corners(), cells(&[(2, 2)]));
        assert!(shape("4,2").inside_corners().is_empty());
    }

    #[test]
    fn arm_body_examples() {
        let s = shape("6,3/2,1");
        assert_eq!(s.arm_offset(), 2);
        assert_eq!(s.arm_body().arm, cells(&[(1, 5), (1, 6)]));

        let s = shape("8,3,1/3,1");
        assert_eq!(s.arm_offset(), 3);
        assert_eq!(s.arm_body().arm, cells(&[(1, 7), (1, 8)]));
        assert_eq!(
            s.arm_body().body,
            cells(&[(1, 4), (1, 5), (1, 6), (2, 3), (2, 4), (3, 3)])
        );

        let s = shape("2,1");
        assert_eq!(s.arm_offset(), 1);
        let ab = s.arm_body();
        assert_eq!(ab.arm, cells(&[(1, 2)]));
        assert_eq!(ab.body, cells(&[(1, 1), (2, 2)]));

        // degenerate single box: the formula takes the whole shape as arm
        assert_eq!(shape("1").arm_body().arm, cells(&[(1, 1)]));
        assert!(shape("").arm_body().arm.is_empty());
        // 6,3,1/2,1: m = min{3, 3} = 3, arm starts at column 6
        assert_eq!(shape("6,3,1/2,1").arm_body().arm, cells(&[(1, 6)]));
    }

    #[test]
    fn rejects_invalid_input() {
        assert!(StrictPartition::new(vec![3, 3]).is_err());
        assert!(StrictPartition::new(vec![2, 0]).is_err());
        let err = "3,3,1".parse::<StrictPartition>().unwrap_err();
        assert_eq!(err.position, 2);
        let err = "4,x".parse::<StrictPartition>().unwrap_err();
        assert_eq!(err.position, 2);
        assert!("3,1/4".parse::<SkewShape>().is_err());
        assert!("3/2,1".parse::<SkewShape>().is_err());
    }

    #[test]
    fn text_round_trip() {
        for s in ["6,3,1/3,1", "5,2", "1", ""] {
            let sh = shape(s);
            assert_eq!(sh.to_plain(), s);
            assert_eq!(sh.to_string().parse::<SkewShape>().unwrap(), sh);
        }
        assert_eq!("(4,2,1)".parse::<StrictPartition>().unwrap().parts(), &[4, 2, 1]);
        assert_eq!("()".parse::<StrictPartition>().unwrap(), StrictPartition::empty());
    }

    #[test]
    fn json_form() {
        let sh = shape("6,3,1/3,1");
        let js = serde_json::to_string(&sh).unwrap();
        assert_eq!(js, r#"{"outer":[6,3,1],"inner":[3,1]}"#);
        assert_eq!(serde_json::from_str::<SkewShape>(&js).unwrap(), sh);
        assert!(serde_json::from_str::<SkewShape>(r#"{"outer":[2],"inner":[3]}"#).is_err());
        assert!(serde_json::from_str::<StrictPartition>("[2,2]").is_err());
    }

    #[test]
    fn strict_partitions_of_weight() {
        let p7: Vec<String> = StrictPartition::all_of_weight(7).iter().map(|p| p.to_string()).collect();
        assert_eq!(p7, ["(4,2,1)", "(4,3)", "(5,2)", "(6,1)", "(7)"]);
        assert_eq!(StrictPartition::all_of_weight(0), vec![StrictPartition::empty()]);
    }

    #[test]
    fn cell_count_matches_weights() {
        for n in 0..=8 {
            for outer in StrictPartition::all_of_weight(n) {
                for m in 0..=n {
                    for inner in StrictPartition::all_of_weight(m) {
                        if let Ok(sh) = SkewShape::new(outer.clone(), inner) {
                            let cells = sh.cells();
                            assert_eq!(cells.len(), sh.size());
                            assert!(cells.iter().all(|c| c.col >= c.row));
                            let ab = sh.arm_body();
                            assert_eq!(ab.arm.len() + ab.body.len(), cells.len());
                            assert!(ab.arm.iter().all(|c| c.row == 1 && sh.contains(*c)));
                            if let Some(last) = ab.arm.last() {
                                assert_eq!(last.col, sh.outer().part(1) as usize);
                            }
                        }
                    }
                }
            }
        }
    }
}
