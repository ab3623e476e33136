//! Subscript labelings of tableaux and words, and transport of variables along the
//! position bijection of rectification.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::jdt::{rectify, CornerPolicy};
use crate::shapes::{Cell, SkewShape, StrictPartition};
use crate::tableaux::{enumerate, validate, Content, Kind, LabeledLetter, MarkedLetter, ShiftedTableau};
use crate::words::Word;

/// Labels every entry so that all entries become distinct.
///
/// For each base, marked entries are numbered from the top row down, then the unmarked
/// ones continue the count from left to right.
pub fn phi_t(t: &ShiftedTableau<MarkedLetter>) -> ShiftedTableau<LabeledLetter> {
    let mut by_base: BTreeMap<u32, (Vec<Cell>, Vec<Cell>)> = BTreeMap::new();
    for (cell, l) in t.iter() {
        let slot = by_base.entry(l.base).or_default();
        if l.marked {
            slot.0.push(cell);
        } else {
            slot.1.push(cell);
        }
    }
    let mut labels: HashMap<Cell, u32> = HashMap::new();
    for (_, (mut marked, mut unmarked)) in by_base {
        marked.sort_by_key(|c| (c.row, c.col));
        unmarked.sort_by_key(|c| (c.col, c.row));
        for (k, cell) in marked.into_iter().chain(unmarked).enumerate() {
            labels.insert(cell, k as u32 + 1);
        }
    }
    let entries = t
        .iter()
        .map(|(cell, l)| LabeledLetter::new(l.base, labels[&cell], l.marked))
        .collect();
    ShiftedTableau::from_row_major(t.shape().clone(), entries).expect("same shape")
}

/// Drops the subscripts; fails if what is left is not a QSST.
pub fn phi_t_inverse(t: &ShiftedTableau<LabeledLetter>) -> Result<ShiftedTableau<MarkedLetter>> {
    let plain = t.map(|l| l.strip_label());
    validate(Kind::Q, &plain).map_err(|v| Error::InvalidTableau(v.to_string()))?;
    Ok(plain)
}

/// Labels a word: for each base, marked occurrences from right to left, then unmarked
/// ones from left to right. Marks are dropped.
pub fn phi_w(w: &Word<MarkedLetter>) -> Word<LabeledLetter> {
    let letters = w.letters();
    let mut next: HashMap<u32, u32> = HashMap::new();
    let mut labels = vec![0; letters.len()];
    for (k, l) in letters.iter().enumerate().rev() {
        if l.marked {
            let n = next.entry(l.base).or_insert(0);
            *n += 1;
            labels[k] = *n;
        }
    }
    for (k, l) in letters.iter().enumerate() {
        if !l.marked {
            let n = next.entry(l.base).or_insert(0);
            *n += 1;
            labels[k] = *n;
        }
    }
    Word(
        letters
            .iter()
            .zip(labels)
            .map(|(l, label)| LabeledLetter::new(l.base, label, false))
            .collect(),
    )
}

/// A variable named after the cell it originally sits in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VariableId(pub Cell);

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}_{}", self.0.row, self.0.col)
    }
}

impl FromStr for VariableId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let bad = || format!("expected a variable like v1_4, found {s:?}");
        let (i, j) = s.trim().strip_prefix('v').and_then(|r| r.split_once('_')).ok_or_else(bad)?;
        let row: usize = i.parse().map_err(|_| bad())?;
        let col: usize = j.parse().map_err(|_| bad())?;
        if row == 0 || col < row {
            return Err(bad());
        }
        Ok(Self(Cell::new(row, col)))
    }
}

pub type VariableTableau = ShiftedTableau<VariableId>;

/// Each cell holds the variable named after itself.
pub fn identity_variables(shape: &SkewShape) -> VariableTableau {
    let entries = shape.cells().into_iter().map(VariableId).collect();
    ShiftedTableau::from_row_major(shape.clone(), entries).expect("one variable per cell")
}

/// `v_L`: the variables of `v` moved along the cells of `L` during rectification.
pub fn transport(v: &VariableTableau, l: &ShiftedTableau<MarkedLetter>) -> Result<VariableTableau> {
    if v.shape() != l.shape() {
        return Err(Error::ShapeMismatch(v.shape().to_string(), l.shape().to_string()));
    }
    let rect = rectify(&phi_t(l), CornerPolicy::default());
    let sources = rect.positions.inverse();
    let shape = rect.tableau.shape().clone();
    let entries = shape
        .cells()
        .into_iter()
        .map(|target| *v.get(sources[&target]).expect("source cell in shape"))
        .collect();
    ShiftedTableau::from_row_major(shape, entries)
}

/// Row `i` of `ν` filled with `ν_i` copies of `i`.
pub fn superstandard_content(nu: &StrictPartition) -> Content {
    Content::new(nu.parts().to_vec())
}

/// One variable arrangement `v_L` per rectified shape `ν`, taken from the first `L` (in
/// enumeration order with the superstandard content of `ν`) that rectifies to shape `ν`.
pub fn u_representatives(shape: &SkewShape, v: &VariableTableau) -> Result<BTreeMap<StrictPartition, VariableTableau>> {
    let mut reps = BTreeMap::new();
    if shape.size() == 0 {
        return Ok(reps);
    }
    for nu in StrictPartition::all_of_weight(shape.size() as u32) {
        if !shape.outer().contains(&nu) {
            continue;
        }
        let content = superstandard_content(&nu);
        let found = enumerate(Kind::Q, shape, nu.len() as u32, Some(&content))
            .find(|l| rect_shape(l) == nu);
        if let Some(l) = found {
            reps.insert(nu, transport(v, &l)?);
        }
    }
    Ok(reps)
}

/// Every distinct `v_L` over the `L` of a given content, grouped by rectified shape.
pub fn all_transports(
    shape: &SkewShape,
    v: &VariableTableau,
    content: &Content,
) -> Result<BTreeMap<StrictPartition, Vec<VariableTableau>>> {
    let mut out: BTreeMap<StrictPartition, Vec<VariableTableau>> = BTreeMap::new();
    for l in enumerate(Kind::Q, shape, content.max_base(), Some(content)) {
        let moved = transport(v, &l)?;
        let nu = moved.shape().outer().clone();
        let bucket = out.entry(nu).or_default();
        if !bucket.contains(&moved) {
            bucket.push(moved);
        }
    }
    Ok(out)
}

fn rect_shape(l: &ShiftedTableau<MarkedLetter>) -> StrictPartition {
    rectify(l, CornerPolicy::default()).tableau.shape().outer().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::row_word;

    fn tab(shape: &str, text: &str) -> ShiftedTableau<MarkedLetter> {
        ShiftedTableau::parse(&shape.parse().unwrap(), text).unwrap()
    }

    #[test]
    fn phi_t_examples() {
        let l = tab("4,3,1", "1',1,2',2;2',2,3;3");
        assert_eq!(phi_t(&l).to_string(), "1'_1,1_2,2'_1,2_4;2'_2,2_3,3_2;3_1");
        assert_eq!(phi_t(&tab("1", "2")).to_string(), "2_1");
        let l = tab("8,3,1/3,1", "1,2',3,4,4;2',4;2'");
        assert_eq!(phi_t(&l).to_string(), "1_1,2'_1,3_1,4_2,4_3;2'_2,4_1;2'_3");
    }

    #[test]
    fn phi_t_inverse_strips_and_validates() {
        for (shape, text) in [("4,3,1", "1',1,2',2;2',2,3;3"), ("8,3,1/3,1", "1,2',3,4,4;2',4;2'")] {
            let l = tab(shape, text);
            assert_eq!(phi_t_inverse(&phi_t(&l)).unwrap(), l);
        }
        let one = ShiftedTableau::<LabeledLetter>::parse(&"1".parse().unwrap(), "2_1").unwrap();
        assert_eq!(phi_t_inverse(&one).unwrap().to_string(), "2");
        // 2 before 1 in a row
        let bad = ShiftedTableau::<LabeledLetter>::parse(&"2".parse().unwrap(), "2_1,1_1").unwrap();
        assert!(matches!(phi_t_inverse(&bad), Err(Error::InvalidTableau(_))));
    }

    #[test]
    fn phi_w_examples() {
        let w: Word<MarkedLetter> = "3 2' 2 3 1' 1 2' 2".parse().unwrap();
        assert_eq!(phi_w(&w).to_string(), "3_1 2_2 2_3 3_2 1_1 1_2 2_1 2_4");
        let w: Word<MarkedLetter> = "1 2 3".parse().unwrap();
        assert_eq!(phi_w(&w).to_string(), "1_1 2_1 3_1");
    }

    #[test]
    fn phi_w_commutes_with_row_word() {
        let l = tab("4,3,1", "1',1,2',2;2',2,3;3");
        assert_eq!(phi_w(&row_word(&l)), row_word(&phi_t(&l)).unmark());
    }

    #[test]
    fn variable_ids_round_trip() {
        let v: VariableId = "v1_4".parse().unwrap();
        assert_eq!(v, VariableId(Cell::new(1, 4)));
        assert_eq!(v.to_string(), "v1_4");
        assert!("v2_1".parse::<VariableId>().is_err());
        assert!("x1_1".parse::<VariableId>().is_err());
    }

    #[test]
    fn transport_of_normal_tableau_is_identity() {
        let l = tab("4,3,1", "1',1,2',2;2',2,3;3");
        let v = identity_variables(l.shape());
        assert_eq!(transport(&v, &l).unwrap(), v);
    }

    #[test]
    fn transport_worked_example() {
        let l = tab("8,3,1/3,1", "1,2',3,4,4;2',4;2'");
        let v = identity_variables(l.shape());
        let moved = transport(&v, &l).unwrap();
        assert_eq!(moved.shape().to_string(), "(6,2)");
        assert_eq!(moved.to_string(), "v1_4,v1_5,v3_3,v1_6,v1_7,v1_8;v2_3,v2_4");
    }

    #[test]
    fn transport_keeps_arm_at_end_of_first_row() {
        let shape: SkewShape = "8,3,1/3,1".parse().unwrap();
        let v = identity_variables(&shape);
        let arm: Vec<VariableId> = shape.arm_body().arm.into_iter().map(VariableId).collect();
        assert_eq!(arm.len(), 2);
        let mut seen = 0;
        for l in enumerate(Kind::Q, &shape, 3, None).step_by(7).take(400) {
            let moved = transport(&v, &l).unwrap();
            let row = &moved.rows()[0];
            assert_eq!(&row[row.len() - 2..], &arm[..]);
            seen += 1;
        }
        assert!(seen > 100);
    }

    #[test]
    fn representatives() {
        let shape: SkewShape = "4,2".parse().unwrap();
        let v = identity_variables(&shape);
        let reps = u_representatives(&shape, &v).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[&"4,2".parse().unwrap()], v);

        let shape: SkewShape = "6,3,1/2,1".parse().unwrap();
        let v = identity_variables(&shape);
        let keys: Vec<String> = u_representatives(&shape, &v).unwrap().keys().map(|k| k.to_string()).collect();
        assert_eq!(keys, ["(4,2,1)", "(4,3)", "(5,2)", "(6,1)"]);

        let shape: SkewShape = "8,3,1/3,1".parse().unwrap();
        let v = identity_variables(&shape);
        let tail = [VariableId(Cell::new(1, 7)), VariableId(Cell::new(1, 8))];
        for rep in u_representatives(&shape, &v).unwrap().values() {
            let row = &rep.rows()[0];
            assert_eq!(&row[row.len() - 2..], &tail);
        }

        let empty: SkewShape = "2,1/2,1".parse().unwrap();
        assert!(u_representatives(&empty, &identity_variables(&empty)).unwrap().is_empty());
    }

    #[test]
    fn transports_agree_on_arm_and_permute_body() {
        let shape: SkewShape = "6,3,1/2,1".parse().unwrap();
        let v = identity_variables(&shape);
        let arm: Vec<VariableId> = shape.arm_body().arm.into_iter().map(VariableId).collect();
        for nu in ["4,2,1", "4,3", "5,2", "6,1"] {
            let nu: StrictPartition = nu.parse().unwrap();
            let all = all_transports(&shape, &v, &superstandard_content(&nu)).unwrap();
            for t in &all[&nu] {
                let row = &t.rows()[0];
                assert_eq!(&row[row.len() - arm.len()..], &arm[..]);
                let mut ids: Vec<_> = t.entries().copied().collect();
                ids.sort();
                let mut expected: Vec<_> = v.entries().copied().collect();
                expected.sort();
                assert_eq!(ids, expected);
            }
        }
    }
}
