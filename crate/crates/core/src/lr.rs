//! Shifted Littlewood-Richardson coefficients by counting rectification fibers, and the
//! content-by-content counting identities behind the product and skew expansions.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::jdt::{rectify, CornerPolicy};
use crate::shapes::{SkewShape, StrictPartition};
use crate::tableaux::{enumerate, Content, Kind, MarkedLetter, ShiftedTableau};

/// Number of tableaux of each content among the fillings of `shape` with bases `≤ max_base`.
pub type ContentCountTable = BTreeMap<Content, u64>;

/// The normal tableau of shape `nu` whose row `i` is filled with unmarked `i`.
pub fn superstandard(nu: &StrictPartition) -> ShiftedTableau<MarkedLetter> {
    let rows = (1..=nu.len())
        .map(|i| vec![MarkedLetter::plain(i as u32); nu.part(i) as usize])
        .collect();
    ShiftedTableau::new(SkewShape::normal(nu.clone()), rows).expect("row lengths follow nu")
}

/// Number of `L ∈ QSST(shape)` rectifying to `target`.
pub fn fiber_size(shape: &SkewShape, target: &ShiftedTableau<MarkedLetter>) -> u64 {
    if shape.size() != target.len() {
        return 0;
    }
    let content = target.content();
    enumerate(Kind::Q, shape, content.max_base(), Some(&content))
        .filter(|l| &rectify(l, CornerPolicy::default()).tableau == target)
        .count() as u64
}

/// `f^λ_{μν}`, counted as the fiber over the superstandard tableau of shape `ν`.
pub fn lr_coefficient(mu: &StrictPartition, nu: &StrictPartition, lambda: &StrictPartition) -> u64 {
    if mu.weight() + nu.weight() != lambda.weight() || !lambda.contains(mu) || !lambda.contains(nu) {
        return 0;
    }
    let shape = SkewShape::new(lambda.clone(), mu.clone()).expect("mu inside lambda");
    fiber_size(&shape, &superstandard(nu))
}

/// Every `λ` with `f^λ_{μν} > 0`.
pub fn g_p(mu: &StrictPartition, nu: &StrictPartition) -> BTreeMap<StrictPartition, u64> {
    StrictPartition::all_of_weight(mu.weight() + nu.weight())
        .into_par_iter()
        .map(|lambda| {
            let f = lr_coefficient(mu, nu, &lambda);
            (lambda, f)
        })
        .filter(|(_, f)| *f > 0)
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Every `ν` with `f^λ_{μν} > 0`, for `shape = λ/μ`.
pub fn g_q(shape: &SkewShape) -> BTreeMap<StrictPartition, u64> {
    StrictPartition::all_of_weight(shape.size() as u32)
        .into_par_iter()
        .map(|nu| {
            let f = lr_coefficient(shape.inner(), &nu, shape.outer());
            (nu, f)
        })
        .filter(|(_, f)| *f > 0)
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

pub fn content_counts(kind: Kind, shape: &SkewShape, max_base: u32) -> ContentCountTable {
    let mut table = ContentCountTable::new();
    let mut it = enumerate(kind, shape, max_base, None);
    while let Some(letters) = it.next_filling() {
        let c = crate::tableaux::content_of(letters.iter().copied());
        *table.entry(c).or_insert(0) += 1;
    }
    table
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContentRow {
    pub content: Content,
    pub lhs: u64,
    pub rhs: u64,
}

/// Side-by-side counts for every content of the right weight supported on `1..=max_base`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub coefficients: BTreeMap<String, u64>,
    pub rows: Vec<ContentRow>,
    pub equal: bool,
}

impl CountReport {
    fn build(coefficients: &BTreeMap<StrictPartition, u64>, contents: Vec<Content>, lhs: &ContentCountTable, rhs: &ContentCountTable) -> Self {
        let rows: Vec<ContentRow> = contents
            .into_iter()
            .map(|c| ContentRow {
                lhs: lhs.get(&c).copied().unwrap_or(0),
                rhs: rhs.get(&c).copied().unwrap_or(0),
                content: c,
            })
            .collect();
        let equal = rows.iter().all(|r| r.lhs == r.rhs);
        Self {
            coefficients: coefficients.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            rows,
            equal,
        }
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &ContentRow> {
        self.rows.iter().filter(|r| r.lhs != r.rhs)
    }
}

fn add_scaled(into: &mut ContentCountTable, from: &ContentCountTable, factor: u64) {
    for (c, n) in from {
        *into.entry(c.clone()).or_insert(0) += factor * n;
    }
}

/// Pairs `(M₀, M₁) ∈ PSST(μ) × PSST(ν)` against `Σ_λ f^λ_{μν} · PSST(λ)`, content by content.
pub fn count_identity_check(mu: &StrictPartition, nu: &StrictPartition, max_base: u32) -> CountReport {
    let left = content_counts(Kind::P, &SkewShape::normal(mu.clone()), max_base);
    let right = content_counts(Kind::P, &SkewShape::normal(nu.clone()), max_base);
    let mut lhs = ContentCountTable::new();
    for (a, x) in &left {
        for (b, y) in &right {
            let len = a.counts().len().max(b.counts().len());
            let sum = (1..=len as u32).map(|k| a.get(k) + b.get(k)).collect();
            *lhs.entry(Content::new(sum)).or_insert(0) += x * y;
        }
    }
    let coefficients = g_p(mu, nu);
    let mut rhs = ContentCountTable::new();
    for (lambda, f) in &coefficients {
        add_scaled(&mut rhs, &content_counts(Kind::P, &SkewShape::normal(lambda.clone()), max_base), *f);
    }
    let contents = Content::all(mu.weight() + nu.weight(), max_base);
    CountReport::build(&coefficients, contents, &lhs, &rhs)
}

/// `QSST(λ/μ)` against `Σ_ν f^λ_{μν} · QSST(ν)`, content by content.
pub fn skew_count_identity_check(shape: &SkewShape, max_base: u32) -> CountReport {
    let lhs = content_counts(Kind::Q, shape, max_base);
    let coefficients = g_q(shape);
    let mut rhs = ContentCountTable::new();
    for (nu, f) in &coefficients {
        add_scaled(&mut rhs, &content_counts(Kind::Q, &SkewShape::normal(nu.clone()), max_base), *f);
    }
    let contents = Content::all(shape.size() as u32, max_base);
    CountReport::build(&coefficients, contents, &lhs, &rhs)
}

/// Fiber sizes over every `M ∈ QSST(ν)` with bases `≤ max_base`; a single value when the
/// fiber size does not depend on `M`.
pub fn fiber_sizes(shape: &SkewShape, nu: &StrictPartition, max_base: u32) -> BTreeSet<u64> {
    let mut fibers: HashMap<ShiftedTableau<MarkedLetter>, u64> = enumerate(Kind::Q, &SkewShape::normal(nu.clone()), max_base, None)
        .map(|m| (m, 0))
        .collect();
    let mut it = enumerate(Kind::Q, shape, max_base, None);
    while let Some(letters) = it.next_filling() {
        let l = ShiftedTableau::from_row_major(shape.clone(), letters.to_vec()).expect("filling matches shape");
        let rect = rectify(&l, CornerPolicy::default()).tableau;
        if let Some(n) = fibers.get_mut(&rect) {
            *n += 1;
        }
    }
    fibers.into_values().collect()
}
