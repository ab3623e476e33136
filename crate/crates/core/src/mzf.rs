//! Truncated Schur P-/Q-multiple zeta functions and the symmetrized expansion checks.
//!
//! A truncated value sums `1 / Π |m_ij|^{v_ij}` over the tableaux whose bases are at most
//! the truncation `N`. Exact mode works over big rationals and needs non-negative integer
//! exponents; approximate mode accepts any rational exponent and uses `f64`.
//!
//! The symmetrizations run over distinct rearrangements of the exponent values, each
//! weighted by the number of permutations producing it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::labeling::{identity_variables, u_representatives, VariableId, VariableTableau};
use crate::lr::{g_p, g_q};
use crate::shapes::{Cell, SkewShape, StrictPartition};
use crate::tableaux::{Enumerator, Kind, ShiftedTableau};

pub const DEFAULT_GUARD: usize = 8;

/// A rational exponent such as `2`, `3/2` or `1.5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent(pub Ratio<i64>);

impl Exponent {
    pub fn integer(n: i64) -> Self {
        Self(Ratio::from_integer(n))
    }

    pub fn as_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }

    /// The exponent as a non-negative integer, if it is one.
    pub fn as_exact(&self) -> Option<u32> {
        if self.0.is_integer() {
            u32::try_from(self.0.to_integer()).ok()
        } else {
            None
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Exponent {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let bad = || format!("expected an exponent like 2, 3/2 or 1.5, found {s:?}");
        let parse = |t: &str| t.parse::<i64>().map_err(|_| bad());
        if let Some((n, d)) = s.split_once('/') {
            let d = parse(d)?;
            if d == 0 {
                return Err(bad());
            }
            return Ok(Self(Ratio::new(parse(n)?, d)));
        }
        if let Some((whole, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let scale = 10i64.pow(frac.len() as u32);
            let negative = whole.starts_with('-');
            let whole = if whole.is_empty() || whole == "-" { 0 } else { parse(whole)? };
            let frac = parse(frac)?;
            let numer = whole.abs() * scale + frac;
            return Ok(Self(Ratio::new(if negative { -numer } else { numer }, scale)));
        }
        Ok(Self::integer(parse(s)?))
    }
}

pub type ExponentTableau = ShiftedTableau<Exponent>;

/// Reads exponents either in the tableau text form (`"2,2,3;2"`) or as a flat row-major
/// list (`"2,2,3,2"`).
pub fn parse_exponents(shape: &SkewShape, text: &str) -> Result<ExponentTableau> {
    if text.contains(';') || shape.num_rows() <= 1 {
        return Ok(ShiftedTableau::parse(shape, text)?);
    }
    let mut values = Vec::new();
    let mut offset = 0;
    for token in text.split(',') {
        let at = offset + (token.len() - token.trim_start().len());
        values.push(
            token
                .parse::<Exponent>()
                .map_err(|m| crate::error::ParseError::new(text, at, m))?,
        );
        offset += token.len() + 1;
    }
    if values.len() != shape.size() {
        return Err(crate::error::ParseError::new(
            text,
            text.len(),
            format!("expected {} exponents for shape {shape}, found {}", shape.size(), values.len()),
        )
        .into());
    }
    ShiftedTableau::from_row_major(shape.clone(), values)
}

/// The same exponent in every cell.
pub fn constant_exponents(shape: &SkewShape, value: Exponent) -> ExponentTableau {
    ShiftedTableau::from_row_major(shape.clone(), vec![value; shape.size()]).expect("one per cell")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Exact,
    Approx,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TruncatedValue {
    Exact(BigRational),
    Approx { value: f64, error_bound: f64 },
}

impl TruncatedValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            Self::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Self::Approx { value, .. } => *value,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            Self::Exact(r) => Some(r),
            Self::Approx { .. } => None,
        }
    }
}

impl fmt::Display for TruncatedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact(r) => write!(f, "{r}"),
            Self::Approx { value, error_bound } => write!(f, "{value:e} (±{error_bound:.1e})"),
        }
    }
}

impl Serialize for TruncatedValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Exact(r) => s.serialize_str(&r.to_string()),
            Self::Approx { value, error_bound } => {
                use serde::ser::SerializeMap;
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("value", value)?;
                m.serialize_entry("error_bound", error_bound)?;
                m.end()
            }
        }
    }
}

/// The tableaux of one shape and truncation, collapsed to their base vectors (bases in
/// row-major cell order) with multiplicities. Evaluating at many exponent vectors reuses it.
pub struct ZetaTable {
    cells: usize,
    truncation: u32,
    entries: Vec<(Vec<u32>, u64)>,
}

impl ZetaTable {
    pub fn new(kind: Kind, shape: &SkewShape, truncation: u32) -> Self {
        let mut counts: HashMap<Vec<u32>, u64> = HashMap::new();
        let mut it = Enumerator::new(kind, shape, truncation, None);
        while let Some(letters) = it.next_filling() {
            let bases: Vec<u32> = letters.iter().map(|l| l.base).collect();
            *counts.entry(bases).or_insert(0) += 1;
        }
        let mut entries: Vec<_> = counts.into_iter().collect();
        entries.sort();
        Self {
            cells: shape.size(),
            truncation,
            entries,
        }
    }

    /// Number of tableaux summed over.
    pub fn tableau_count(&self) -> u64 {
        self.entries.iter().map(|(_, c)| c).sum()
    }

    pub fn eval_exact(&self, exponents: &[u32]) -> BigRational {
        assert_eq!(exponents.len(), self.cells, "one exponent per cell");
        // common denominator lcm(1..N)^{Σv}
        let l = (1..=self.truncation.max(1) as u64).fold(BigInt::one(), |acc, b| acc.lcm(&BigInt::from(b)));
        let total: u32 = exponents.iter().sum();
        let mut powers: HashMap<(u32, u32), BigInt> = HashMap::new();
        let mut numer = BigInt::zero();
        for (bases, count) in &self.entries {
            let mut term = BigInt::from(*count);
            for (&b, &e) in bases.iter().zip(exponents) {
                if e == 0 {
                    continue;
                }
                let p = powers
                    .entry((b, e))
                    .or_insert_with(|| num_traits::pow(&l / BigInt::from(b), e as usize));
                term *= &*p;
            }
            numer += term;
        }
        BigRational::new(numer, num_traits::pow(l, total as usize))
    }

    pub fn eval_approx(&self, exponents: &[f64]) -> (f64, f64) {
        assert_eq!(exponents.len(), self.cells, "one exponent per cell");
        let mut sum = 0.0;
        let mut abs = 0.0;
        for (bases, count) in &self.entries {
            let term: f64 = bases
                .iter()
                .zip(exponents)
                .map(|(&b, &e)| (b as f64).powf(-e))
                .product::<f64>()
                * *count as f64;
            sum += term;
            abs += term.abs();
        }
        let ops = (self.cells + self.entries.len() + 2) as f64;
        (sum, abs * ops * f64::EPSILON)
    }

    fn eval(&self, exponents: &[Exponent], mode: Mode) -> Result<TruncatedValue> {
        match mode {
            Mode::Exact => Ok(TruncatedValue::Exact(self.eval_exact(&exact_exponents(exponents)?))),
            Mode::Approx => {
                let floats: Vec<f64> = exponents.iter().map(Exponent::as_f64).collect();
                let (value, error_bound) = self.eval_approx(&floats);
                Ok(TruncatedValue::Approx { value, error_bound })
            }
        }
    }
}

fn exact_exponents(exponents: &[Exponent]) -> Result<Vec<u32>> {
    exponents
        .iter()
        .map(|e| e.as_exact().ok_or_else(|| Error::NonIntegerExponent(e.to_string())))
        .collect()
}

/// `ζ_δ(v)` summed over tableaux with bases `≤ truncation`.
pub fn zeta_truncated(kind: Kind, exponents: &ExponentTableau, truncation: u32, mode: Mode) -> Result<TruncatedValue> {
    let values: Vec<Exponent> = exponents.entries().copied().collect();
    ZetaTable::new(kind, exponents.shape(), truncation).eval(&values, mode)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainContext {
    /// `≥ 1` everywhere and `> 1` on the corners
    Wq,
    /// `> 1` everywhere
    TheoremMain,
    /// `> 1` everywhere except the first-row cells from `m + μ_1 + 1` to `λ_1 − 1`, which
    /// may equal 1
    TheoremSkew,
}

impl FromStr for DomainContext {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "wq" | "WQ" => Ok(Self::Wq),
            "main" | "theorem_main" => Ok(Self::TheoremMain),
            "skew" | "theorem_skew" => Ok(Self::TheoremSkew),
            _ => Err(format!("unknown domain context {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DomainViolation {
    pub cell: Cell,
    pub value: String,
    pub requirement: &'static str,
}

/// Cells whose exponent lies outside the region required by `context`; empty when fine.
pub fn validate_domain(exponents: &ExponentTableau, context: DomainContext) -> Vec<DomainViolation> {
    let shape = exponents.shape();
    let one = Ratio::one();
    let corners = shape.corners();
    let relaxed_first_row = || {
        let start = shape.arm_offset() + shape.inner().part(1) as usize + 1;
        let end = (shape.outer().part(1) as usize).saturating_sub(1);
        start..=end
    };
    let mut out = Vec::new();
    for (cell, e) in exponents.iter() {
        let at_least_one = match context {
            DomainContext::Wq => !corners.contains(&cell),
            DomainContext::TheoremMain => false,
            DomainContext::TheoremSkew => cell.row == 1 && relaxed_first_row().contains(&cell.col),
        };
        let (ok, requirement) = if at_least_one {
            (e.0 >= one, ">= 1")
        } else {
            (e.0 > one, "> 1")
        };
        if !ok {
            out.push(DomainViolation {
                cell,
                value: e.to_string(),
                requirement,
            });
        }
    }
    out
}

/// Distinct rearrangements of `values`, each with the number of permutations giving it.
fn rearrangements(values: &[Exponent]) -> Vec<(Vec<Exponent>, u64)> {
    let mut current = values.to_vec();
    current.sort();
    let mut out = Vec::new();
    let mut multiplicity: u64 = 1;
    let mut run = 1;
    for k in 1..current.len() {
        if current[k] == current[k - 1] {
            run += 1;
            multiplicity *= run;
        } else {
            run = 1;
        }
    }
    loop {
        out.push((current.clone(), multiplicity));
        if !next_permutation(&mut current) {
            break;
        }
    }
    out
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn check_guard(size: usize, guard: usize) -> Result<()> {
    if size > guard {
        Err(Error::GuardExceeded { size, guard })
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub lhs: TruncatedValue,
    pub rhs: TruncatedValue,
    /// `None` in approximate mode
    pub equal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_difference: Option<f64>,
    pub truncation: u32,
    pub group_order: u64,
    pub orbits: usize,
    pub expansion: BTreeMap<String, u64>,
    pub domain_warnings: Vec<DomainViolation>,
}

fn sum_values(terms: Vec<(TruncatedValue, TruncatedValue)>, mode: Mode) -> (TruncatedValue, TruncatedValue) {
    match mode {
        Mode::Exact => {
            let (l, r) = terms.into_iter().fold(
                (BigRational::zero(), BigRational::zero()),
                |(l, r), (a, b)| (l + a.exact().expect("exact").clone(), r + b.exact().expect("exact").clone()),
            );
            (TruncatedValue::Exact(l), TruncatedValue::Exact(r))
        }
        Mode::Approx => {
            let mut acc = [(0.0, 0.0), (0.0, 0.0)];
            for (a, b) in terms {
                for (slot, v) in acc.iter_mut().zip([a, b]) {
                    if let TruncatedValue::Approx { value, error_bound } = v {
                        slot.0 += value;
                        slot.1 += error_bound;
                    }
                }
            }
            let wrap = |(value, e): (f64, f64)| TruncatedValue::Approx {
                value,
                error_bound: e + value.abs() * f64::EPSILON,
            };
            (wrap(acc[0]), wrap(acc[1]))
        }
    }
}

fn scaled(v: TruncatedValue, k: u64) -> TruncatedValue {
    match v {
        TruncatedValue::Exact(r) => TruncatedValue::Exact(r * BigRational::from_integer(BigInt::from(k))),
        TruncatedValue::Approx { value, error_bound } => TruncatedValue::Approx {
            value: value * k as f64,
            error_bound: error_bound * k as f64,
        },
    }
}

fn add(a: TruncatedValue, b: TruncatedValue) -> TruncatedValue {
    match (a, b) {
        (TruncatedValue::Exact(x), TruncatedValue::Exact(y)) => TruncatedValue::Exact(x + y),
        (a, b) => TruncatedValue::Approx {
            value: a.as_f64() + b.as_f64(),
            error_bound: err(&a) + err(&b),
        },
    }
}

fn mul(a: TruncatedValue, b: TruncatedValue) -> TruncatedValue {
    match (a, b) {
        (TruncatedValue::Exact(x), TruncatedValue::Exact(y)) => TruncatedValue::Exact(x * y),
        (a, b) => {
            let (x, y) = (a.as_f64(), b.as_f64());
            TruncatedValue::Approx {
                value: x * y,
                error_bound: x.abs() * err(&b) + y.abs() * err(&a) + (x * y).abs() * f64::EPSILON,
            }
        }
    }
}

fn err(v: &TruncatedValue) -> f64 {
    match v {
        TruncatedValue::Exact(_) => 0.0,
        TruncatedValue::Approx { error_bound, .. } => *error_bound,
    }
}

fn zero(mode: Mode) -> TruncatedValue {
    match mode {
        Mode::Exact => TruncatedValue::Exact(BigRational::zero()),
        Mode::Approx => TruncatedValue::Approx { value: 0.0, error_bound: 0.0 },
    }
}

fn finish(
    lhs: TruncatedValue,
    rhs: TruncatedValue,
    truncation: u32,
    group_order: u64,
    orbits: usize,
    expansion: &BTreeMap<StrictPartition, u64>,
    domain_warnings: Vec<DomainViolation>,
) -> TheoremReport {
    let (equal, abs_difference) = match (&lhs, &rhs) {
        (TruncatedValue::Exact(a), TruncatedValue::Exact(b)) => (Some(a == b), None),
        _ => (None, Some((lhs.as_f64() - rhs.as_f64()).abs())),
    };
    TheoremReport {
        lhs,
        rhs,
        equal,
        abs_difference,
        truncation,
        group_order,
        orbits,
        expansion: expansion.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        domain_warnings,
    }
}

/// Options shared by both verifiers.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub truncation: u32,
    pub mode: Mode,
    pub guard: usize,
}

impl VerifyOptions {
    pub fn exact(truncation: u32) -> Self {
        Self {
            truncation,
            mode: Mode::Exact,
            guard: DEFAULT_GUARD,
        }
    }
}

/// Row-major placement of the variables `0..n` on `λ`: the `s`-variables first, then the
/// `t`-variables.
pub fn default_arrangement(lambda: &StrictPartition) -> Vec<usize> {
    (0..lambda.weight() as usize).collect()
}

/// Symmetrized product expansion: over all permutations of the variables of `s` and `t`,
/// `ζ^P_μ(s)·ζ^P_ν(t)` against `Σ_λ f^λ_{μν} ζ^P_λ(u_λ)`.
///
/// `arrangements[λ]` lists, in row-major cell order of `λ`, which variable sits in each
/// cell (variables numbered row-major through `s` and then `t`).
pub fn verify_theorem_main(
    s: &ExponentTableau,
    t: &ExponentTableau,
    options: VerifyOptions,
    arrangements: Option<&BTreeMap<StrictPartition, Vec<usize>>>,
) -> Result<TheoremReport> {
    let (mu, nu) = (s.shape().outer().clone(), t.shape().outer().clone());
    if !s.shape().is_normal() || !t.shape().is_normal() {
        return Err(Error::Invalid("s and t must sit on normal shapes".into()));
    }
    let n = s.len() + t.len();
    check_guard(n, options.guard)?;
    let expansion = g_p(&mu, &nu);
    let mut placements = Vec::new();
    for lambda in expansion.keys() {
        let arrangement = match arrangements.and_then(|a| a.get(lambda)) {
            Some(a) => a.clone(),
            None => default_arrangement(lambda),
        };
        let mut sorted = arrangement.clone();
        sorted.sort();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(Error::Invalid(format!("arrangement for {lambda} is not a permutation of 0..{n}")));
        }
        placements.push(arrangement);
    }

    let truncation = options.truncation;
    let mu_table = ZetaTable::new(Kind::P, s.shape(), truncation);
    let nu_table = ZetaTable::new(Kind::P, t.shape(), truncation);
    let lambda_tables: Vec<(ZetaTable, u64)> = expansion
        .iter()
        .map(|(lambda, f)| (ZetaTable::new(Kind::P, &SkewShape::normal(lambda.clone()), truncation), *f))
        .collect();

    let values: Vec<Exponent> = s.entries().chain(t.entries()).copied().collect();
    if options.mode == Mode::Exact {
        exact_exponents(&values)?;
    }
    let orbits = rearrangements(&values);
    let k = s.len();
    let terms = orbits
        .par_iter()
        .map(|(p, mult)| -> Result<(TruncatedValue, TruncatedValue)> {
            let left = mul(mu_table.eval(&p[..k], options.mode)?, nu_table.eval(&p[k..], options.mode)?);
            let mut right = zero(options.mode);
            for ((table, f), arrangement) in lambda_tables.iter().zip(&placements) {
                let placed: Vec<Exponent> = arrangement.iter().map(|&v| p[v]).collect();
                right = add(right, scaled(table.eval(&placed, options.mode)?, *f));
            }
            Ok((scaled(left, *mult), scaled(right, *mult)))
        })
        .collect::<Result<Vec<_>>>()?;
    let (lhs, rhs) = sum_values(terms, options.mode);

    let mut warnings = validate_domain(s, DomainContext::TheoremMain);
    warnings.extend(validate_domain(t, DomainContext::TheoremMain));
    Ok(finish(lhs, rhs, truncation, factorial(n), orbits.len(), &expansion, warnings))
}

/// Skew expansion: over all permutations of the body variables of `v` (the arm stays put),
/// `ζ^Q_{λ/μ}(v)` against `Σ_ν f^λ_{μν} ζ^Q_ν(u_ν(v))`.
///
/// `representatives[ν]` places the variables of `v` (named by their cells) on `ν`; the
/// default is [`u_representatives`].
pub fn verify_theorem_skew(
    v: &ExponentTableau,
    options: VerifyOptions,
    representatives: Option<&BTreeMap<StrictPartition, VariableTableau>>,
) -> Result<TheoremReport> {
    let shape = v.shape();
    let split = shape.arm_body();
    check_guard(split.body.len(), options.guard)?;
    let expansion = g_q(shape);
    let defaults;
    let reps = match representatives {
        Some(r) => r,
        None => {
            defaults = u_representatives(shape, &identity_variables(shape))?;
            &defaults
        }
    };
    let cells = shape.cells();
    let index_of = |c: Cell| cells.binary_search(&c).ok();
    let mut placements = Vec::new();
    for nu in expansion.keys() {
        let rep = reps
            .get(nu)
            .ok_or_else(|| Error::Invalid(format!("no variable arrangement given for {nu}")))?;
        if rep.shape() != &SkewShape::normal(nu.clone()) {
            return Err(Error::ShapeMismatch(rep.shape().to_string(), nu.to_string()));
        }
        let placed: Vec<usize> = rep
            .entries()
            .map(|VariableId(c)| index_of(*c).ok_or(Error::CellOutsideShape(*c)))
            .collect::<Result<_>>()?;
        let mut sorted = placed.clone();
        sorted.sort();
        if sorted != (0..cells.len()).collect::<Vec<_>>() {
            return Err(Error::Invalid(format!("arrangement for {nu} does not use every variable once")));
        }
        placements.push(placed);
    }

    let truncation = options.truncation;
    let skew_table = ZetaTable::new(Kind::Q, shape, truncation);
    let nu_tables: Vec<(ZetaTable, u64)> = expansion
        .iter()
        .map(|(nu, f)| (ZetaTable::new(Kind::Q, &SkewShape::normal(nu.clone()), truncation), *f))
        .collect();

    let all: Vec<Exponent> = v.entries().copied().collect();
    if options.mode == Mode::Exact {
        exact_exponents(&all)?;
    }
    let body_slots: Vec<usize> = split.body.iter().map(|&c| index_of(c).expect("body cell")).collect();
    let body_values: Vec<Exponent> = body_slots.iter().map(|&k| all[k]).collect();
    let orbits = rearrangements(&body_values);
    let terms = orbits
        .par_iter()
        .map(|(p, mult)| -> Result<(TruncatedValue, TruncatedValue)> {
            let mut values = all.clone();
            for (&slot, &e) in body_slots.iter().zip(p) {
                values[slot] = e;
            }
            let left = skew_table.eval(&values, options.mode)?;
            let mut right = zero(options.mode);
            for ((table, f), placed) in nu_tables.iter().zip(&placements) {
                let moved: Vec<Exponent> = placed.iter().map(|&k| values[k]).collect();
                right = add(right, scaled(table.eval(&moved, options.mode)?, *f));
            }
            Ok((scaled(left, *mult), scaled(right, *mult)))
        })
        .collect::<Result<Vec<_>>>()?;
    let (lhs, rhs) = sum_values(terms, options.mode);
    let warnings = validate_domain(v, DomainContext::TheoremSkew);
    Ok(finish(lhs, rhs, truncation, factorial(split.body.len()), orbits.len(), &expansion, warnings))
}

/// `Σ_k f_k ζ^Q_{ν_k}(u_k)` for explicitly given shapes, coefficients and exponent placements.
pub fn weighted_zeta_sum(terms: &[(ExponentTableau, u64)], kind: Kind, truncation: u32) -> Result<BigRational> {
    let mut sum = BigRational::zero();
    for (exps, f) in terms {
        let value = zeta_truncated(kind, exps, truncation, Mode::Exact)?;
        sum += value.exact().expect("exact").clone() * BigRational::from_integer(BigInt::from(*f));
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn exps(shape: &str, text: &str) -> ExponentTableau {
        parse_exponents(&shape.parse().unwrap(), text).unwrap()
    }

    #[test]
    fn exponent_parsing() {
        assert_eq!("2".parse::<Exponent>().unwrap(), Exponent::integer(2));
        assert_eq!("3/2".parse::<Exponent>().unwrap(), "1.5".parse().unwrap());
        assert_eq!("3/2".parse::<Exponent>().unwrap().to_string(), "3/2");
        assert!("x".parse::<Exponent>().is_err());
        assert!("1/0".parse::<Exponent>().is_err());
        assert_eq!(Exponent::integer(3).as_exact(), Some(3));
        assert_eq!("1.5".parse::<Exponent>().unwrap().as_exact(), None);
        assert_eq!(Exponent::integer(-1).as_exact(), None);
    }

    #[test]
    fn flat_and_row_exponent_forms_agree() {
        assert_eq!(exps("3,1", "2,2,3,4"), exps("3,1", "2,2,3;4"));
        assert!(parse_exponents(&"3,1".parse().unwrap(), "2,2,3").is_err());
    }

    #[test]
    fn single_box_values() {
        let p = zeta_truncated(Kind::P, &exps("1", "2"), 3, Mode::Exact).unwrap();
        assert_eq!(p, TruncatedValue::Exact(q(49, 36)));
        let v = zeta_truncated(Kind::Q, &exps("1", "2"), 2, Mode::Exact).unwrap();
        assert_eq!(v, TruncatedValue::Exact(q(5, 2)));
    }

    #[test]
    fn two_boxes_against_direct_sum() {
        // PSST((2)) with bases ≤ 2: 1,1  1,2'  1,2  2,2
        let expected = q(1, 1) + q(1, 4) + q(1, 4) + q(1, 16);
        let got = zeta_truncated(Kind::P, &exps("2", "2,2"), 2, Mode::Exact).unwrap();
        assert_eq!(got, TruncatedValue::Exact(expected));
    }

    #[test]
    fn exact_mode_rejects_fractions() {
        let e = exps("1", "3/2");
        assert!(matches!(zeta_truncated(Kind::P, &e, 3, Mode::Exact), Err(Error::NonIntegerExponent(_))));
        let approx = zeta_truncated(Kind::P, &e, 3, Mode::Approx).unwrap();
        let direct = 1.0 + 2f64.powf(-1.5) + 3f64.powf(-1.5);
        assert!((approx.as_f64() - direct).abs() < 1e-12);
    }

    #[test]
    fn approx_tracks_exact() {
        let e = exps("3,1", "2,3,2,4");
        let exact = zeta_truncated(Kind::Q, &e, 4, Mode::Exact).unwrap().as_f64();
        let TruncatedValue::Approx { value, error_bound } = zeta_truncated(Kind::Q, &e, 4, Mode::Approx).unwrap() else {
            panic!("approx expected");
        };
        assert!((value - exact).abs() <= error_bound.max(1e-15));
    }

    #[test]
    fn monotone_in_truncation() {
        let e = exps("2,1", "2,2,3");
        let mut last = BigRational::zero();
        for n in 0..=5 {
            let v = zeta_truncated(Kind::Q, &e, n, Mode::Exact).unwrap().exact().unwrap().clone();
            assert!(v >= last);
            last = v;
        }
    }

    #[test]
    fn domain_examples() {
        for ctx in [DomainContext::Wq, DomainContext::TheoremMain, DomainContext::TheoremSkew] {
            assert!(validate_domain(&exps("1", "2"), ctx).is_empty());
        }
        assert!(validate_domain(&exps("2", "1,2"), DomainContext::Wq).is_empty());
        let bad = validate_domain(&exps("2", "1,1"), DomainContext::Wq);
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].cell, Cell::new(1, 2));

        let shape: SkewShape = "8,3,1/3,1".parse().unwrap();
        let mut v = constant_exponents(&shape, Exponent::integer(2));
        let at = |v: &ExponentTableau, cell: Cell, e: i64| {
            let entries = v.iter().map(|(c, x)| if c == cell { Exponent::integer(e) } else { *x }).collect();
            ShiftedTableau::from_row_major(v.shape().clone(), entries).unwrap()
        };
        v = at(&v, Cell::new(1, 7), 1);
        assert!(validate_domain(&v, DomainContext::TheoremSkew).is_empty());
        let w = at(&v, Cell::new(1, 8), 1);
        let bad = validate_domain(&w, DomainContext::TheoremSkew);
        assert_eq!(bad.iter().map(|d| d.cell).collect::<Vec<_>>(), [Cell::new(1, 8)]);
    }

    #[test]
    fn rearrangement_counts() {
        let vals: Vec<Exponent> = [2, 3, 2].iter().map(|&n| Exponent::integer(n)).collect();
        let r = rearrangements(&vals);
        assert_eq!(r.len(), 3);
        assert_eq!(r.iter().map(|(_, m)| m).sum::<u64>(), 6);
        let single = rearrangements(&[Exponent::integer(5)]);
        assert_eq!(single, vec![(vec![Exponent::integer(5)], 1)]);
    }

    #[test]
    fn theorem_main_small() {
        let s = exps("1", "2");
        let report = verify_theorem_main(&s, &s, VerifyOptions::exact(3), None).unwrap();
        assert_eq!(report.equal, Some(true));
        assert_eq!(report.group_order, 2);

        let report = verify_theorem_main(&exps("2", "2,3"), &exps("1", "2"), VerifyOptions::exact(5), None).unwrap();
        assert_eq!(report.equal, Some(true));
        assert_eq!(report.group_order, 6);
    }

    #[test]
    fn theorem_main_empty_factor() {
        let empty = constant_exponents(&SkewShape::normal(StrictPartition::empty()), Exponent::integer(2));
        let t = exps("2,1", "2,3,4");
        let report = verify_theorem_main(&empty, &t, VerifyOptions::exact(3), None).unwrap();
        assert_eq!(report.equal, Some(true));
    }

    #[test]
    fn theorem_main_swap_invariance() {
        let (s, t) = (exps("2", "2,3"), exps("1", "4"));
        let a = verify_theorem_main(&s, &t, VerifyOptions::exact(3), None).unwrap();
        let b = verify_theorem_main(&t, &s, VerifyOptions::exact(3), None).unwrap();
        assert_eq!(a.lhs, b.lhs);
    }

    #[test]
    fn theorem_main_guard() {
        let s = exps("3,2", "2,2,2,2,2");
        let t = exps("3,1", "2,2,2,2");
        let err = verify_theorem_main(&s, &t, VerifyOptions::exact(2), None).unwrap_err();
        assert!(matches!(err, Error::GuardExceeded { size: 9, guard: 8 }));
    }

    #[test]
    fn theorem_skew_small() {
        let v = exps("3,1/1", "2,3;4");
        let report = verify_theorem_skew(&v, VerifyOptions::exact(5), None).unwrap();
        assert_eq!(report.equal, Some(true));
        assert_eq!(report.group_order, 2);

        let normal = exps("3,1", "2,3,4,5");
        let report = verify_theorem_skew(&normal, VerifyOptions::exact(3), None).unwrap();
        assert_eq!(report.equal, Some(true));
    }

    #[test]
    fn theorem_skew_approx_mode() {
        let v = exps("3,1/1", "3/2,5/2;2");
        let options = VerifyOptions {
            truncation: 4,
            mode: Mode::Approx,
            guard: DEFAULT_GUARD,
        };
        let report = verify_theorem_skew(&v, options, None).unwrap();
        assert_eq!(report.equal, None);
        assert!(report.abs_difference.unwrap() < 1e-12);
    }
}
