//! Sparse integer polynomials and Schur P/Q polynomials computed from tableau counts.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::shapes::{SkewShape, StrictPartition};
use crate::tableaux::{Enumerator, Kind};

/// A polynomial in `x_1..x_n` with integer coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl SparsePoly {
    pub fn zero(vars: usize) -> Self {
        Self { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: usize) -> Self {
        Self::monomial(vec![0; vars], BigInt::one())
    }

    pub fn monomial(exponents: Vec<u32>, coefficient: BigInt) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, coefficient);
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, coefficient: BigInt) {
        assert_eq!(exponents.len(), self.vars, "exponent vector length");
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero(self.vars);
        }
        Self {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * factor)).collect(),
        }
    }

    /// Swaps `x_a` and `x_b` (0-based).
    pub fn swap_vars(&self, a: usize, b: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.swap(a, b);
                (e, c.clone())
            })
            .collect();
        Self { vars: self.vars, terms }
    }

    /// One line `coef  e1 e2 … en` per term, sorted by exponent vector.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (e, c) in &self.terms {
            let exps: Vec<String> = e.iter().map(u32::to_string).collect();
            out.push_str(&format!("{c}  {}\n", exps.join(" ")));
        }
        out
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;

    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.vars, rhs.vars, "variable count");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;

    fn neg(self) -> SparsePoly {
        SparsePoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;

    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self + &(-rhs)
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;

    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.vars, rhs.vars, "variable count");
        let mut acc: HashMap<Vec<u32>, BigInt> = HashMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(i, j)| i + j).collect();
                *acc.entry(e).or_default() += x * y;
            }
        }
        let mut out = SparsePoly::zero(self.vars);
        for (e, c) in acc {
            out.add_term(e, c);
        }
        out
    }
}

fn tableau_polynomial(kind: Kind, shape: &SkewShape, vars: usize) -> SparsePoly {
    let mut counts: HashMap<Vec<u32>, u64> = HashMap::new();
    let mut it = Enumerator::new(kind, shape, vars as u32, None);
    let mut exps = vec![0u32; vars];
    while let Some(letters) = it.next_filling() {
        exps.iter_mut().for_each(|e| *e = 0);
        for l in letters {
            exps[l.base as usize - 1] += 1;
        }
        *counts.entry(exps.clone()).or_insert(0) += 1;
    }
    let mut p = SparsePoly::zero(vars);
    for (e, c) in counts {
        p.add_term(e, BigInt::from(c));
    }
    p
}

/// `P_δ(x_1..x_n)`: one monomial per PSST of shape `δ` with entries `≤ n`.
pub fn schur_p(shape: &SkewShape, vars: usize) -> SparsePoly {
    tableau_polynomial(Kind::P, shape, vars)
}

/// `Q_δ(x_1..x_n)`: one monomial per QSST of shape `δ` with entries `≤ n`.
pub fn schur_q(shape: &SkewShape, vars: usize) -> SparsePoly {
    tableau_polynomial(Kind::Q, shape, vars)
}

/// A monomial where the two sides of an identity disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Difference {
    pub exponents: Vec<u32>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub vars: usize,
    pub equal: bool,
    pub differences: Vec<Difference>,
}

impl Verdict {
    fn compare(lhs: &SparsePoly, rhs: &SparsePoly) -> Self {
        let diff = lhs - rhs;
        let differences = diff
            .terms()
            .map(|(e, _)| Difference {
                exponents: e.to_vec(),
                lhs: lhs.coefficient(e).to_string(),
                rhs: rhs.coefficient(e).to_string(),
            })
            .collect();
        Self {
            vars: lhs.vars(),
            equal: diff.is_zero(),
            differences,
        }
    }
}

fn linear_combination(
    table: &BTreeMap<StrictPartition, u64>,
    vars: usize,
    basis: impl Fn(&SkewShape, usize) -> SparsePoly,
) -> SparsePoly {
    let mut sum = SparsePoly::zero(vars);
    for (lambda, f) in table {
        let term = basis(&SkewShape::normal(lambda.clone()), vars).scale(&BigInt::from(*f));
        sum = &sum + &term;
    }
    sum
}

/// `P_μ P_ν = Σ_λ f^λ_{μν} P_λ` as polynomials in `|μ| + |ν|` variables.
pub fn verify_lr1(mu: &StrictPartition, nu: &StrictPartition, table: &BTreeMap<StrictPartition, u64>) -> Verdict {
    let vars = ((mu.weight() + nu.weight()) as usize).max(1);
    let lhs = &schur_p(&SkewShape::normal(mu.clone()), vars) * &schur_p(&SkewShape::normal(nu.clone()), vars);
    let rhs = linear_combination(table, vars, schur_p);
    Verdict::compare(&lhs, &rhs)
}

/// `Q_{λ/μ} = Σ_ν f^λ_{μν} Q_ν` as polynomials in `|λ|` variables.
pub fn verify_lr2(shape: &SkewShape, table: &BTreeMap<StrictPartition, u64>) -> Verdict {
    let vars = (shape.outer().weight() as usize).max(1);
    let lhs = schur_q(shape, vars);
    let rhs = linear_combination(table, vars, schur_q);
    Verdict::compare(&lhs, &rhs)
}

/// Expands `p` in the `P_λ` basis by repeatedly removing the lexicographically largest
/// monomial, which for a combination of `P_λ` is `x^λ` with coefficient one in `P_λ`.
pub fn peel_expand(p: &SparsePoly, weight: u32, vars: usize) -> Result<BTreeMap<StrictPartition, BigInt>> {
    let mut rest = p.clone();
    let mut out = BTreeMap::new();
    while let Some((lead, c)) = rest.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        let parts: Vec<u32> = lead.iter().copied().take_while(|&e| e > 0).collect();
        let strict = lead.iter().sum::<u32>() == weight
            && parts.len() == lead.iter().filter(|&&e| e > 0).count()
            && parts.windows(2).all(|w| w[0] > w[1]);
        if !strict {
            return Err(Error::NotInSpan(lead));
        }
        let lambda = StrictPartition::new(parts).expect("checked strict");
        let basis = schur_p(&SkewShape::normal(lambda.clone()), vars);
        rest = &rest - &basis.scale(&c);
        out.insert(lambda, c);
    }
    Ok(out)
}
