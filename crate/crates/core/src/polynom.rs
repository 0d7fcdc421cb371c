//! Sparse multivariate polynomials over an arbitrary coefficient ring.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector, so iteration and all
//! serialized forms follow lexicographic order on exponent vectors. Display
//! and JSON list the lex-largest term first (`x0^3` before `x0*x1*x2` before
//! `x1^3`).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{FiniteAbelianGroup, GroupElement};
use crate::scalar::Coefficient;
use crate::{CycPolynomial, IntPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::from_terms(nvars, [(Monomial::one(nvars), c)])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Self::from_terms(nvars, [(Monomial::var(nvars, i), C::one())])
    }

    /// Sum of the given terms; repeated monomials are combined and zeros dropped.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut map: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            match map.get_mut(&m) {
                Some(slot) => *slot = slot.clone() + c,
                None => {
                    map.insert(m, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        Polynomial { nvars, terms: map }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn support(&self) -> std::collections::BTreeSet<Monomial> {
        self.terms.keys().cloned().collect()
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::Mismatch(format!(
                "polynomials in {} and {} variables",
                self.nvars, other.nvars
            )))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(slot) => *slot = slot.clone() + c.clone(),
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Polynomial {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let prod = ca.clone() * cb.clone();
                match acc.get_mut(&m) {
                    Some(slot) => *slot = slot.clone() + prod,
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Polynomial {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn scale(&self, k: &C) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * k.clone())))
    }

    /// Rename variables: `x_i` becomes `x_{map[i]}`. `map` must be a permutation.
    pub fn permute_variables(&self, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; self.nvars];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            (Monomial(e), c.clone())
        });
        Self::from_terms(self.nvars, terms)
    }

    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

impl<C: Coefficient> std::ops::Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        self.try_add(rhs).expect("polynomial arity mismatch")
    }
}

impl<C: Coefficient> std::ops::Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        self.try_sub(rhs).expect("polynomial arity mismatch")
    }
}

impl<C: Coefficient> std::ops::Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        self.try_mul(rhs).expect("polynomial arity mismatch")
    }
}


impl IntPolynomial {
    /// Sum of all coefficients (the value at `x_i = 1`).
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// JSON term list, lex-largest exponent vector first.
    pub fn to_json_terms(&self) -> Vec<PolyTerm> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| PolyTerm {
                exponents: m.0.clone(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_json_terms(nvars: usize, terms: &[PolyTerm]) -> Result<Self> {
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            if t.exponents.len() != nvars {
                return Err(Error::Parse(format!(
                    "term has {} exponents, expected {nvars}",
                    t.exponents.len()
                )));
            }
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{}`", t.coeff)))?;
            out.push((Monomial(t.exponents.clone()), c));
        }
        Ok(Self::from_terms(nvars, out))
    }

    /// Parse the human-readable form, e.g. `x0^3 + x1^3 - 3*x0*x1*x2`.
    ///
    /// Variables are `x<k>` (an underscore `x_<k>` is also accepted) with
    /// `k < nvars`; factors are joined by `*` or simply juxtaposed
    /// (`3x_0x_1`); whitespace is ignored.
    pub fn parse(s: &str, nvars: usize) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bytes: Vec<char> = cleaned.chars().collect();
        let mut terms = Vec::new();
        let mut start = 0;
        let mut k = 0;
        while k <= bytes.len() {
            let boundary = k == bytes.len() || ((bytes[k] == '+' || bytes[k] == '-') && k > start);
            if boundary {
                let term: String = bytes[start..k].iter().collect();
                terms.push(parse_term(&term, nvars)?);
                start = k;
            }
            k += 1;
        }
        Ok(Self::from_terms(nvars, terms))
    }
}

fn parse_term(term: &str, nvars: usize) -> Result<(Monomial, BigInt)> {
    let bad = || Error::Parse(format!("malformed term `{term}`"));
    let chars: Vec<char> = term.chars().collect();
    let mut pos = 0;
    let mut coeff = BigInt::one();
    if let Some(&c) = chars.first() {
        if c == '+' || c == '-' {
            if c == '-' {
                coeff = -coeff;
            }
            pos = 1;
        }
    }
    let digits = |pos: &mut usize| -> Option<String> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (*pos > start).then(|| chars[start..*pos].iter().collect())
    };
    let mut exps = vec![0u32; nvars];
    let mut factors = 0;
    while pos < chars.len() {
        if factors > 0 && chars[pos] == '*' {
            pos += 1;
        }
        match chars.get(pos) {
            Some('x') => {
                pos += 1;
                if chars.get(pos) == Some(&'_') {
                    pos += 1;
                }
                let i: usize = digits(&mut pos).ok_or_else(bad)?.parse().map_err(|_| bad())?;
                let pow: u32 = if chars.get(pos) == Some(&'^') {
                    pos += 1;
                    digits(&mut pos).ok_or_else(bad)?.parse().map_err(|_| bad())?
                } else {
                    1
                };
                if i >= nvars {
                    return Err(Error::Parse(format!("variable x{i} out of range in `{term}`")));
                }
                exps[i] += pow;
            }
            Some(c) if c.is_ascii_digit() => {
                let c: BigInt = digits(&mut pos).ok_or_else(bad)?.parse().map_err(|_| bad())?;
                coeff *= c;
            }
            _ => return Err(bad()),
        }
        factors += 1;
    }
    if factors == 0 {
        return Err(bad());
    }
    Ok((Monomial(exps), coeff))
}

/// One serialized term: `{"exponents": [..], "coeff": "decimal"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

impl fmt::Display for IntPolynomial {
    /// `3*x0*x1*x2`-style, lex-largest term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_const = m.degree() == 0;
            if is_const {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for CycPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| format!("({c})*{m}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Convert a cyclotomic-coefficient polynomial whose coefficients are all
/// rational integers.
pub fn to_integer_polynomial(p: &CycPolynomial) -> Result<IntPolynomial> {
    let mut terms = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let v = c
            .to_integer()
            .ok_or_else(|| Error::NonIntegral(format!("coefficient {c} of {m}")))?;
        terms.push((m.clone(), v));
    }
    Ok(IntPolynomial::from_terms(p.nvars(), terms))
}

/// Action of `gamma` by translation of the variables: `x_i -> x_{i + gamma}`.
pub fn apply_group_action<C: Coefficient>(
    group: &FiniteAbelianGroup,
    gamma: &GroupElement,
    p: &Polynomial<C>,
) -> Result<Polynomial<C>> {
    if p.nvars() != group.order() {
        return Err(Error::Mismatch(format!(
            "polynomial has {} variables, group {group} has order {}",
            p.nvars(),
            group.order()
        )));
    }
    let map = translation_map(group, gamma)?;
    Ok(p.permute_variables(&map))
}

/// `map[i]` is the index of `x_i + gamma`.
pub fn translation_map(group: &FiniteAbelianGroup, gamma: &GroupElement) -> Result<Vec<usize>> {
    group
        .elements()
        .iter()
        .map(|a| group.add(a, gamma).map(|s| group.index_of(&s)))
        .collect()
}
