//! Finite abelian groups given as ordered direct sums of cyclic groups.
//!
//! Elements are residue tuples enumerated lexicographically (last factor
//! fastest), so element index 0 is always the neutral element. Characters
//! are indexed by the same tuples: the character `k` sends `a` to
//! `zeta_e^(sum_j k_j a_j e / n_j)` where `e` is the exponent of the group.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::numtheory::{factorize, lcm_all};

/// Largest group order accepted by [`FiniteAbelianGroup::subset_sum_zero_count`].
pub const SUBSET_ENUMERATION_LIMIT: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    pub residues: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Character {
    pub residues: Vec<u64>,
}

/// Number of group elements of each order.
///
/// Arbitrary profiles are accepted, so the invariant-ring formulas can be fed
/// data for non-abelian groups too.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrderProfile(pub BTreeMap<u64, u64>);

impl OrderProfile {
    pub fn from_json(s: &str) -> Result<Self> {
        let p: OrderProfile =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("order profile: {e}")))?;
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.0.keys().any(|&d| d == 0) {
            return Err(Error::InvalidArgument("order profile: order 0".into()));
        }
        if self.group_order() == 0 {
            return Err(Error::InvalidArgument("order profile: empty group".into()));
        }
        Ok(())
    }

    pub fn group_order(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn count(&self, d: u64) -> u64 {
        self.0.get(&d).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("profile serializes")
    }
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("group needs at least one factor".into()));
        }
        if factors.iter().any(|&f| f == 0) {
            return Err(Error::InvalidArgument("cyclic factor of order 0".into()));
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    pub fn exponent(&self) -> u64 {
        lcm_all(&self.factors)
    }

    /// True when the group was given as a single cyclic factor.
    pub fn has_single_factor(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            residues: vec![0; self.factors.len()],
        }
    }

    pub fn element(&self, index: usize) -> GroupElement {
        let mut rem = index as u64;
        let mut residues = vec![0; self.factors.len()];
        for (slot, &f) in residues.iter_mut().zip(&self.factors).rev() {
            *slot = rem % f;
            rem /= f;
        }
        GroupElement { residues }
    }

    pub fn index_of(&self, a: &GroupElement) -> usize {
        a.residues
            .iter()
            .zip(&self.factors)
            .fold(0u64, |acc, (&r, &f)| acc * f + r) as usize
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order()).map(|k| self.element(k)).collect()
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        a.residues.len() == self.factors.len()
            && a.residues.iter().zip(&self.factors).all(|(&r, &f)| r < f)
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::Mismatch(format!("{a} is not an element of {self}")))
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    fn add_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            residues: a
                .residues
                .iter()
                .zip(&b.residues)
                .zip(&self.factors)
                .map(|((&x, &y), &f)| (x + y) % f)
                .collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(self.neg_unchecked(a))
    }

    fn neg_unchecked(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            residues: a
                .residues
                .iter()
                .zip(&self.factors)
                .map(|(&x, &f)| (f - x) % f)
                .collect(),
        }
    }

    /// Least `k >= 1` with `k a = 0`.
    pub fn element_order(&self, a: &GroupElement) -> Result<u64> {
        self.check(a)?;
        Ok(self.order_unchecked(a))
    }

    fn order_unchecked(&self, a: &GroupElement) -> u64 {
        a.residues
            .iter()
            .zip(&self.factors)
            .fold(1u64, |acc, (&r, &f)| acc.lcm(&(f / r.gcd(&f))))
    }

    /// `add_table()[i][j]` is the index of `x_i + x_j`.
    pub fn add_table(&self) -> Vec<Vec<usize>> {
        let els = self.elements();
        els.iter()
            .map(|a| els.iter().map(|b| self.index_of(&self.add_unchecked(a, b))).collect())
            .collect()
    }

    /// `neg_table()[i]` is the index of `-x_i`.
    pub fn neg_table(&self) -> Vec<usize> {
        self.elements()
            .iter()
            .map(|a| self.index_of(&self.neg_unchecked(a)))
            .collect()
    }

    pub fn order_profile(&self) -> OrderProfile {
        let mut map = BTreeMap::new();
        for a in self.elements() {
            *map.entry(self.order_unchecked(&a)).or_insert(0) += 1;
        }
        OrderProfile(map)
    }

    pub fn characters(&self) -> Vec<Character> {
        self.elements()
            .into_iter()
            .map(|a| Character { residues: a.residues })
            .collect()
    }

    pub fn character(&self, index: usize) -> Character {
        Character {
            residues: self.element(index).residues,
        }
    }

    /// Exponent `t` (mod `e`) with `chi(a) = zeta_e^t`.
    pub fn char_eval_exponent(&self, chi: &Character, a: &GroupElement) -> Result<u64> {
        self.check(a)?;
        self.check(&GroupElement {
            residues: chi.residues.clone(),
        })?;
        Ok(self.char_exponent_unchecked(chi, a))
    }

    fn char_exponent_unchecked(&self, chi: &Character, a: &GroupElement) -> u64 {
        let e = self.exponent();
        chi.residues
            .iter()
            .zip(&a.residues)
            .zip(&self.factors)
            .fold(0u64, |acc, ((&k, &x), &f)| (acc + k * x % f * (e / f)) % e)
    }

    pub fn char_value(&self, chi: &Character, a: &GroupElement) -> CyclotomicInt {
        CyclotomicInt::root_power(self.exponent(), self.char_exponent_unchecked(chi, a) as i64)
    }

    /// Pointwise product of characters, as a character.
    pub fn char_mul(&self, a: &Character, b: &Character) -> Character {
        Character {
            residues: self
                .add_unchecked(
                    &GroupElement { residues: a.residues.clone() },
                    &GroupElement { residues: b.residues.clone() },
                )
                .residues,
        }
    }

    /// `sum_{ord(g) = d} chi(g^{-1})`, evaluated exactly; it is always a
    /// rational integer, and anything else is reported as an error.
    pub fn character_sum_by_order(&self, chi: &Character, d: u64) -> Result<BigInt> {
        let e = self.exponent();
        let mut acc = CyclotomicInt::from_integer(e, 0);
        for a in self.elements() {
            if self.order_unchecked(&a) == d {
                acc = &acc + &self.char_value(chi, &self.neg_unchecked(&a));
            }
        }
        acc.to_integer().ok_or_else(|| {
            Error::NonIntegral(format!("character sum over order-{d} elements of {self}: {acc}"))
        })
    }

    /// Sign of the permutation `i -> index(-x_i)`.
    pub fn inversion_permutation_sign(&self) -> i32 {
        permutation_sign(&self.neg_table())
    }

    /// Number of subsets (the empty set included) whose elements sum to 0.
    pub fn subset_sum_zero_count(&self) -> Result<BigInt> {
        let n = self.order();
        if n > SUBSET_ENUMERATION_LIMIT {
            return Err(Error::guard(
                "subset_enumeration_order",
                SUBSET_ENUMERATION_LIMIT as u128,
                n as u128,
            ));
        }
        // dp over elements: counts[g] = number of subsets of the prefix summing to g
        let table = self.add_table();
        let mut counts = vec![BigInt::from(0); n];
        counts[0] = BigInt::from(1);
        for x in 0..n {
            let mut next = counts.clone();
            for (g, c) in counts.iter().enumerate() {
                next[table[g][x]] += c;
            }
            counts = next;
        }
        Ok(counts[0].clone())
    }

    /// Literal `2^n` subset enumeration; the independent oracle for
    /// [`Self::subset_sum_zero_count`].
    pub fn subset_sum_zero_count_enumerated(&self) -> Result<u64> {
        let n = self.order();
        if n > SUBSET_ENUMERATION_LIMIT {
            return Err(Error::guard(
                "subset_enumeration_order",
                SUBSET_ENUMERATION_LIMIT as u128,
                n as u128,
            ));
        }
        let els = self.elements();
        let mut count = 0;
        for mask in 0u64..(1u64 << n) {
            let mut acc = self.zero();
            for (k, a) in els.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    acc = self.add_unchecked(&acc, a);
                }
            }
            if acc == self.zero() {
                count += 1;
            }
        }
        Ok(count)
    }
}

pub(crate) fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|n| format!("C{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    /// Grammar `C<int> ( x C<int> )*`, case-insensitive, whitespace ignored.
    fn from_str(text: &str) -> Result<Self> {
        let cleaned: String = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .to_ascii_lowercase();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty group".into()));
        }
        let mut factors = Vec::new();
        for part in cleaned.split('x') {
            let digits = part
                .strip_prefix('c')
                .ok_or_else(|| Error::Parse(format!("malformed factor `{part}` in `{text}`")))?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(format!("malformed factor `{part}` in `{text}`")));
            }
            let n: u64 = digits
                .parse()
                .map_err(|_| Error::Parse(format!("factor out of range in `{text}`")))?;
            if n == 0 {
                return Err(Error::Parse(format!("factor C0 in `{text}`")));
            }
            factors.push(n);
        }
        FiniteAbelianGroup::new(factors)
    }
}

pub fn parse_group(text: &str) -> Result<FiniteAbelianGroup> {
    text.parse()
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// One representative per isomorphism class of abelian groups of order `n`,
/// in invariant-factor form `n_1 | n_2 | ... | n_r` (cyclic group first).
pub fn abelian_groups_of_order(n: u64) -> Vec<FiniteAbelianGroup> {
    if n == 1 {
        return vec![FiniteAbelianGroup { factors: vec![1] }];
    }
    let primes = factorize(n);
    let mut combos: Vec<Vec<Vec<u32>>> = vec![vec![]];
    for &(_, k) in &primes {
        let mut next = Vec::new();
        for c in &combos {
            for p in partitions(k, k) {
                let mut c2 = c.clone();
                c2.push(p);
                next.push(c2);
            }
        }
        combos = next;
    }
    combos
        .into_iter()
        .map(|parts| {
            let len = parts.iter().map(Vec::len).max().unwrap_or(1);
            // the j-th largest invariant factor collects the j-th largest prime power
            let mut factors = vec![1u64; len];
            for (&(p, _), part) in primes.iter().zip(&parts) {
                for (j, &a) in part.iter().enumerate() {
                    factors[j] *= p.pow(a);
                }
            }
            factors.reverse();
            FiniteAbelianGroup { factors }
        })
        .collect()
}

pub fn abelian_groups_up_to(max_order: u64) -> Vec<FiniteAbelianGroup> {
    (1..=max_order).flat_map(abelian_groups_of_order).collect()
}
