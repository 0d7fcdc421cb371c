//! Symbolic permanents and determinants of matrices whose entries are single
//! variables `x_k`, given as a grid of variable indices.
//!
//! Monomials of degree `<= 16` in `<= 16` variables (any degree/variable
//! combination fitting in 128 bits) are packed into a `u128`, one base-`(l+1)`
//! digit per variable, so the hot loops never allocate.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::permutation_sign;
use crate::polynom::Monomial;
use crate::IntPolynomial;

/// Largest matrix size for the `l!`-term expansion.
pub const LEIBNIZ_LIMIT: usize = 9;
/// Largest matrix size for Ryser's `2^l`-term formula.
pub const RYSER_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PermanentAlgorithm {
    Leibniz,
    Ryser,
}

impl std::str::FromStr for PermanentAlgorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "leibniz" => Ok(Self::Leibniz),
            "ryser" => Ok(Self::Ryser),
            _ => Err(Error::Parse(format!("unknown permanent algorithm `{s}` (leibniz|ryser)"))),
        }
    }
}

/// Packs exponent vectors into a single integer.
#[derive(Clone, Copy, Debug)]
struct Packing {
    nvars: usize,
    base: u128,
}

impl Packing {
    fn new(nvars: usize, degree: usize) -> Result<Self> {
        let base = degree as u128 + 1;
        let fits = (0..nvars).try_fold(1u128, |acc, _| acc.checked_mul(base)).is_some();
        if !fits {
            return Err(Error::guard("packed_monomial_width", 128, (nvars as f64 * (base as f64).log2()).ceil() as u128));
        }
        Ok(Packing { nvars, base })
    }

    fn unit(&self, var: usize) -> u128 {
        self.base.pow(var as u32)
    }

    fn unpack(&self, mut key: u128) -> Monomial {
        let mut e = Vec::with_capacity(self.nvars);
        for _ in 0..self.nvars {
            e.push((key % self.base) as u32);
            key /= self.base;
        }
        Monomial(e)
    }
}

fn validate(grid: &[Vec<usize>], nvars: usize) -> Result<()> {
    let l = grid.len();
    for row in grid {
        if row.len() != l {
            return Err(Error::InvalidArgument("matrix is not square".into()));
        }
        if let Some(&bad) = row.iter().find(|&&v| v >= nvars) {
            return Err(Error::InvalidArgument(format!("entry x{bad} out of range for {nvars} variables")));
        }
    }
    Ok(())
}

fn to_polynomial<T: Into<BigInt>>(pack: &Packing, terms: HashMap<u128, T>) -> IntPolynomial {
    IntPolynomial::from_terms(
        pack.nvars,
        terms.into_iter().map(|(k, c)| (pack.unpack(k), c.into())),
    )
}

fn merge(mut a: HashMap<u128, i64>, b: HashMap<u128, i64>) -> HashMap<u128, i64> {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Sum over all permutations of `sign^signed * prod grid[i][pi(i)]`,
/// parallelised over the choice in row 0.
fn leibniz(grid: &[Vec<usize>], nvars: usize, signed: bool) -> Result<IntPolynomial> {
    let l = grid.len();
    if l > LEIBNIZ_LIMIT {
        return Err(Error::guard("leibniz_size", LEIBNIZ_LIMIT as u128, l as u128));
    }
    validate(grid, nvars)?;
    let pack = Packing::new(nvars, l)?;
    if l == 0 {
        return Ok(IntPolynomial::one(nvars));
    }

    fn rec(
        grid: &[Vec<usize>],
        pack: &Packing,
        row: usize,
        used: &mut [bool],
        perm: &mut [usize],
        key: u128,
        out: &mut HashMap<u128, i64>,
        signed: bool,
    ) {
        let l = grid.len();
        if row == l {
            let s = if signed { permutation_sign(perm) as i64 } else { 1 };
            *out.entry(key).or_insert(0) += s;
            return;
        }
        for col in 0..l {
            if !used[col] {
                used[col] = true;
                perm[row] = col;
                rec(grid, pack, row + 1, used, perm, key + pack.unit(grid[row][col]), out, signed);
                used[col] = false;
            }
        }
    }

    let terms = (0..l)
        .into_par_iter()
        .map(|first| {
            let mut used = vec![false; l];
            let mut perm = vec![0; l];
            used[first] = true;
            perm[0] = first;
            let mut out = HashMap::new();
            rec(grid, &pack, 1, &mut used, &mut perm, pack.unit(grid[0][first]), &mut out, signed);
            out
        })
        .reduce(HashMap::new, merge);
    Ok(to_polynomial(&pack, terms))
}

/// Product of linear forms `sum_v counts[r][v] x_v` over all rows `r`.
fn product_of_row_sums(counts: &[Vec<i64>], pack: &Packing) -> HashMap<u128, i128> {
    let mut acc: HashMap<u128, i128> = HashMap::from([(0u128, 1i128)]);
    for row in counts {
        let nz: Vec<(u128, i128)> = row
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(v, &c)| (pack.unit(v), c as i128))
            .collect();
        if nz.is_empty() {
            return HashMap::new();
        }
        let mut next = HashMap::with_capacity(acc.len() * nz.len());
        for (&k, &c) in &acc {
            for &(u, w) in &nz {
                *next.entry(k + u).or_insert(0) += c * w;
            }
        }
        acc = next;
    }
    acc
}

/// Ryser: `per A = (-1)^l sum_{S} (-1)^{|S|} prod_i sum_{j in S} a_ij`,
/// walking column subsets in Gray-code order so each step changes one column.
fn ryser(grid: &[Vec<usize>], nvars: usize) -> Result<IntPolynomial> {
    let l = grid.len();
    if l > RYSER_LIMIT {
        return Err(Error::guard("ryser_size", RYSER_LIMIT as u128, l as u128));
    }
    validate(grid, nvars)?;
    let pack = Packing::new(nvars, l)?;
    if l == 0 {
        return Ok(IntPolynomial::one(nvars));
    }
    let total: u64 = 1 << l;
    let chunks = (rayon::current_num_threads() as u64 * 8).clamp(1, total);
    let chunk_len = total.div_ceil(chunks);
    let gray = |k: u64| k ^ (k >> 1);

    let terms = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = (c * chunk_len).max(1);
            let end = ((c + 1) * chunk_len).min(total);
            let mut acc: HashMap<u128, i128> = HashMap::new();
            if start >= end {
                return acc;
            }
            let mut subset = gray(start);
            let mut counts = vec![vec![0i64; nvars]; l];
            for j in (0..l).filter(|j| subset >> j & 1 == 1) {
                for (i, row) in grid.iter().enumerate() {
                    counts[i][row[j]] += 1;
                }
            }
            for k in start..end {
                if k > start {
                    let next = gray(k);
                    let j = (next ^ subset).trailing_zeros() as usize;
                    let delta = if next >> j & 1 == 1 { 1 } else { -1 };
                    for (i, row) in grid.iter().enumerate() {
                        counts[i][row[j]] += delta;
                    }
                    subset = next;
                }
                let sign: i128 = if (l as u32 - subset.count_ones()) % 2 == 0 { 1 } else { -1 };
                for (key, c) in product_of_row_sums(&counts, &pack) {
                    *acc.entry(key).or_insert(0) += sign * c;
                }
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let terms: HashMap<u128, i128> = terms.into_iter().filter(|(_, c)| *c != 0).collect();
    Ok(to_polynomial(&pack, terms))
}

/// Permanent of the variable-index matrix `grid` over `Z[x_0..x_{nvars-1}]`.
pub fn permanent_of_grid(grid: &[Vec<usize>], nvars: usize, alg: PermanentAlgorithm) -> Result<IntPolynomial> {
    match alg {
        PermanentAlgorithm::Leibniz => leibniz(grid, nvars, false),
        PermanentAlgorithm::Ryser => ryser(grid, nvars),
    }
}

/// Determinant by the signed permutation expansion.
pub fn determinant_of_grid(grid: &[Vec<usize>], nvars: usize) -> Result<IntPolynomial> {
    leibniz(grid, nvars, true)
}
