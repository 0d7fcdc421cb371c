//! Cayley tables of finite abelian groups as matrices of variables, their
//! permanents and determinants, and checkers for the structural results
//! about them.
//!
//! Variable `x_k` stands for the group element with index `k` in
//! [`FiniteAbelianGroup::element`] order; `x_0` is always the neutral element.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::groups::{permutation_sign, FiniteAbelianGroup};
use crate::molien::{a_coeff, compositions, sym_series, GroupSource, ENUMERATION_LIMIT};
use crate::numtheory::binomial;
use crate::permanent::{determinant_of_grid, permanent_of_grid, PermanentAlgorithm, LEIBNIZ_LIMIT, RYSER_LIMIT};
use crate::polynom::{apply_group_action, to_integer_polynomial, Monomial};
use crate::report::{Report, ReportBuilder};
use crate::{CycPolynomial, CyclotomicInt, IntPolynomial};

/// Largest group order for which action identities are checked exhaustively.
pub const EXHAUSTIVE_ACTION_LIMIT: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `m_ij = x_i + x_j`.
    Plain,
    /// `m_ij = x_i - x_j`.
    Hat,
    /// The addition table of `x_0, .., x_{n-1}, x_0`.
    Extended,
    /// `[[M, M], [M, M]]`.
    Block2n,
    /// `m_ij = x_{(j - i) mod n}` for `0 <= i, j < l`; cyclic groups only.
    Toeplitz,
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::Hat => "hat",
            Variant::Extended => "extended",
            Variant::Block2n => "block2n",
            Variant::Toeplitz => "toeplitz",
        }
    }

    pub const ALL: [Variant; 5] = [
        Variant::Plain,
        Variant::Hat,
        Variant::Extended,
        Variant::Block2n,
        Variant::Toeplitz,
    ];
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown table variant `{s}` (plain|hat|extended|block2n|toeplitz)")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeterminantAlgorithm {
    Leibniz,
    /// Product of the linear forms `v_j = sum_i chi_j(x_i) x_i`.
    Factored,
}

impl std::str::FromStr for DeterminantAlgorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "leibniz" => Ok(Self::Leibniz),
            "factored" => Ok(Self::Factored),
            _ => Err(Error::Parse(format!("unknown determinant algorithm `{s}` (leibniz|factored)"))),
        }
    }
}

/// A square matrix whose entries are variables `x_k`, `k < nvars`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyMatrix {
    pub group: String,
    pub variant: Variant,
    pub size: usize,
    pub nvars: usize,
    pub grid: Vec<Vec<usize>>,
}

impl CayleyMatrix {
    /// Build a table variant. `l` is only consulted for [`Variant::Toeplitz`]
    /// (default `n`).
    pub fn build(group: &FiniteAbelianGroup, variant: Variant, l: Option<usize>) -> Result<Self> {
        let labels: Vec<usize> = (0..group.order()).collect();
        Self::build_labelled(group, variant, l, &labels)
    }

    /// Build a table listing the elements in the order `labels` (a
    /// permutation of element indices with `labels[0] = 0` for the variants
    /// that rely on the neutral element coming first). Variables keep their
    /// element-index names.
    pub fn build_labelled(
        group: &FiniteAbelianGroup,
        variant: Variant,
        l: Option<usize>,
        labels: &[usize],
    ) -> Result<Self> {
        let n = group.order();
        let mut sorted = labels.to_vec();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(Error::InvalidArgument("labels must be a permutation of the element indices".into()));
        }
        if variant != Variant::Toeplitz && l.is_some_and(|l| l != Self::natural_size(n, variant)) {
            return Err(Error::InvalidArgument(format!(
                "variant {variant} has fixed size {}",
                Self::natural_size(n, variant)
            )));
        }
        let add = group.add_table();
        let neg = group.neg_table();
        let grid: Vec<Vec<usize>> = match variant {
            Variant::Plain => (0..n)
                .map(|i| (0..n).map(|j| add[labels[i]][labels[j]]).collect())
                .collect(),
            Variant::Hat => (0..n)
                .map(|i| (0..n).map(|j| add[labels[i]][neg[labels[j]]]).collect())
                .collect(),
            Variant::Extended => {
                let mut ext = labels.to_vec();
                ext.push(0);
                (0..=n).map(|i| (0..=n).map(|j| add[ext[i]][ext[j]]).collect()).collect()
            }
            Variant::Block2n => (0..2 * n)
                .map(|i| (0..2 * n).map(|j| add[labels[i % n]][labels[j % n]]).collect())
                .collect(),
            Variant::Toeplitz => {
                if !group.has_single_factor() {
                    return Err(Error::InvalidArgument(format!(
                        "the Toeplitz table is defined for cyclic groups only, not {group}"
                    )));
                }
                let l = l.unwrap_or(n);
                if l < n {
                    return Err(Error::InvalidArgument(format!("Toeplitz size {l} is below the group order {n}")));
                }
                // x_(j - i): the natural ordering of C_n, ignoring labels
                (0..l).map(|i| (0..l).map(|j| (j + n * l - i) % n).collect()).collect()
            }
        };
        Ok(CayleyMatrix {
            group: group.to_string(),
            variant,
            size: grid.len(),
            nvars: n,
            grid,
        })
    }

    fn natural_size(n: usize, variant: Variant) -> usize {
        match variant {
            Variant::Plain | Variant::Hat | Variant::Toeplitz => n,
            Variant::Extended => n + 1,
            Variant::Block2n => 2 * n,
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> usize {
        self.grid[i][j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size).all(|i| (0..i).all(|j| self.grid[i][j] == self.grid[j][i]))
    }
}

impl fmt::Display for CayleyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = format!("x{}", self.nvars.saturating_sub(1)).len();
        for row in &self.grid {
            let cells: Vec<String> = row.iter().map(|v| format!("{:>width$}", format!("x{v}"))).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Exact symbolic permanent.
pub fn permanent(m: &CayleyMatrix, alg: PermanentAlgorithm) -> Result<IntPolynomial> {
    permanent_of_grid(&m.grid, m.nvars, alg)
}

/// Ryser where the expansion would be large, Leibniz otherwise.
pub fn permanent_auto(m: &CayleyMatrix) -> Result<IntPolynomial> {
    let alg = if m.size <= 6 { PermanentAlgorithm::Leibniz } else { PermanentAlgorithm::Ryser };
    permanent(m, alg)
}

/// `prod_j v_j` with `v_j = sum_i chi_j(x_i) x_i`, over `Z[zeta_e]`.
fn linear_form_product(group: &FiniteAbelianGroup) -> Result<IntPolynomial> {
    let n = group.order();
    let e = group.exponent();
    let elements = group.elements();
    let mut acc = CycPolynomial::constant(n, CyclotomicInt::from_integer(e, 1));
    for chi in group.characters() {
        let v = CycPolynomial::from_terms(
            n,
            elements
                .iter()
                .enumerate()
                .map(|(i, a)| (Monomial::var(n, i), group.char_value(&chi, a))),
        );
        acc = acc.try_mul(&v)?;
    }
    to_integer_polynomial(&acc)
}

/// Exact symbolic determinant. The factored path needs the square Cayley
/// structure (plain or hat); the extended table has two equal columns, so
/// its determinant is zero outright.
pub fn determinant(m: &CayleyMatrix, group: &FiniteAbelianGroup, alg: DeterminantAlgorithm) -> Result<IntPolynomial> {
    if m.nvars != group.order() || m.group != group.to_string() {
        return Err(Error::Mismatch(format!("table of {} used with group {group}", m.group)));
    }
    if m.variant == Variant::Extended {
        return Ok(IntPolynomial::zero(m.nvars));
    }
    match alg {
        DeterminantAlgorithm::Leibniz => determinant_of_grid(&m.grid, m.nvars),
        DeterminantAlgorithm::Factored => {
            let relabelled = match m.variant {
                Variant::Plain | Variant::Hat => m.grid != CayleyMatrix::build(group, m.variant, None)?.grid,
                _ => true,
            };
            if relabelled {
                return Err(Error::InvalidArgument(format!(
                    "factored determinant needs the plain or hat table in natural order, got {}",
                    m.variant
                )));
            }
            let prod = linear_form_product(group)?;
            // det M = sign(inversion) prod v_j; the hat table is M with its
            // columns permuted by inversion, which cancels the sign
            let sign = if m.variant == Variant::Hat { 1 } else { group.inversion_permutation_sign() };
            Ok(if sign == 1 { prod } else { prod.neg() })
        }
    }
}

/// Leibniz when small enough, otherwise the factored form.
pub fn determinant_auto(m: &CayleyMatrix, group: &FiniteAbelianGroup) -> Result<IntPolynomial> {
    let alg = if m.size <= 8 { DeterminantAlgorithm::Leibniz } else { DeterminantAlgorithm::Factored };
    determinant(m, group, alg)
}

/// All exponent vectors `k` with `sum k_i = degree` and `sum k_i x_i = 0` in `G`.
pub fn hall_support(group: &FiniteAbelianGroup, degree: usize) -> Result<BTreeSet<Monomial>> {
    let n = group.order();
    let size = binomial((n + degree - 1) as u64, degree as u64);
    if size > BigInt::from(ENUMERATION_LIMIT) {
        return Err(Error::guard(
            "hall_support_compositions",
            ENUMERATION_LIMIT,
            u128::try_from(&size).unwrap_or(u128::MAX),
        ));
    }
    let add = group.add_table();
    // multiples[i][k] = index of k * x_i
    let multiples: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mut row = vec![0usize];
            for _ in 0..degree {
                row.push(add[*row.last().unwrap()][i]);
            }
            row
        })
        .collect();

    fn rec(
        var: usize,
        left: usize,
        sum: usize,
        exps: &mut Vec<u32>,
        add: &[Vec<usize>],
        multiples: &[Vec<usize>],
        out: &mut BTreeSet<Monomial>,
    ) {
        let n = exps.len();
        if var + 1 == n {
            exps[var] = left as u32;
            if add[sum][multiples[var][left]] == 0 {
                out.insert(Monomial(exps.clone()));
            }
            return;
        }
        for k in 0..=left {
            exps[var] = k as u32;
            rec(var + 1, left - k, add[sum][multiples[var][k]], exps, add, multiples, out);
        }
    }

    let mut out = BTreeSet::new();
    rec(0, degree, 0, &mut vec![0; n], &add, &multiples, &mut out);
    Ok(out)
}

/// `p(G)`: distinct monomials in `per(M_G)`, via the support criterion,
/// cross-checked against the literal permanent for `|G| <= 7`.
pub fn p_count(group: &FiniteAbelianGroup) -> Result<BigInt> {
    let n = group.order();
    let support = hall_support(group, n)?;
    if n <= 7 {
        let per = permanent_auto(&CayleyMatrix::build(group, Variant::Plain, None)?)?;
        if per.support() != support {
            return Err(Error::Mismatch(format!("support of per(M_{group}) differs from the Hall criterion")));
        }
    }
    Ok(BigInt::from(support.len()))
}

/// `d(G)`: monomials surviving cancellation in `det(M_G)`.
pub fn d_count(group: &FiniteAbelianGroup) -> Result<BigInt> {
    let det = determinant_auto(&CayleyMatrix::build(group, Variant::Plain, None)?, group)?;
    Ok(BigInt::from(det.len()))
}

/// `psi(gamma)` for `psi` the product of all characters, as `+1` or `-1`.
fn psi_values(group: &FiniteAbelianGroup) -> Result<Vec<i64>> {
    let chars = group.characters();
    let psi = chars.iter().skip(1).fold(chars[0].clone(), |acc, c| group.char_mul(&acc, c));
    group
        .elements()
        .iter()
        .map(|g| {
            let v = group.char_value(&psi, g).to_integer();
            match v.as_ref().and_then(|v| i64::try_from(v).ok()) {
                Some(s @ (1 | -1)) => Ok(s),
                _ => Err(Error::NonIntegral(format!("psi({g}) is not a sign"))),
            }
        })
        .collect()
}

/// `gamma . per = per` and `gamma . det = psi(gamma) det` for every `gamma`.
pub fn check_invariance(group: &FiniteAbelianGroup) -> Result<Report> {
    let mut rb = ReportBuilder::new("invariance", json!({ "group": group.to_string() }));
    let table = CayleyMatrix::build(group, Variant::Plain, None)?;
    let per = permanent_auto(&table)?;
    let det = determinant_auto(&table, group)?;
    let psi = psi_values(group)?;
    let nontrivial = psi.iter().any(|&s| s == -1);
    rb.note(format!("weight of det is {}", if nontrivial { "nontrivial" } else { "trivial" }));
    for (idx, gamma) in group.elements().iter().enumerate() {
        let moved = apply_group_action(group, gamma, &per)?;
        rb.case(moved == per, || json!({ "object": "per", "gamma": gamma.to_string() }));
        let moved = apply_group_action(group, gamma, &det)?;
        let expected = if psi[idx] == 1 { det.clone() } else { det.neg() };
        rb.case(moved == expected, || {
            json!({ "object": "det", "gamma": gamma.to_string(), "psi": psi[idx] })
        });
    }
    Ok(rb.finish())
}

/// The Cayley-table data the action identities are phrased in.
struct ActionContext {
    n: usize,
    add: Vec<Vec<usize>>,
    /// `sigma[g][i]` = index of `x_i + g`.
    sigma: Vec<Vec<usize>>,
}

impl ActionContext {
    fn new(group: &FiniteAbelianGroup) -> Self {
        let add = group.add_table();
        let n = group.order();
        let sigma = (0..n).map(|g| (0..n).map(|i| add[i][g]).collect()).collect();
        ActionContext { n, add, sigma }
    }

    /// Exponent vector of `x(pi) = prod_i (x_i + x_pi(i))`.
    fn monomial(&self, pi: &[usize]) -> Vec<u32> {
        let mut e = vec![0u32; self.n];
        for (i, &p) in pi.iter().enumerate() {
            e[self.add[i][p]] += 1;
        }
        e
    }

    /// Find `sigma` with `sigma(i) = j` and `x(sigma) = target`.
    fn realise(&self, target: &[u32], i: usize, j: usize) -> Option<Vec<usize>> {
        let mut left = target.to_vec();
        let k = self.add[i][j];
        if left[k] == 0 {
            return None;
        }
        left[k] -= 1;
        let mut perm = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        perm[i] = j;
        used[j] = true;
        fn rec(ctx: &ActionContext, row: usize, fixed: usize, left: &mut [u32], perm: &mut [usize], used: &mut [bool]) -> bool {
            if row == ctx.n {
                return true;
            }
            if row == fixed {
                return rec(ctx, row + 1, fixed, left, perm, used);
            }
            for col in 0..ctx.n {
                let k = ctx.add[row][col];
                if !used[col] && left[k] > 0 {
                    used[col] = true;
                    left[k] -= 1;
                    perm[row] = col;
                    if rec(ctx, row + 1, fixed, left, perm, used) {
                        return true;
                    }
                    used[col] = false;
                    left[k] += 1;
                }
            }
            false
        }
        rec(self, 0, i, &mut left, &mut perm, &mut used).then_some(perm)
    }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // (a b)(i) = a(b(i))
    b.iter().map(|&x| a[x]).collect()
}

fn inverse(a: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    // Heap's algorithm, iterative
    let mut c = vec![0usize; n];
    out.push(cur.clone());
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                cur.swap(0, i);
            } else {
                cur.swap(c[i], i);
            }
            out.push(cur.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// The permutations an action check visits: all of `S_n` for small groups,
/// otherwise `sample` seeded uniform draws.
pub fn action_permutations(n: usize, sample: usize, seed: u64) -> Vec<Vec<usize>> {
    if n <= EXHAUSTIVE_ACTION_LIMIT {
        return all_permutations(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..sample)
        .map(|_| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut rng);
            p
        })
        .collect()
}

/// For every visited `pi` and every `gamma`: `gamma * pi = s pi s` (with `s`
/// the translation by `gamma`) keeps the sign and the monomial of `pi`;
/// `gamma . x(pi) = x(pi s^-1)`; `x(pi) = x(pi^-1)`; and each factor
/// `x_k = x_i + x_j` of `x(pi)` can be realised with `sigma(i) = j`.
pub fn check_action_identities(group: &FiniteAbelianGroup, sample: usize, seed: u64) -> Result<Report> {
    let n = group.order();
    let perms = action_permutations(n, sample, seed);
    let exhaustive = n <= EXHAUSTIVE_ACTION_LIMIT;
    let mut rb = ReportBuilder::new(
        "actions",
        json!({ "group": group.to_string(), "permutations": perms.len(), "exhaustive": exhaustive, "seed": seed }),
    );
    let ctx = ActionContext::new(group);
    let mut realised: HashMap<(Vec<u32>, usize, usize), bool> = HashMap::new();
    for pi in &perms {
        let x_pi = ctx.monomial(pi);
        let sign = permutation_sign(pi);
        let inv = inverse(pi);
        rb.case(ctx.monomial(&inv) == x_pi, || json!({ "identity": "x(pi) = x(pi^-1)", "pi": pi }));
        for (g, s) in ctx.sigma.iter().enumerate() {
            let star = compose(s, &compose(pi, s));
            if g == 0 {
                rb.case(&star == pi, || json!({ "identity": "0 * pi = pi", "pi": pi }));
            }
            rb.case(permutation_sign(&star) == sign && ctx.monomial(&star) == x_pi, || {
                json!({ "identity": "gamma * pi keeps sign and monomial", "pi": pi, "gamma": g })
            });
            // gamma . x_k = x_{k + gamma}
            let mut moved = vec![0u32; n];
            for (k, &e) in x_pi.iter().enumerate() {
                moved[s[k]] += e;
            }
            let rhs = ctx.monomial(&compose(pi, &inverse(s)));
            rb.case(moved == rhs, || json!({ "identity": "gamma . x(pi) = x(pi sigma^-1)", "pi": pi, "gamma": g }));
        }
        for i in 0..n {
            for j in 0..n {
                let k = ctx.add[i][j];
                if x_pi[k] == 0 {
                    continue;
                }
                let ok = *realised
                    .entry((x_pi.clone(), i, j))
                    .or_insert_with(|| ctx.realise(&x_pi, i, j).is_some_and(|s| ctx.monomial(&s) == x_pi && s[i] == j));
                rb.case(ok, || json!({ "identity": "realise x_i + x_j with sigma(i) = j", "pi": pi, "i": i, "j": j }));
            }
        }
    }
    Ok(rb.finish())
}

/// Every coefficient of `per(M_{C_p}) - sum x_i^p` and of
/// `det - sum x_i^p` is divisible by `p`, where `det` is the determinant of
/// the circulant in Toeplitz form (the hat table). The Hankel table `M_{C_p}`
/// differs by `sign(inversion) = (-1)^((p-1)/2)`, so it is checked with that
/// sign applied.
pub fn lehmer_check(p: u64) -> Result<Report> {
    if !matches!(p, 3 | 5 | 7) {
        return Err(Error::InvalidArgument(format!("lehmer_check: p must be 3, 5 or 7, got {p}")));
    }
    let group = FiniteAbelianGroup::cyclic(p)?;
    let n = p as usize;
    let table = CayleyMatrix::build(&group, Variant::Plain, None)?;
    let powers = IntPolynomial::from_terms(
        n,
        (0..n).map(|i| {
            let mut e = vec![0u32; n];
            e[i] = p as u32;
            (Monomial(e), BigInt::one())
        }),
    );
    let mut rb = ReportBuilder::new("lehmer", json!({ "p": p }));
    let per = permanent(&table, PermanentAlgorithm::Leibniz)?;
    let hat = CayleyMatrix::build(&group, Variant::Hat, None)?;
    let det_hat = determinant(&hat, &group, DeterminantAlgorithm::Leibniz)?;
    let det = determinant(&table, &group, DeterminantAlgorithm::Leibniz)?;
    let det = if group.inversion_permutation_sign() == 1 { det } else { det.neg() };
    let modulus = BigInt::from(p);
    for (name, poly) in [("per", per), ("det(hat)", det_hat), ("sign * det", det)] {
        let rest = poly.try_sub(&powers)?;
        for (m, c) in rest.terms() {
            rb.case(c.is_multiple_of(&modulus), || {
                json!({ "object": name, "monomial": m.to_string(), "coeff": c.to_string() })
            });
        }
        // the rest is a genuine correction: nothing is hidden in the x_i^p terms
        rb.case(rest.terms().all(|(m, _)| m.exponents().iter().all(|&e| e < p as u32)), || {
            json!({ "object": name, "issue": "pure power survives in the remainder" })
        });
    }
    Ok(rb.finish())
}

/// Distinct-monomial counts of the extended and doubled tables against the
/// invariant dimensions `dim S^(n+1)(R)^G` and `dim S^(2n)(R)^G`, with the
/// extended support also compared to the Hall criterion in degree `n + 1`.
pub fn check_block_and_extended_counts(group: &FiniteAbelianGroup) -> Result<Report> {
    let n = group.order();
    let mut rb = ReportBuilder::new("extended", json!({ "group": group.to_string() }));
    let sym = sym_series(GroupSource::Group(group), 0, 2 * n)?;
    let expect = |k: usize| sym.coeff(k).to_integer();

    if n + 1 <= LEIBNIZ_LIMIT {
        let per = permanent_auto(&CayleyMatrix::build(group, Variant::Extended, None)?)?;
        let count = BigInt::from(per.len());
        let want = expect(n + 1);
        rb.case(count == want, || json!({ "table": "extended", "count": count.to_string(), "expected": want.to_string() }));
        let hall = hall_support(group, n + 1)?;
        rb.case(per.support() == hall, || json!({ "table": "extended", "issue": "support differs from the Hall criterion" }));
    } else {
        rb.note(format!("extended table of size {} skipped (limit {LEIBNIZ_LIMIT})", n + 1));
    }
    if 2 * n <= LEIBNIZ_LIMIT {
        let per = permanent_auto(&CayleyMatrix::build(group, Variant::Block2n, None)?)?;
        let count = BigInt::from(per.len());
        let want = expect(2 * n);
        rb.case(count == want, || json!({ "table": "block2n", "count": count.to_string(), "expected": want.to_string() }));
    } else {
        rb.note(format!("block table of size {} skipped (limit {LEIBNIZ_LIMIT})", 2 * n));
    }
    Ok(rb.finish())
}

/// Support of `per` of the size-`l` Toeplitz table of `C_n`, compared with
/// `{lambda : sum lambda = l, sum j lambda_j = 0 mod n}` and with `a_0(C_n, l)`.
/// On disagreement the full symmetric difference is reported.
pub fn check_conjecture(n: u64, l: usize) -> Result<Report> {
    if l > 12 {
        return Err(Error::guard("conjecture_size", 12, l as u128));
    }
    let group = FiniteAbelianGroup::cyclic(n)?;
    let table = CayleyMatrix::build(&group, Variant::Toeplitz, Some(l))?;
    let alg = if l <= 7 { PermanentAlgorithm::Leibniz } else { PermanentAlgorithm::Ryser };
    let per = permanent(&table, alg)?;
    let support = per.support();
    let target: BTreeSet<Monomial> = compositions(n as usize, l as u64)
        .into_iter()
        .filter(|lam| lam.iter().enumerate().map(|(j, &x)| j as u64 * x).sum::<u64>() % n == 0)
        .map(|lam| Monomial(lam.into_iter().map(|x| x as u32).collect()))
        .collect();
    let a0 = a_coeff(n, l as u64, 0)?;
    let mut rb = ReportBuilder::new("conjecture", json!({ "n": n, "l": l, "algorithm": alg }));
    let count = BigInt::from(support.len());
    rb.case(count == a0, || json!({ "count": count.to_string(), "a0": a0.to_string() }));
    let missing: Vec<String> = target.difference(&support).map(|m| m.to_string()).collect();
    let extra: Vec<String> = support.difference(&target).map(|m| m.to_string()).collect();
    rb.case(missing.is_empty() && extra.is_empty(), || {
        json!({ "missing_from_permanent": missing, "not_satisfying_condition": extra })
    });
    rb.note(format!("{} distinct monomials", support.len()));
    Ok(rb.finish())
}

/// `p(G)`, `d(G)` and the invariant coefficients of `G` next to those of the
/// cyclic group of the same order, for exploratory tabulation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountsRow {
    pub group: String,
    #[serde(with = "crate::decimal::big")]
    pub p: BigInt,
    #[serde(with = "crate::decimal::big")]
    pub d: BigInt,
    /// `[t^m]` of the invariant series of `G` and of `C_n`, `m = 0..=max_m`.
    #[serde(with = "crate::decimal::big_vec")]
    pub invariants: Vec<BigInt>,
    #[serde(with = "crate::decimal::big_vec")]
    pub cyclic_invariants: Vec<BigInt>,
}

pub fn counts_row(group: &FiniteAbelianGroup, max_m: usize) -> Result<CountsRow> {
    let n = group.order();
    let cyclic = FiniteAbelianGroup::cyclic(n as u64)?;
    let coeffs = |g: &FiniteAbelianGroup| -> Result<Vec<BigInt>> {
        let s = sym_series(GroupSource::Group(g), 0, max_m)?;
        Ok(s.integer_coeffs().expect("invariant dimensions are integers"))
    };
    Ok(CountsRow {
        group: group.to_string(),
        p: p_count(group)?,
        d: d_count(group)?,
        invariants: coeffs(group)?,
        cyclic_invariants: coeffs(&cyclic)?,
    })
}

/// Hall support against the literal permanent: degree `n` on the plain
/// table and degree `n + 1` on the extended table (when `with_extended`).
pub fn check_hall(group: &FiniteAbelianGroup, with_extended: bool) -> Result<Report> {
    let n = group.order();
    let mut rb = ReportBuilder::new("hall", json!({ "group": group.to_string(), "extended": with_extended }));
    let mut variants = vec![(Variant::Plain, n)];
    if with_extended {
        variants.push((Variant::Extended, n + 1));
    }
    for (variant, degree) in variants {
        let table = CayleyMatrix::build(group, variant, None)?;
        if table.size > RYSER_LIMIT {
            rb.note(format!("{variant} table of size {} skipped", table.size));
            continue;
        }
        let per = permanent_auto(&table)?;
        let hall = hall_support(group, degree)?;
        let support = per.support();
        let missing: Vec<String> = hall.difference(&support).map(|m| m.to_string()).collect();
        let extra: Vec<String> = support.difference(&hall).map(|m| m.to_string()).collect();
        rb.case(missing.is_empty() && extra.is_empty(), || {
            json!({ "table": variant, "missing": missing, "extra": extra })
        });
        let fact: BigInt = (1..=table.size as u64).map(BigInt::from).product();
        rb.case(per.coefficient_sum() == fact, || json!({ "table": variant, "issue": "coefficient sum is not l!" }));
    }
    Ok(rb.finish())
}

/// `det` by expansion against the factored form, and `det` of the extended
/// table against zero.
pub fn check_determinant_factorization(group: &FiniteAbelianGroup) -> Result<Report> {
    let mut rb = ReportBuilder::new("det_factorization", json!({ "group": group.to_string() }));
    for variant in [Variant::Plain, Variant::Hat] {
        let table = CayleyMatrix::build(group, variant, None)?;
        let a = determinant(&table, group, DeterminantAlgorithm::Leibniz)?;
        let b = determinant(&table, group, DeterminantAlgorithm::Factored)?;
        rb.case(a == b, || json!({ "table": variant, "leibniz": a.to_string(), "factored": b.to_string() }));
    }
    let ext = CayleyMatrix::build(group, Variant::Extended, None)?;
    if ext.size <= LEIBNIZ_LIMIT {
        let d = determinant_of_grid(&ext.grid, ext.nvars)?;
        rb.case(d.is_zero(), || json!({ "table": "extended", "det": d.to_string() }));
    }
    Ok(rb.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::abelian_groups_up_to;

    fn g(s: &str) -> FiniteAbelianGroup {
        s.parse().unwrap()
    }

    fn poly(s: &str, n: usize) -> IntPolynomial {
        IntPolynomial::parse(s, n).unwrap()
    }

    #[test]
    fn table_shapes() {
        let c3 = g("C3");
        let plain = CayleyMatrix::build(&c3, Variant::Plain, None).unwrap();
        assert_eq!(plain.grid, vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]);
        assert!(plain.is_symmetric());
        let ext = CayleyMatrix::build(&c3, Variant::Extended, None).unwrap();
        assert_eq!(
            ext.grid,
            vec![vec![0, 1, 2, 0], vec![1, 2, 0, 1], vec![2, 0, 1, 2], vec![0, 1, 2, 0]]
        );
        let toe = CayleyMatrix::build(&c3, Variant::Toeplitz, Some(5)).unwrap();
        assert_eq!(
            toe.grid,
            vec![
                vec![0, 1, 2, 0, 1],
                vec![2, 0, 1, 2, 0],
                vec![1, 2, 0, 1, 2],
                vec![0, 1, 2, 0, 1],
                vec![2, 0, 1, 2, 0],
            ]
        );
        for grp in abelian_groups_up_to(8) {
            let hat = CayleyMatrix::build(&grp, Variant::Hat, None).unwrap();
            assert!((0..hat.size).all(|i| hat.entry(i, i) == 0));
            let block = CayleyMatrix::build(&grp, Variant::Block2n, None).unwrap();
            assert_eq!(block.size, 2 * grp.order());
        }
        assert!(CayleyMatrix::build(&g("C2xC2"), Variant::Toeplitz, Some(4)).is_err());
        assert!(CayleyMatrix::build(&c3, Variant::Toeplitz, Some(2)).is_err());
        assert!(CayleyMatrix::build(&c3, Variant::Plain, Some(5)).is_err());
    }

    #[test]
    fn example_permanents() {
        let c3 = g("C3");
        let plain = CayleyMatrix::build(&c3, Variant::Plain, None).unwrap();
        let per = permanent(&plain, PermanentAlgorithm::Leibniz).unwrap();
        assert_eq!(per, poly("x0^3 + x1^3 + x2^3 + 3*x0*x1*x2", 3));
        let ext = CayleyMatrix::build(&c3, Variant::Extended, None).unwrap();
        let per = permanent(&ext, PermanentAlgorithm::Ryser).unwrap();
        assert_eq!(per.to_string(), "2*x0^4 + 10*x0^2*x1*x2 + 4*x0*x1^3 + 4*x0*x2^3 + 4*x1^2*x2^2");
        let c1 = CayleyMatrix::build(&g("C1"), Variant::Plain, None).unwrap();
        assert_eq!(permanent(&c1, PermanentAlgorithm::Ryser).unwrap(), poly("x0", 1));
    }

    #[test]
    fn determinant_examples() {
        let c2 = g("C2");
        let m = CayleyMatrix::build(&c2, Variant::Plain, None).unwrap();
        assert_eq!(determinant(&m, &c2, DeterminantAlgorithm::Leibniz).unwrap(), poly("x0^2 - x1^2", 2));
        assert_eq!(determinant(&m, &c2, DeterminantAlgorithm::Factored).unwrap(), poly("x0^2 - x1^2", 2));
        for grp in abelian_groups_up_to(6) {
            let r = check_determinant_factorization(&grp).unwrap();
            assert!(r.passed(), "{grp}: {:?}", r.failures);
        }
        let ext = CayleyMatrix::build(&c2, Variant::Extended, None).unwrap();
        assert!(determinant(&ext, &c2, DeterminantAlgorithm::Factored).unwrap().is_zero());
    }

    #[test]
    fn hall_support_examples() {
        let c3 = g("C3");
        let s: Vec<Vec<u32>> = hall_support(&c3, 3).unwrap().into_iter().map(|m| m.0).collect();
        assert_eq!(s.len(), 4);
        for v in [[3, 0, 0], [0, 3, 0], [0, 0, 3], [1, 1, 1]] {
            assert!(s.contains(&v.to_vec()));
        }
        assert_eq!(hall_support(&c3, 4).unwrap().len(), 5);
        for grp in abelian_groups_up_to(8) {
            let n = grp.order();
            let mut top = vec![0u32; n];
            top[0] = n as u32;
            assert!(hall_support(&grp, n).unwrap().contains(&Monomial(top)));
        }
    }

    #[test]
    fn counts() {
        assert_eq!(p_count(&g("C4")).unwrap(), BigInt::from(10));
        assert_eq!(d_count(&g("C4")).unwrap(), BigInt::from(10));
        assert_eq!(p_count(&g("C6")).unwrap(), BigInt::from(80));
        assert_eq!(d_count(&g("C6")).unwrap(), BigInt::from(68));
        assert_eq!(p_count(&g("C2xC2")).unwrap(), BigInt::from(11));
        assert_eq!(d_count(&g("C2xC2")).unwrap(), BigInt::from(11));
        for grp in abelian_groups_up_to(8) {
            let n = grp.order();
            let s = sym_series(GroupSource::Group(&grp), 0, n).unwrap();
            assert_eq!(Some(p_count(&grp).unwrap()), s.integer_coeffs().map(|c| c[n].clone()));
        }
    }

    #[test]
    fn invariance_examples() {
        let r = check_invariance(&g("C3")).unwrap();
        assert!(r.passed());
        assert!(r.notes[0].contains("trivial") && !r.notes[0].contains("nontrivial"));
        let r = check_invariance(&g("C2")).unwrap();
        assert!(r.passed());
        assert!(r.notes[0].contains("nontrivial"));
        assert!(check_invariance(&g("C2xC2")).unwrap().notes[0].ends_with(" trivial"));
    }

    #[test]
    fn action_identities_small() {
        for s in ["C3", "C4", "C2xC2"] {
            let r = check_action_identities(&g(s), 0, 1).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.failures);
        }
        assert_eq!(action_permutations(3, 0, 0).len(), 6);
        assert_eq!(action_permutations(8, 25, 7).len(), 25);
        assert_eq!(action_permutations(8, 25, 7), action_permutations(8, 25, 7));
    }

    #[test]
    fn lehmer_small() {
        assert!(lehmer_check(3).unwrap().passed());
        assert!(lehmer_check(5).unwrap().passed());
        assert!(lehmer_check(4).is_err());
        // without the inversion sign the Hankel determinant is -sum x_i^3 + 3 x0 x1 x2
        let c3 = g("C3");
        let m = CayleyMatrix::build(&c3, Variant::Plain, None).unwrap();
        assert_eq!(
            determinant(&m, &c3, DeterminantAlgorithm::Leibniz).unwrap(),
            poly("3*x0*x1*x2 - x0^3 - x1^3 - x2^3", 3)
        );
    }

    #[test]
    fn extended_counts() {
        for s in ["C2", "C3", "C2xC2", "C4"] {
            let r = check_block_and_extended_counts(&g(s)).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.failures);
        }
    }

    #[test]
    fn conjecture_small() {
        let r = check_conjecture(3, 3).unwrap();
        assert!(r.passed());
        assert!(r.notes[0].starts_with("4 "));
        let r = check_conjecture(3, 5).unwrap();
        assert!(r.passed());
        assert!(r.notes[0].starts_with("7 "));
        for l in 2..=6 {
            assert!(check_conjecture(2, l).unwrap().passed());
        }
        assert!(check_conjecture(2, 13).unwrap_err().is_guard());
    }

    #[test]
    fn relabelling_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for grp in abelian_groups_up_to(6) {
            let n = grp.order();
            let base = CayleyMatrix::build(&grp, Variant::Plain, None).unwrap();
            let per = permanent_auto(&base).unwrap();
            let det = determinant_of_grid(&base.grid, n).unwrap();
            for _ in 0..3 {
                let mut labels: Vec<usize> = (0..n).collect();
                labels.shuffle(&mut rng);
                let m = CayleyMatrix::build_labelled(&grp, Variant::Plain, None, &labels).unwrap();
                assert_eq!(permanent_auto(&m).unwrap(), per);
                let d = determinant_of_grid(&m.grid, n).unwrap();
                assert!(d == det || d == det.neg());
            }
        }
    }

    #[test]
    fn hat_and_plain_agree() {
        for grp in abelian_groups_up_to(6) {
            let a = CayleyMatrix::build(&grp, Variant::Plain, None).unwrap();
            let b = CayleyMatrix::build(&grp, Variant::Hat, None).unwrap();
            assert_eq!(permanent_auto(&a).unwrap(), permanent_auto(&b).unwrap());
            let (da, db) = (determinant_auto(&a, &grp).unwrap(), determinant_auto(&b, &grp).unwrap());
            assert!(da == db || da == db.neg());
        }
    }
}
