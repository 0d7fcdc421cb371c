//! Cyclotomic polynomials and exact arithmetic in `Z[zeta_e]`.
//!
//! Elements are stored in the power basis `1, z, ..., z^(phi(e)-1)` and kept
//! reduced modulo the `e`-th cyclotomic polynomial, so equality and zero tests
//! are coefficientwise.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numtheory::divisors_of;

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of `num` by a monic `den`; panics if the remainder is nonzero.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        quot[k - dd] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[k - dd + j] -= &c * dj;
        }
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    quot
}

fn compute_cyclotomic(e: u64) -> Vec<BigInt> {
    // x^e - 1
    let mut num = vec![BigInt::zero(); e as usize + 1];
    num[0] = BigInt::from(-1);
    num[e as usize] = BigInt::one();
    let mut den = vec![BigInt::one()];
    for d in divisors_of(e) {
        if d < e {
            den = poly_mul(&den, &cyclotomic_polynomial(d));
        }
    }
    poly_div_exact(&num, &den)
}

fn cache() -> &'static Mutex<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached_cyclotomic(e: u64) -> Arc<Vec<BigInt>> {
    if let Some(p) = cache().lock().unwrap().get(&e) {
        return p.clone();
    }
    let p = Arc::new(compute_cyclotomic(e));
    cache().lock().unwrap().insert(e, p.clone());
    p
}

/// Coefficients (ascending) of the `e`-th cyclotomic polynomial, obtained by
/// dividing `x^e - 1` by all `Phi_d` with `d | e`, `d < e`.
pub fn cyclotomic_polynomial(e: u64) -> Vec<BigInt> {
    assert!(e >= 1, "cyclotomic_polynomial: e must be >= 1");
    cached_cyclotomic(e).as_ref().clone()
}

#[derive(Clone)]
struct Modulus {
    e: u64,
    phi: Arc<Vec<BigInt>>,
}

impl Modulus {
    fn new(e: u64) -> Self {
        Modulus {
            e,
            phi: cached_cyclotomic(e),
        }
    }

    fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree();
        for k in (d..v.len()).rev() {
            let c = std::mem::take(&mut v[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                let pj = &self.phi[j];
                if !pj.is_zero() {
                    v[k - d + j] -= &c * pj;
                }
            }
        }
        v.truncate(d);
        v.resize(d, BigInt::zero());
        v
    }
}

/// An element of `Z[zeta_e]`.
///
/// Plain integers (`e = 1`) combine with elements of any other order; mixing
/// two different orders `e > 1` is a caller error.
#[derive(Clone)]
pub struct CyclotomicInt {
    modulus: Modulus,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInt {
    pub fn from_integer(e: u64, n: impl Into<BigInt>) -> Self {
        let modulus = Modulus::new(e);
        let mut coeffs = vec![BigInt::zero(); modulus.degree()];
        coeffs[0] = n.into();
        CyclotomicInt { modulus, coeffs }
    }

    /// `zeta_e^t` for any integer `t`.
    pub fn root_power(e: u64, t: i64) -> Self {
        let modulus = Modulus::new(e);
        let t = t.rem_euclid(e as i64) as usize;
        let mut v = vec![BigInt::zero(); (t + 1).max(modulus.degree())];
        v[t] = BigInt::one();
        let coeffs = modulus.reduce(v);
        CyclotomicInt { modulus, coeffs }
    }

    /// Reduce an arbitrary coefficient vector in `z` modulo `Phi_e`.
    pub fn from_coeffs(e: u64, coeffs: Vec<BigInt>) -> Self {
        let modulus = Modulus::new(e);
        let mut v = coeffs;
        if v.len() < modulus.degree() {
            v.resize(modulus.degree(), BigInt::zero());
        }
        let coeffs = modulus.reduce(v);
        CyclotomicInt { modulus, coeffs }
    }

    pub fn order(&self) -> u64 {
        self.modulus.e
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// The rational integer this element equals, if it has no irrational part.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        self.to_integer().is_some()
    }

    fn lift(&self, modulus: &Modulus) -> CyclotomicInt {
        debug_assert_eq!(self.modulus.e, 1);
        let mut coeffs = vec![BigInt::zero(); modulus.degree()];
        coeffs[0] = self.coeffs[0].clone();
        CyclotomicInt {
            modulus: modulus.clone(),
            coeffs,
        }
    }

    /// Bring both operands to a common order, or report the mismatch.
    fn unify<'a>(
        a: &'a CyclotomicInt,
        b: &'a CyclotomicInt,
    ) -> Result<(std::borrow::Cow<'a, CyclotomicInt>, std::borrow::Cow<'a, CyclotomicInt>)> {
        use std::borrow::Cow;
        let (ea, eb) = (a.modulus.e, b.modulus.e);
        if ea == eb {
            Ok((Cow::Borrowed(a), Cow::Borrowed(b)))
        } else if ea == 1 {
            Ok((Cow::Owned(a.lift(&b.modulus)), Cow::Borrowed(b)))
        } else if eb == 1 {
            Ok((Cow::Borrowed(a), Cow::Owned(b.lift(&a.modulus))))
        } else {
            Err(Error::Mismatch(format!(
                "cyclotomic orders {ea} and {eb} differ"
            )))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let (a, b) = Self::unify(self, other)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        Ok(CyclotomicInt {
            modulus: a.modulus.clone(),
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = Self::unify(self, other)?;
        let prod = poly_mul(&a.coeffs, &b.coeffs);
        Ok(CyclotomicInt {
            modulus: a.modulus.clone(),
            coeffs: a.modulus.reduce(prod),
        })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CyclotomicInt {
            modulus: self.modulus.clone(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }
}

impl PartialEq for CyclotomicInt {
    fn eq(&self, other: &Self) -> bool {
        match Self::unify(self, other) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => false,
        }
    }
}

impl Eq for CyclotomicInt {}

impl fmt::Debug for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclotomicInt(e={}, {})", self.modulus.e, self)
    }
}

impl fmt::Display for CyclotomicInt {
    /// Power-basis form in the symbol `z` (a primitive `e`-th root of unity).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{mag}*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for CyclotomicInt {
    type Output = CyclotomicInt;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("cyclotomic order mismatch")
    }
}

impl<'a> Add<&'a CyclotomicInt> for &'a CyclotomicInt {
    type Output = CyclotomicInt;
    fn add(self, rhs: Self) -> CyclotomicInt {
        self.try_add(rhs).expect("cyclotomic order mismatch")
    }
}

impl Neg for CyclotomicInt {
    type Output = CyclotomicInt;
    fn neg(self) -> Self {
        CyclotomicInt {
            modulus: self.modulus,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for CyclotomicInt {
    type Output = CyclotomicInt;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for CyclotomicInt {
    type Output = CyclotomicInt;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("cyclotomic order mismatch")
    }
}

impl<'a> Mul<&'a CyclotomicInt> for &'a CyclotomicInt {
    type Output = CyclotomicInt;
    fn mul(self, rhs: Self) -> CyclotomicInt {
        self.try_mul(rhs).expect("cyclotomic order mismatch")
    }
}

impl Zero for CyclotomicInt {
    fn zero() -> Self {
        CyclotomicInt::from_integer(1, 0)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl One for CyclotomicInt {
    fn one() -> Self {
        CyclotomicInt::from_integer(1, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::{phi_u64, ramanujan_i64};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn degrees_and_product_over_divisors() {
        for e in 1..=60u64 {
            let p = cyclotomic_polynomial(e);
            assert_eq!((p.len() - 1) as u64, phi_u64(e));
            let prod = divisors_of(e)
                .into_iter()
                .fold(vec![BigInt::one()], |acc, d| poly_mul(&acc, &cyclotomic_polynomial(d)));
            let mut expect = vec![BigInt::zero(); e as usize + 1];
            expect[0] = BigInt::from(-1);
            expect[e as usize] = BigInt::one();
            assert_eq!(prod, expect, "e = {e}");
        }
    }

    #[test]
    fn root_of_unity_relations() {
        let z3 = CyclotomicInt::root_power(3, 1);
        let cube = &(&z3 * &z3) * &z3;
        assert_eq!(cube, CyclotomicInt::one());
        for e in 1..=24u64 {
            let z = CyclotomicInt::root_power(e, 1);
            let mut p = CyclotomicInt::one();
            for _ in 0..e {
                p = &p * &z;
            }
            assert_eq!(p, CyclotomicInt::one(), "zeta_{e}^{e}");
            for k in 0..(2 * e as i64) {
                let sum = (0..e as i64)
                    .map(|t| CyclotomicInt::root_power(e, t * k))
                    .fold(CyclotomicInt::zero(), |a, b| a + b);
                let expect = if k % e as i64 == 0 { e as i64 } else { 0 };
                assert_eq!(sum.to_integer(), Some(BigInt::from(expect)));
            }
        }
    }

    #[test]
    fn ramanujan_agrees_with_root_sums() {
        for n in 1..=60u64 {
            for i in 0..(n as i64 + 3) {
                let direct = (0..n as i64)
                    .filter(|k| num_integer::Integer::gcd(k, &(n as i64)) == 1)
                    .map(|k| CyclotomicInt::root_power(n, k * i))
                    .fold(CyclotomicInt::zero(), |a, b| a + b);
                assert_eq!(
                    direct.to_integer(),
                    Some(BigInt::from(ramanujan_i64(n, i))),
                    "c_{n}({i})"
                );
            }
        }
    }

    #[test]
    fn orthogonality_sum_is_zero_constant() {
        let s = CyclotomicInt::root_power(3, 0)
            + CyclotomicInt::root_power(3, 1)
            + CyclotomicInt::root_power(3, 2);
        assert!(s.is_zero());
        assert_eq!(s.to_integer(), Some(BigInt::zero()));
    }

    #[test]
    fn mixed_orders_are_rejected() {
        let a = CyclotomicInt::root_power(3, 1);
        let b = CyclotomicInt::root_power(4, 1);
        assert!(a.try_add(&b).is_err());
        assert!(a.try_mul(&b).is_err());
        // integers embed everywhere
        let two = CyclotomicInt::from_integer(1, 2);
        assert_eq!((&a * &two).coeffs(), &ints(&[0, 2])[..]);
    }

    #[test]
    fn non_integral_detection() {
        assert_eq!(CyclotomicInt::root_power(4, 1).to_integer(), None);
        assert_eq!(CyclotomicInt::root_power(4, 2).to_integer(), Some(BigInt::from(-1)));
        assert_eq!(format!("{}", CyclotomicInt::root_power(6, 2)), "-1 + z");
    }
}
