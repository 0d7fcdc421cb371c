//! Truncated formal power series in one and two variables.
//!
//! A one-variable series of order `N` keeps the coefficients of `t^0..=t^N`;
//! a two-variable series of orders `(Ns, Nt)` keeps `s^p t^m` for `p <= Ns`,
//! `m <= Nt`. Both are quotient rings, so every operation is exact up to the
//! stated truncation.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{field_from_usize, Field};

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries1<F> {
    coeffs: Vec<F>,
}

impl<F: Field> TruncatedSeries1<F> {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries1 {
            coeffs: vec![F::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(F::one(), order)
    }

    pub fn constant(c: F, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series of a polynomial; terms above `order` are dropped.
    pub fn from_coeffs(mut coeffs: Vec<F>, order: usize) -> Self {
        coeffs.resize(order + 1, F::zero());
        TruncatedSeries1 { coeffs }
    }

    /// `c t^k` (zero if `k > order`).
    pub fn monomial(c: F, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::Mismatch(format!(
                "series orders {} and {}",
                self.order(),
                other.order()
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(TruncatedSeries1 {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries1 {
            coeffs: self.coeffs.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn scalar_mul(&self, c: &F) -> Self {
        TruncatedSeries1 {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let n = self.order();
        let mut out = vec![F::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(TruncatedSeries1 { coeffs: out })
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same order");
            }
            base = base.mul(&base).expect("same order");
            k >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let one = Self::one(self.order());
        expand_rational(&one.coeffs, &self.coeffs, self.order())
    }

    /// Substitute `t -> t^d`.
    pub fn dilate(&self, d: usize) -> Self {
        assert!(d >= 1);
        let mut out = Self::zero(self.order());
        for (k, c) in self.coeffs.iter().enumerate() {
            if k * d <= self.order() {
                out.coeffs[k * d] = c.clone();
            }
        }
        out
    }

    fn derivative(&self) -> Vec<F> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * field_from_usize::<F>(k))
            .collect()
    }

    fn require_zero_constant(&self, what: &str) -> Result<()> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "{what}: argument must have zero constant term"
            )))
        }
    }

    /// `log(1 + self)` for `self` with zero constant term, computed as the
    /// antiderivative of `self' / (1 + self)`.
    pub fn log1p(&self) -> Result<Self> {
        self.require_zero_constant("log1p")?;
        let n = self.order();
        let mut one_plus = self.clone();
        one_plus.coeffs[0] = F::one();
        let d = Self::from_coeffs(self.derivative(), n);
        let q = d.mul(&one_plus.inverse()?)?;
        let mut out = Self::zero(n);
        for k in 1..=n {
            out.coeffs[k] = q.coeffs[k - 1].clone() / field_from_usize::<F>(k);
        }
        Ok(out)
    }

    /// `exp(self)` for `self` with zero constant term, by the recurrence
    /// `k e_k = sum_j j v_j e_{k-j}`.
    pub fn exp(&self) -> Result<Self> {
        self.require_zero_constant("exp")?;
        let n = self.order();
        let mut e = vec![F::zero(); n + 1];
        e[0] = F::one();
        for k in 1..=n {
            let mut acc = F::zero();
            for j in 1..=k {
                let v = &self.coeffs[j];
                if !v.is_zero() {
                    acc = acc + v.clone() * field_from_usize::<F>(j) * e[k - j].clone();
                }
            }
            e[k] = acc / field_from_usize::<F>(k);
        }
        Ok(TruncatedSeries1 { coeffs: e })
    }

    /// Evaluate the truncated polynomial at a point.
    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

/// Series of `numer / denom` up to `order`, by long division.
pub fn expand_rational<F: Field>(numer: &[F], denom: &[F], order: usize) -> Result<TruncatedSeries1<F>> {
    let q0 = denom.first().cloned().unwrap_or_else(F::zero);
    if q0.is_zero() {
        return Err(Error::InvalidArgument(
            "expand_rational: denominator has zero constant term".into(),
        ));
    }
    let mut c: Vec<F> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = numer.get(k).cloned().unwrap_or_else(F::zero);
        for j in 1..=k.min(denom.len().saturating_sub(1)) {
            if !denom[j].is_zero() {
                acc = acc - denom[j].clone() * c[k - j].clone();
            }
        }
        c.push(acc / q0.clone());
    }
    Ok(TruncatedSeries1 { coeffs: c })
}

/// Integer-coefficient convenience wrapper around [`expand_rational`].
pub fn expand_rational_int(numer: &[i64], denom: &[i64], order: usize) -> Result<TruncatedSeries1<BigRational>> {
    let conv = |v: &[i64]| -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
    };
    expand_rational(&conv(numer), &conv(denom), order)
}

impl TruncatedSeries1<BigRational> {
    /// Coefficients as integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(crate::scalar::rational_to_integer)
            .collect()
    }

    /// Coefficients as decimal strings (`"3"` or `"-1/2"`).
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl<F: Field + fmt::Display> fmt::Display for TruncatedSeries1<F> {
    /// `c0 + c1*t + c2*t^2 + ...`, zero terms omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = match k {
                0 => format!("{c}"),
                _ if c.is_one() => var_power("t", k),
                _ => format!("{c}*{}", var_power("t", k)),
            };
            terms.push(body);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}

fn var_power(v: &str, k: usize) -> String {
    if k == 1 {
        v.to_string()
    } else {
        format!("{v}^{k}")
    }
}

/// Bivariate truncated series in `(s, t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries2<F> {
    order_s: usize,
    order_t: usize,
    /// row-major: index `p * (order_t + 1) + m` holds the coefficient of `s^p t^m`
    coeffs: Vec<F>,
}

impl<F: Field> TruncatedSeries2<F> {
    pub fn zero(order_s: usize, order_t: usize) -> Self {
        TruncatedSeries2 {
            order_s,
            order_t,
            coeffs: vec![F::zero(); (order_s + 1) * (order_t + 1)],
        }
    }

    pub fn one(order_s: usize, order_t: usize) -> Self {
        let mut z = Self::zero(order_s, order_t);
        z.coeffs[0] = F::one();
        z
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.order_s, self.order_t)
    }

    fn idx(&self, p: usize, m: usize) -> usize {
        p * (self.order_t + 1) + m
    }

    pub fn coeff(&self, p: usize, m: usize) -> F {
        if p <= self.order_s && m <= self.order_t {
            self.coeffs[self.idx(p, m)].clone()
        } else {
            F::zero()
        }
    }

    pub fn set_coeff(&mut self, p: usize, m: usize, c: F) {
        if p <= self.order_s && m <= self.order_t {
            let i = self.idx(p, m);
            self.coeffs[i] = c;
        }
    }

    /// `c s^p t^m`.
    pub fn monomial(c: F, p: usize, m: usize, order_s: usize, order_t: usize) -> Self {
        let mut z = Self::zero(order_s, order_t);
        z.set_coeff(p, m, c);
        z
    }

    /// Embed `a(s)` (a series in the first variable).
    pub fn from_s(a: &TruncatedSeries1<F>, order_t: usize) -> Self {
        let mut z = Self::zero(a.order(), order_t);
        for (p, c) in a.coeffs().iter().enumerate() {
            z.set_coeff(p, 0, c.clone());
        }
        z
    }

    /// Embed `b(t)` (a series in the second variable).
    pub fn from_t(b: &TruncatedSeries1<F>, order_s: usize) -> Self {
        let mut z = Self::zero(order_s, b.order());
        for (m, c) in b.coeffs().iter().enumerate() {
            z.set_coeff(0, m, c.clone());
        }
        z
    }

    /// The `t^m` column as a series in `s`.
    pub fn row_t(&self, m: usize) -> TruncatedSeries1<F> {
        TruncatedSeries1::from_coeffs((0..=self.order_s).map(|p| self.coeff(p, m)).collect(), self.order_s)
    }

    /// The `s^p` row as a series in `t`.
    pub fn column_s(&self, p: usize) -> TruncatedSeries1<F> {
        TruncatedSeries1::from_coeffs((0..=self.order_t).map(|m| self.coeff(p, m)).collect(), self.order_t)
    }

    fn same_orders(&self, other: &Self) -> Result<()> {
        if self.orders() == other.orders() {
            Ok(())
        } else {
            Err(Error::Mismatch(format!(
                "series orders {:?} and {:?}",
                self.orders(),
                other.orders()
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_orders(other)?;
        Ok(TruncatedSeries2 {
            order_s: self.order_s,
            order_t: self.order_t,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries2 {
            order_s: self.order_s,
            order_t: self.order_t,
            coeffs: self.coeffs.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, c: &F) -> Self {
        TruncatedSeries2 {
            order_s: self.order_s,
            order_t: self.order_t,
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_orders(other)?;
        let (ns, nt) = self.orders();
        let mut out = Self::zero(ns, nt);
        let nz_a: Vec<(usize, usize, &F)> = self.nonzero().collect();
        let nz_b: Vec<(usize, usize, &F)> = other.nonzero().collect();
        for &(p1, m1, a) in &nz_a {
            for &(p2, m2, b) in &nz_b {
                let (p, m) = (p1 + p2, m1 + m2);
                if p <= ns && m <= nt {
                    let i = out.idx(p, m);
                    out.coeffs[i] = out.coeffs[i].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        let w = self.order_t + 1;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (k / w, k % w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn require_zero_constant(&self, what: &str) -> Result<()> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "{what}: argument must have zero constant term"
            )))
        }
    }

    /// `log(1 + self)` as the finite sum `sum_k (-1)^(k+1) self^k / k`;
    /// `self` is nilpotent in the truncated ring.
    pub fn log1p(&self) -> Result<Self> {
        self.require_zero_constant("log1p")?;
        let (ns, nt) = self.orders();
        let mut out = Self::zero(ns, nt);
        let mut power = self.clone();
        let mut k = 1usize;
        while !power.is_zero() {
            let mut c = F::one() / field_from_usize::<F>(k);
            if k % 2 == 0 {
                c = -c;
            }
            out = out.add(&power.scalar_mul(&c))?;
            power = power.mul(self)?;
            k += 1;
        }
        Ok(out)
    }

    /// `exp(self)` as the finite sum `sum_k self^k / k!`.
    pub fn exp(&self) -> Result<Self> {
        self.require_zero_constant("exp")?;
        let (ns, nt) = self.orders();
        let mut out = Self::one(ns, nt);
        let mut term = Self::one(ns, nt);
        let mut k = 1usize;
        loop {
            term = term.mul(self)?.scalar_mul(&(F::one() / field_from_usize::<F>(k)));
            if term.is_zero() {
                break;
            }
            out = out.add(&term)?;
            k += 1;
        }
        Ok(out)
    }
}

impl TruncatedSeries2<BigRational> {
    /// Coefficient grid `[p][m]` as strings.
    pub fn coeff_grid(&self) -> Vec<Vec<String>> {
        (0..=self.order_s)
            .map(|p| (0..=self.order_t).map(|m| self.coeff(p, m).to_string()).collect())
            .collect()
    }
}

/// JSON form of a one-variable series.
#[derive(Debug, Clone, Serialize, serde::Deserialize, PartialEq)]
pub struct SeriesJson {
    pub order: usize,
    pub coeffs: Vec<String>,
}

impl From<&TruncatedSeries1<BigRational>> for SeriesJson {
    fn from(s: &TruncatedSeries1<BigRational>) -> Self {
        SeriesJson {
            order: s.order(),
            coeffs: s.coeff_strings(),
        }
    }
}

/// `(1 + sign * t^d)^k` as exact integer polynomial coefficients.
pub(crate) fn binomial_power(sign: i64, d: usize, k: u64) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); d * k as usize + 1];
    for a in 0..=k {
        let mut c = crate::numtheory::binomial(k, a);
        if sign < 0 && a % 2 == 1 {
            c = -c;
        }
        out[a as usize * d] = c;
    }
    out
}
