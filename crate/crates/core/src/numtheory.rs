//! Elementary number theory on small positive integers: divisors, Euler's
//! totient, the Möbius function, Ramanujan sums and exact binomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn require_positive(n: u64, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument(format!("{what}: n must be >= 1")))
    } else {
        Ok(())
    }
}

pub(crate) fn divisors_of(n: u64) -> Vec<u64> {
    debug_assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Ascending list of the positive divisors of `n`.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    require_positive(n, "divisors")?;
    Ok(divisors_of(n))
}

/// Prime factorisation by trial division, as `(p, multiplicity)` pairs.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn phi_u64(n: u64) -> u64 {
    debug_assert!(n >= 1);
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub(crate) fn mu_i64(n: u64) -> i64 {
    debug_assert!(n >= 1);
    let f = factorize(n);
    if f.iter().any(|&(_, k)| k > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> Result<BigInt> {
    require_positive(n, "euler_phi")?;
    Ok(BigInt::from(phi_u64(n)))
}

pub fn moebius(n: u64) -> Result<i32> {
    require_positive(n, "moebius")?;
    Ok(mu_i64(n) as i32)
}

/// Ramanujan sum via the divisor formula `sum_{d | (n,i)} mu(n/d) d`.
fn ramanujan_divisor_form(n: u64, i: u64) -> i64 {
    let g = n.gcd(&i);
    divisors_of(g)
        .into_iter()
        .map(|d| mu_i64(n / d) * d as i64)
        .sum()
}

/// Ramanujan sum via `phi(n) mu(n/g) / phi(n/g)` with `g = (n, i)`.
fn ramanujan_quotient_form(n: u64, i: u64) -> i64 {
    let g = n.gcd(&i);
    let q = n / g;
    let num = phi_u64(n) as i64 * mu_i64(q);
    let den = phi_u64(q) as i64;
    assert_eq!(num % den, 0, "phi(n)/phi(n/g) must be integral");
    num / den
}

pub(crate) fn ramanujan_i64(n: u64, i: i64) -> i64 {
    debug_assert!(n >= 1);
    let r = i.rem_euclid(n as i64) as u64;
    let a = ramanujan_divisor_form(n, r);
    let b = ramanujan_quotient_form(n, r);
    assert_eq!(a, b, "Ramanujan sum closed forms disagree at c_{n}({i})");
    a
}

/// The Ramanujan sum `c_n(i)`: the sum of the `i`-th powers of the primitive
/// `n`-th roots of unity. `i` is reduced modulo `n` first.
///
/// Both classical closed forms are evaluated and must agree; a disagreement
/// panics, since it can only come from a bug in this module.
pub fn ramanujan_sum(n: u64, i: i64) -> Result<BigInt> {
    require_positive(n, "ramanujan_sum")?;
    Ok(BigInt::from(ramanujan_i64(n, i)))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `(sum parts)! / prod(part!)`.
pub fn multinomial(parts: &[u64]) -> Result<BigInt> {
    if parts.is_empty() {
        return Err(Error::InvalidArgument(
            "multinomial: parts must be non-empty".into(),
        ));
    }
    let mut total = 0;
    let mut acc = BigInt::one();
    for &p in parts {
        total += p;
        acc *= binomial(total, p);
    }
    Ok(acc)
}

pub(crate) fn lcm_all(values: &[u64]) -> u64 {
    values.iter().fold(1, |acc, &v| acc.lcm(&v))
}
