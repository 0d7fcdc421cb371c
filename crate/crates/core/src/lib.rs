//! Isotypic components of regular representations of finite abelian groups,
//! and symbolic permanents and determinants of their Cayley tables.
//!
//! The numeric core is generic over the coefficient ring (see [`scalar`]);
//! the aliases below fix the exact instantiations the checks run on.

pub mod cayley;
pub mod cyclotomic;
mod decimal;
pub mod error;
pub mod groups;
pub mod molien;
pub mod numtheory;
pub mod permanent;
pub mod polynom;
pub mod report;
pub mod scalar;
pub mod series;

pub use cyclotomic::{cyclotomic_polynomial, CyclotomicInt};
pub use error::{Error, Result};
pub use groups::{parse_group, Character, FiniteAbelianGroup, GroupElement, OrderProfile};
pub use polynom::{Monomial, Polynomial};
pub use report::Report;
pub use scalar::{Coefficient, Field};
pub use series::{TruncatedSeries1, TruncatedSeries2};

pub use num_bigint::BigInt;

/// Exact rationals with big-integer numerator and denominator.
pub type Rational = num_rational::BigRational;

/// One-variable series with exact rational coefficients.
pub type Series1 = TruncatedSeries1<Rational>;
/// Two-variable series with exact rational coefficients.
pub type Series2 = TruncatedSeries2<Rational>;
/// Floating-point series, for quick numerical exploration.
pub type FloatSeries1 = TruncatedSeries1<f64>;

pub type IntPolynomial = Polynomial<BigInt>;
pub type CycPolynomial = Polynomial<CyclotomicInt>;
