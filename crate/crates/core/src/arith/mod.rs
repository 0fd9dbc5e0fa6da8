//! Exact scalars, affine-linear forms and multivariate polynomials.

mod linform;
mod poly;
mod rational;

pub use linform::LinForm;
pub use poly::{Poly, PolyJson, TermJson};
pub use rational::{rat, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("variable x{index} out of range for a point of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// `n!` as an exact rational.
pub fn factorial(n: u32) -> Rational {
    (1..=n as u64).map(Rational::from).product()
}

/// Multinomial coefficient `(sum parts)! / prod parts!`.
pub fn multinomial(parts: &[u32]) -> Rational {
    let total: u32 = parts.iter().sum();
    let mut out = factorial(total);
    for &p in parts {
        out = &out / &factorial(p);
    }
    out
}

/// `binom(n; a, b) = n!/(a! b!)` when `a + b = n` and both are nonnegative,
/// zero otherwise.
pub fn binom2(n: i64, a: i64, b: i64) -> Rational {
    if a < 0 || b < 0 || a + b != n {
        return Rational::zero();
    }
    multinomial(&[a as u32, b as u32])
}
