//! Exact arithmetic: rationals, sparse multivariate polynomials with a fixed
//! graded-lex term order, dense univariate polynomials, factored univariate
//! polynomials and rational functions in a distinguished variable.

mod factored;
mod monomial;
mod poly;
mod ratfun;
mod unipoly;
mod var;

pub use factored::{FactorJson, FactoredJson, FactoredPolynomial};
pub use monomial::Monomial;
pub(crate) use poly::write_term;
pub use poly::{frac, rat, MultiPoly};
pub use ratfun::{divide_by_linear, RationalFunction};
pub use unipoly::UniPoly;
pub use var::VarId;

use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision rational; always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("duplicate interpolation abscissa {0}")]
    DuplicateAbscissa(String),
    #[error("interpolation needs at least one point")]
    EmptyInterpolation,
    #[error("polynomial has a factor without rational roots: {0}")]
    NonLinearFactor(String),
}

/// Falling factorial `[z]_a = z (z-1) ... (z-a+1)` as a polynomial in `z`.
pub fn falling_factorial(z: VarId, a: u32) -> MultiPoly {
    (0..a).fold(MultiPoly::one(), |acc, k| {
        &acc * &(&MultiPoly::var(z) - &MultiPoly::int(k as i64))
    })
}

/// Stirling numbers of the second kind `S(k, j)` for `0 <= j, k <= n`, so
/// that `z^k = Σ_j S(k, j) [z]_j`.
pub fn stirling2(n: usize) -> Vec<Vec<Rational>> {
    let mut table = vec![vec![Rational::zero(); n + 1]; n + 1];
    table[0][0] = Rational::one();
    for k in 1..=n {
        for j in 1..=k {
            table[k][j] = &table[k - 1][j - 1] + &table[k - 1][j] * rat(j as i64);
        }
    }
    table
}

/// Rewrites coefficients of `z^k` into coefficients of `[z]_j`.
///
/// `power_coeffs[k]` is the coefficient of `z^k`; the result's entry `j` is
/// the coefficient of `[z]_j`. Works for any coefficient type that supports
/// scaling and addition.
pub fn to_falling_basis<T: Clone>(
    power_coeffs: &[T],
    zero: T,
    scale_add: impl Fn(&T, &Rational, &T) -> T,
) -> Vec<T> {
    let n = power_coeffs.len();
    if n == 0 {
        return Vec::new();
    }
    let st = stirling2(n - 1);
    let mut out = vec![zero; n];
    for (k, ck) in power_coeffs.iter().enumerate() {
        for j in 0..=k {
            if !st[k][j].is_zero() {
                out[j] = scale_add(&out[j], &st[k][j], ck);
            }
        }
    }
    out
}

/// Binomial coefficient as an `i64`; fine for the small arguments used here.
pub fn binomial(n: u64, k: u64) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}
