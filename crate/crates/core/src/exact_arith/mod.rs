//! Exact arithmetic substrate.
//!
//! Everything here is generic over [`Field`], an exact field with a
//! canonical embedding of the rationals. The same polynomial, series and
//! rational-function code therefore serves plain rationals, Gaussian
//! rationals, and rational functions of `z` or of the ray parameter `δ`.

mod complex;
mod parse;
mod poly;
mod ratfunc;
mod series;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub use num_rational::BigRational;

pub use complex::ExactComplex;
pub use parse::{parse_exact_complex, parse_rational, parse_rational_list};
pub use poly::UniPolynomial;
pub use ratfunc::{ray_limit_at_zero, RationalFunction, RayRationalFunction};
pub use series::{series_divide, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("series divisor has a zero constant term")]
    ZeroConstantTerm,
    #[error("truncation order mismatch ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },
    #[error(
        "limit at zero is infinite (numerator order {num_order} < denominator order {den_order})"
    )]
    PoleAtZero { num_order: usize, den_order: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid number literal `{0}`")]
    Parse(String),
}

/// An exact field that contains a copy of the rationals.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn from_rational(q: &BigRational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        rhs.inverse()
            .map(|inv| self.clone() * inv)
            .ok_or(ArithError::DivisionByZero)
    }
}

impl Field for BigRational {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
}

/// Type-level tag naming the indeterminate of a polynomial.
pub trait Var: Clone + fmt::Debug + PartialEq + Default {
    const NAME: &'static str;
}

macro_rules! var_tag {
    ($(#[$m:meta])* $ty:ident, $name:literal) => {
        $(#[$m])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
        pub struct $ty;

        impl Var for $ty {
            const NAME: &'static str = $name;
        }
    };
}

var_tag!(
    /// The ray parameter δ (ε_j = δ·c_j).
    Delta,
    "δ"
);
var_tag!(
    /// The Lerch parameter z.
    ZVar,
    "z"
);
var_tag!(
    /// The Hurwitz shift a.
    AVar,
    "a"
);
var_tag!(
    /// Series variable of generating functions.
    XVar,
    "x"
);

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Re-normalises numerator/denominator; `BigRational` already keeps this
/// invariant, so for any value produced by this crate the result is equal
/// to the input.
pub fn canonicalize(q: &BigRational) -> BigRational {
    BigRational::new(q.numer().clone(), q.denom().clone())
}

/// `p/q` text form, integers without the denominator.
pub fn rational_to_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Converts a finite `f64` to the exact dyadic rational it represents.
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}
