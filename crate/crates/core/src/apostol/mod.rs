//! Apostol–Bernoulli polynomials `B_n(a; z)`.
//!
//! Defined by `x e^{ax} / (z e^x − 1) = Σ B_n(a; z) x^n / n!`. For `z ≠ 1`
//! the coefficients are rational functions of `z` with poles only at
//! `z = 1`; at `z = 1` the classical Bernoulli polynomials take over. The
//! two cases are separate [`Regime`]s and never reached from one another by
//! a numeric limit.

mod bounds;
mod genfun;
mod poly;
mod stirling;
mod zcoeff;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exact_arith::ExactComplex;
use crate::numeric::{to_f64, Complex, Ctx};

pub use bounds::{lambda, tail_bound, TailBound};
pub use genfun::{check_generating_function, check_generating_function_symbolic, GF_ORDER_CAP};
pub use poly::{apostol_poly, bernoulli_numbers, beta_coeff, ApostolPolynomial};
pub use stirling::stirling2;
pub use zcoeff::{ZPoly, ZRationalCoeff};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApostolError {
    #[error("z = 1 needs an explicit regime (g or 1)")]
    ZEqualsOneAmbiguous,
    #[error("regime mismatch: {0}")]
    RegimeMismatch(String),
    #[error("the generic-z formula has a pole at z = 1")]
    PoleAtZOne,
    #[error("series order {order} exceeds the cap {cap}")]
    OrderAboveCap { order: usize, cap: usize },
}

/// Which closed form represents `B_n(a; z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    Generic,
    ZEqualsOne,
}

impl FromStr for Regime {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "g" | "generic" => Ok(Self::Generic),
            "1" | "one" => Ok(Self::ZEqualsOne),
            other => Err(format!("unknown regime `{other}` (expected g or 1)")),
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Generic => "g",
            Self::ZEqualsOne => "1",
        })
    }
}

/// Picks the regime for an exact `z`. Without an explicit request `z = 1`
/// is ambiguous.
pub fn resolve_regime_exact(
    z: &ExactComplex,
    requested: Option<Regime>,
) -> Result<Regime, ApostolError> {
    match (requested, z.is_one()) {
        (None, true) => Err(ApostolError::ZEqualsOneAmbiguous),
        (None, false) | (Some(Regime::Generic), false) => Ok(Regime::Generic),
        (Some(Regime::ZEqualsOne), true) => Ok(Regime::ZEqualsOne),
        (Some(Regime::Generic), true) => Err(ApostolError::RegimeMismatch(
            "generic regime requested at z = 1".into(),
        )),
        (Some(Regime::ZEqualsOne), false) => Err(ApostolError::RegimeMismatch(format!(
            "z = 1 regime requested but z = {z}"
        ))),
    }
}

/// Same as [`resolve_regime_exact`], with `z = 1` meaning `|z − 1|` below
/// the working resolution.
pub fn resolve_regime_numeric(
    z: &Complex,
    requested: Option<Regime>,
    ctx: &Ctx,
) -> Result<Regime, ApostolError> {
    let dist = to_f64(&z.sub(&Complex::one(ctx), ctx).abs(ctx));
    let near_one = dist <= ctx.epsilon_f64();
    match (requested, near_one) {
        (None, true) => Err(ApostolError::ZEqualsOneAmbiguous),
        (None, false) | (Some(Regime::Generic), false) => Ok(Regime::Generic),
        (Some(Regime::ZEqualsOne), true) => Ok(Regime::ZEqualsOne),
        (Some(Regime::Generic), true) => Err(ApostolError::RegimeMismatch(
            "generic regime requested at z = 1".into(),
        )),
        (Some(Regime::ZEqualsOne), false) => Err(ApostolError::RegimeMismatch(format!(
            "z = 1 regime requested but |z - 1| = {dist:e}"
        ))),
    }
}

/// Numeric `B_n(a; z)` at the context precision.
pub fn apostol_eval(
    n: usize,
    a: &Complex,
    z: &Complex,
    regime: Option<Regime>,
    ctx: &Ctx,
) -> Result<Complex, ApostolError> {
    let regime = resolve_regime_numeric(z, regime, ctx)?;
    Ok(apostol_poly(n, regime).eval_numeric(a, z, ctx))
}

/// Exact `B_n(a; z)` over `ℚ(i)`.
pub fn apostol_eval_exact(
    n: usize,
    a: &ExactComplex,
    z: &ExactComplex,
    regime: Option<Regime>,
) -> Result<ExactComplex, ApostolError> {
    let regime = resolve_regime_exact(z, regime)?;
    apostol_poly(n, regime).eval_exact(a, z)
}
