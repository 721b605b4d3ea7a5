//! Independent checks of the expansion.
//!
//! * [`y1_leading_limit`]: exact `δ → 0` limit of the Gamma-ratio closed
//!   form along a ray `ε = δ·c`, built from Pochhammer rational functions.
//! * [`direct_series`]: the defining nested series, where it converges.
//! * [`integral_representation_eval`]: quadrature of the integral
//!   representation for depth at most two.
//! * [`limit_probe`]: empirical convergence order of the remainder.

mod gamma;
mod pochhammer;
mod probe;
mod quadrature;
mod series;
mod y1;

use thiserror::Error;

use crate::exact_arith::{ArithError, BigRational};
use crate::expansion::ExpansionError;

pub use gamma::gamma_numeric;
pub use pochhammer::{LinearForm, PochhammerRational};
pub use probe::{limit_probe, ProbePoint, ProbeReport, ProbeRow, ProbeSettings};
pub use quadrature::{integral_representation_eval, QuadratureConfig, QuadratureValue};
pub use series::{direct_series, SeriesEvalConfig, SeriesMode, SeriesValue};
pub use y1::{y1_leading_limit, y1_numeric_at};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("the defining series does not converge here: {0}")]
    NonConvergentRegion(String),
    #[error("Gamma has a pole at {0}")]
    PoleOfGamma(String),
    #[error("series needs {needed} terms, above the limit {limit}")]
    TermLimit { needed: usize, limit: usize },
    #[error("quadrature did not converge: {0}")]
    QuadratureNonConvergence(String),
    #[error("invalid direction: {0}")]
    InvalidDirection(String),
    #[error("expected {expected} values for {what}, got {got}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("series term base m + a vanishes at coordinate {0}")]
    SingularTerm(usize),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
}

pub(crate) fn check_len(
    what: &'static str,
    expected: usize,
    got: usize,
) -> Result<(), OracleError> {
    if expected == got {
        Ok(())
    } else {
        Err(OracleError::LengthMismatch {
            what,
            expected,
            got,
        })
    }
}

/// Ray direction `c` with `ε_j = δ·c_j`; every `c_j` is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionVector(Vec<BigRational>);

impl DirectionVector {
    pub fn new(c: Vec<BigRational>) -> Result<Self, OracleError> {
        use num_traits::Signed;
        if let Some(bad) = c.iter().find(|x| !x.is_positive()) {
            return Err(OracleError::InvalidDirection(format!(
                "component {bad} is not positive"
            )));
        }
        if c.is_empty() {
            return Err(OracleError::InvalidDirection("empty direction".into()));
        }
        Ok(Self(c))
    }

    pub fn components(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `c_i + ⋯ + c_r` for 1-based `i`.
    pub fn suffix(&self, i: usize) -> BigRational {
        self.0[i - 1..].iter().sum()
    }
}
