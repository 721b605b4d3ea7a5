//! Leading-term expansion of the multiple zeta function at
//! `s = (−l_1 + ε_1, …, −l_r + ε_r)`.
//!
//! Every composition `n` of `N = l_1 + ⋯ + l_r + r` into `r` parts either
//! belongs to exactly one index set `S^(d)`, `d ∈ {0,1}^{r−1}`, or is a gap
//! composition that only contributes to the `O(ε)` remainder. A member
//! contributes `coefficient · Π_j B_{n_j}(a_j; z_j) · monomial(d)`.

mod expand;
mod fixtures;
mod format;
mod hyperplanes;
mod index;
mod types;

use thiserror::Error;

use crate::apostol::ApostolError;

pub use expand::{
    eval_expansion, eval_expansion_exact, expand, specialize, ExactParams, Expansion,
    ExpansionTerm, NumericParams,
};
pub use fixtures::{fixture_names, verify_fixtures, FixtureOutcome, TermDiff};
pub use format::{from_json, term_line, to_json, to_text};
pub use hyperplanes::{on_singular_hyperplane, singular_hyperplanes, HalfIndex, Hyperplane};
pub use index::{classify, compositions, h_coefficient, index_set};
pub use types::{BranchVector, Composition, EpsRatioMonomial, PointSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpansionError {
    #[error("depth r = {0} is below 2; use the single-variable closed form")]
    DepthTooSmall(usize),
    #[error("composition {composition} is not in the index set of branch {branch}")]
    CompositionNotInSet { composition: String, branch: String },
    #[error("suffix sum ε({0},r) vanishes")]
    SuffixSumZero(usize),
    #[error("z_{0} lies on the cut (1, ∞)")]
    ZOnCut(usize),
    #[error("expected {expected} values for {what}, got {got}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error(transparent)]
    Apostol(#[from] ApostolError),
    #[error("malformed expansion: {0}")]
    Malformed(String),
}
