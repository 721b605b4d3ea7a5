//! Leading-term asymptotics of Hurwitz–Lerch multiple zeta functions at
//! non-positive integer points.
//!
//! * [`exact_arith`]: rationals, polynomials, truncated series, rational
//!   functions and their limits at zero.
//! * [`apostol`]: Apostol–Bernoulli polynomials, Stirling numbers, growth
//!   envelopes.
//! * [`expansion`]: index sets, coefficients and the symbolic expansion.
//! * [`oracle`]: independent checks (exact Pochhammer limits, direct
//!   series, quadrature, convergence probes).
//! * [`cli`]: the `hlzeta` command-line front end.

pub mod apostol;
pub mod cli;
pub mod exact_arith;
pub mod expansion;
pub mod numeric;
pub mod oracle;
