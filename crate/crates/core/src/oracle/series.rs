use std::f64::consts::PI;

use crate::numeric::{to_f64, Complex, Ctx, DEFAULT_DIGITS, MIN_DIGITS};

use super::{check_len, OracleError};

const GUARD_DIGITS: u32 = 20;
const LEVIN_MAX_ORDER: usize = 48;

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesEvalConfig {
    /// Significant decimal digits of the working arithmetic.
    pub precision: u32,
    /// Largest admissible truncation degree `m₁ + ⋯ + m_r`.
    pub max_terms: usize,
    /// Target absolute error.
    pub tolerance: f64,
}

impl Default for SeriesEvalConfig {
    fn default() -> Self {
        Self {
            precision: DEFAULT_DIGITS,
            max_terms: 20_000,
            tolerance: 1e-45,
        }
    }
}

impl SeriesEvalConfig {
    pub fn with_precision(precision: u32) -> Self {
        let precision = precision.max(MIN_DIGITS);
        Self {
            precision,
            tolerance: 10f64.powi(5 - precision as i32),
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesMode {
    /// All `|z_j| < 1`; the tail is bounded geometrically.
    Geometric,
    /// All `Re s_j > 1` and `|z_j| ≤ 1`; shell partial sums are accelerated
    /// by a Levin u-transform.
    Polynomial,
}

#[derive(Clone, Debug)]
pub struct SeriesValue {
    pub value: Complex,
    /// Number of shells `m₁ + ⋯ + m_r = t` summed.
    pub terms: usize,
    /// Bound (geometric mode) or estimate (polynomial mode) of the
    /// truncation error.
    pub tail_bound: f64,
    pub certified: bool,
    pub mode: SeriesMode,
}

/// The defining nested series
/// `Σ Π_j z_j^{m_j} (m₁+⋯+m_j + a₁+⋯+a_j)^{−s_j}` over `m_j ≥ 0`, summed
/// shell by shell in the total degree.
pub fn direct_series(
    s: &[Complex],
    a: &[Complex],
    z: &[Complex],
    cfg: &SeriesEvalConfig,
) -> Result<SeriesValue, OracleError> {
    let r = s.len();
    check_len("a", r, a.len())?;
    check_len("z", r, z.len())?;
    if r == 0 {
        return Err(OracleError::LengthMismatch {
            what: "s",
            expected: 1,
            got: 0,
        });
    }
    let ctx = Ctx::new(cfg.precision + GUARD_DIGITS);
    let offsets = prefix_sums(a, &ctx);
    let rho = z.iter().map(Complex::abs_f64).fold(0.0, f64::max);
    let re_s: Vec<f64> = s.iter().map(|x| to_f64(&x.re)).collect();
    let polynomial_ok = rho <= 1.0 + 1e-15 && re_s.iter().all(|&x| x > 1.0);

    if rho < 1.0 {
        let envelope = Envelope::new(s, &offsets, rho)?;
        match envelope.truncation(cfg.tolerance, cfg.max_terms) {
            Ok((degree, tail)) => {
                let shells = Shells::new(s, &offsets, z, &ctx)?.take(degree + 1);
                let value = shells.fold(Complex::zero(&ctx), |acc, v| acc.add(&v, &ctx));
                return Ok(SeriesValue {
                    value,
                    terms: degree + 1,
                    tail_bound: tail,
                    certified: true,
                    mode: SeriesMode::Geometric,
                });
            }
            Err(e) if !polynomial_ok => return Err(e),
            Err(_) => {}
        }
    }
    if !polynomial_ok {
        return Err(OracleError::NonConvergentRegion(format!(
            "max |z_j| = {rho} and min Re s_j = {}",
            re_s.iter().cloned().fold(f64::INFINITY, f64::min)
        )));
    }
    levin(Shells::new(s, &offsets, z, &ctx)?, cfg, &ctx)
}

fn prefix_sums(a: &[Complex], ctx: &Ctx) -> Vec<Complex> {
    a.iter()
        .scan(Complex::zero(ctx), |acc, x| {
            *acc = acc.add(x, ctx);
            Some(acc.clone())
        })
        .collect()
}

/// Iterator over shell sums `Σ_{m₁+⋯+m_r = t}` for `t = 0, 1, …`.
struct Shells<'a> {
    s: &'a [Complex],
    offsets: &'a [Complex],
    z: &'a [Complex],
    ctx: &'a Ctx,
    /// `P_j` at the previous `t`, per level `j ≥ 2`.
    partial: Vec<Complex>,
    z1_power: Complex,
    t: i64,
}

impl<'a> Shells<'a> {
    fn new(
        s: &'a [Complex],
        offsets: &'a [Complex],
        z: &'a [Complex],
        ctx: &'a Ctx,
    ) -> Result<Self, OracleError> {
        // a term base t + A_j vanishes only at a non-positive integer A_j
        for (j, off) in offsets.iter().enumerate() {
            if let Some(n) = off.as_small_int() {
                if n <= 0 {
                    return Err(OracleError::SingularTerm(j + 1));
                }
            }
        }
        Ok(Self {
            s,
            offsets,
            z,
            ctx,
            partial: vec![Complex::zero(ctx); s.len()],
            z1_power: Complex::one(ctx),
            t: 0,
        })
    }

    fn weight(&self, j: usize) -> Complex {
        let base = self.offsets[j].add(&Complex::from_int(self.ctx, self.t), self.ctx);
        base.pow(&self.s[j].neg(), self.ctx)
    }
}

impl Iterator for Shells<'_> {
    type Item = Complex;

    fn next(&mut self) -> Option<Complex> {
        let ctx = self.ctx;
        let mut v = self.z1_power.mul(&self.weight(0), ctx);
        for j in 1..self.s.len() {
            let p = v.add(&self.z[j].mul(&self.partial[j], ctx), ctx);
            v = self.weight(j).mul(&p, ctx);
            self.partial[j] = p;
        }
        self.z1_power = self.z1_power.mul(&self.z[0], ctx);
        self.t += 1;
        Some(v)
    }
}

/// Shell-wise majorant `C(t+r−1, r−1) ρ^t Π_j f_j(t)` of the absolute
/// series, each `f_j` bounding `|(u + A_j)^{−s_j}|` for `0 ≤ u ≤ t`.
struct Envelope {
    r: usize,
    ln_rho: f64,
    factors: Vec<(f64, f64, f64)>,
}

impl Envelope {
    fn new(s: &[Complex], offsets: &[Complex], rho: f64) -> Result<Self, OracleError> {
        let factors = s
            .iter()
            .zip(offsets)
            .enumerate()
            .map(|(j, (sj, off))| {
                let (re_s, im_s) = sj.to_f64();
                let (x, y) = off.to_f64();
                let dist = if x >= 0.0 {
                    x.hypot(y)
                } else {
                    (x + (-x).round()).hypot(y)
                };
                if dist == 0.0 {
                    return Err(OracleError::SingularTerm(j + 1));
                }
                let abs_off = x.hypot(y);
                Ok((
                    re_s,
                    PI * im_s.abs(),
                    if re_s <= 0.0 { abs_off } else { dist },
                ))
            })
            .collect::<Result<_, _>>()?;
        Ok(Self {
            r: s.len(),
            ln_rho: rho.ln(),
            factors,
        })
    }

    fn ln_term(&self, t: usize) -> f64 {
        let tf = t as f64;
        let ln_binom = (1..self.r)
            .map(|i| ((tf + i as f64) / i as f64).ln())
            .sum::<f64>();
        let ln_f: f64 = self
            .factors
            .iter()
            .map(|&(re_s, arg, base)| {
                if re_s <= 0.0 {
                    arg - re_s * (tf + base).ln()
                } else {
                    arg - re_s * base.ln()
                }
            })
            .sum();
        ln_binom + tf * self.ln_rho + ln_f
    }

    /// Smallest degree whose certified tail is below `tol`, doubled.
    fn truncation(&self, tol: f64, max_terms: usize) -> Result<(usize, f64), OracleError> {
        if self.ln_rho == f64::NEG_INFINITY {
            return Ok((0, 0.0));
        }
        let ln_tol = tol.ln();
        let mut terms = Vec::new();
        let mut t = 0;
        // extend until the ratio is below 1 and the geometric remainder is negligible
        let closing = loop {
            let here = self.ln_term(t);
            let next = self.ln_term(t + 1);
            terms.push(here);
            let ln_q = next - here;
            if ln_q < 0.0 {
                let ln_rest = next - (-ln_q.exp()).ln_1p();
                if ln_rest < ln_tol - 10.0 {
                    break ln_rest.exp();
                }
            }
            t += 1;
            if t > 4 * max_terms + 1000 {
                return Err(OracleError::TermLimit {
                    needed: t,
                    limit: max_terms,
                });
            }
        };
        let mut tail = closing;
        let mut degree = terms.len() - 1;
        while degree > 0 {
            let with = tail + terms[degree].exp();
            if with >= tol {
                break;
            }
            tail = with;
            degree -= 1;
        }
        let guarded = 2 * degree.max(1);
        if guarded > max_terms {
            return Err(OracleError::TermLimit {
                needed: guarded,
                limit: max_terms,
            });
        }
        let tail = ((guarded + 1)..terms.len())
            .map(|i| terms[i].exp())
            .sum::<f64>()
            + closing;
        Ok((guarded, tail))
    }
}

/// Levin u-transform `L_k^{(0)}` of the shell partial sums with remainder
/// estimates `ω_n = (n + 1) a_n`; stops when consecutive orders agree.
fn levin(
    shells: Shells<'_>,
    cfg: &SeriesEvalConfig,
    ctx: &Ctx,
) -> Result<SeriesValue, OracleError> {
    let terms: Vec<Complex> = shells.take(LEVIN_MAX_ORDER + 1).collect();
    let partial: Vec<Complex> = terms
        .iter()
        .scan(Complex::zero(ctx), |acc, x| {
            *acc = acc.add(x, ctx);
            Some(acc.clone())
        })
        .collect();
    let omega_inv: Vec<Complex> = terms
        .iter()
        .enumerate()
        .map(|(n, a)| {
            if a.is_zero() {
                return Err(OracleError::NonConvergentRegion(format!(
                    "vanishing shell {n} defeats the remainder estimate"
                )));
            }
            Ok(a.scale(&ctx.int(n as i64 + 1), ctx).recip(ctx))
        })
        .collect::<Result<_, _>>()?;

    let transform = |k: usize| {
        let mut num = Complex::zero(ctx);
        let mut den = Complex::zero(ctx);
        let mut binom = ctx.int(1);
        let top = ctx.int(k as i64 + 1);
        for j in 0..=k {
            if j > 0 {
                binom = ctx.div(
                    &ctx.mul(&binom, &ctx.int((k + 1 - j) as i64)),
                    &ctx.int(j as i64),
                );
            }
            let ratio = ctx.div(&ctx.int(j as i64 + 1), &top);
            let mut w = binom.clone();
            for _ in 1..k {
                w = ctx.mul(&w, &ratio);
            }
            if j % 2 == 1 {
                w = w.neg();
            }
            let c = omega_inv[j].scale(&w, ctx);
            num = num.add(&c.mul(&partial[j], ctx), ctx);
            den = den.add(&c, ctx);
        }
        num.div(&den, ctx)
    };

    let mut prev = transform(2);
    let mut best = (f64::INFINITY, prev.clone(), 2);
    for k in 3..=LEVIN_MAX_ORDER {
        let cur = transform(k);
        let diff = cur.sub(&prev, ctx).abs_f64();
        if diff < best.0 {
            best = (diff, cur.clone(), k);
        }
        if diff < cfg.tolerance {
            break;
        }
        prev = cur;
    }
    log::debug!("levin order {} with step {:e}", best.2, best.0);
    Ok(SeriesValue {
        value: best.1,
        terms: best.2 + 1,
        tail_bound: best.0,
        certified: false,
        mode: SeriesMode::Polynomial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    fn c(ctx: &Ctx, re: (i64, i64), im: (i64, i64)) -> Complex {
        Complex::new(
            ctx.from_rational(&rat(re.0, re.1)),
            ctx.from_rational(&rat(im.0, im.1)),
        )
    }

    fn reals(ctx: &Ctx, xs: &[(i64, i64)]) -> Vec<Complex> {
        xs.iter().map(|&x| c(ctx, x, (0, 1))).collect()
    }

    #[test]
    fn squares_against_geometric() {
        let ctx = Ctx::new(50);
        let v = direct_series(
            &reals(&ctx, &[(-2, 1)]),
            &reals(&ctx, &[(1, 1)]),
            &reals(&ctx, &[(1, 2)]),
            &SeriesEvalConfig::default(),
        )
        .unwrap();
        assert!(v.certified);
        assert!(v.value.sub(&Complex::from_int(&ctx, 12), &ctx).abs_f64() < 1e-44);
    }

    #[test]
    fn product_of_geometric_series() {
        let ctx = Ctx::new(50);
        let v = direct_series(
            &reals(&ctx, &[(0, 1), (0, 1)]),
            &reals(&ctx, &[(1, 1), (1, 1)]),
            &reals(&ctx, &[(1, 2), (1, 3)]),
            &SeriesEvalConfig::default(),
        )
        .unwrap();
        assert!(v.value.sub(&Complex::from_int(&ctx, 3), &ctx).abs_f64() < 1e-44);
    }

    #[test]
    fn levin_on_double_zeta() {
        // ζ(2,2) over m₂ ≥ 1 style offsets: Σ 1/((m₁+1)²(m₁+m₂+2)²) = π⁴/120
        let ctx = Ctx::new(50);
        let v = direct_series(
            &reals(&ctx, &[(2, 1), (2, 1)]),
            &reals(&ctx, &[(1, 1), (1, 1)]),
            &reals(&ctx, &[(1, 1), (1, 1)]),
            &SeriesEvalConfig::default(),
        )
        .unwrap();
        assert_eq!(v.mode, SeriesMode::Polynomial);
        let pi = ctx.pi();
        let pi4 = ctx.mul(&ctx.mul(&pi, &pi), &ctx.mul(&pi, &pi));
        let want = ctx.div(&pi4, &ctx.int(120));
        assert!(
            v.value.sub(&ctx.real(want), &ctx).abs_f64() < 1e-14,
            "{}",
            v.value.format(30)
        );
    }

    #[test]
    fn complex_parameters_agree_across_modes() {
        let ctx = Ctx::new(40);
        let s = vec![c(&ctx, (2, 1), (1, 2)), c(&ctx, (3, 1), (0, 1))];
        let a = vec![c(&ctx, (1, 2), (0, 1)), c(&ctx, (3, 4), (0, 1))];
        let z = vec![c(&ctx, (0, 1), (1, 2)), c(&ctx, (-1, 3), (0, 1))];
        let cfg = SeriesEvalConfig::with_precision(40);
        let geo = direct_series(&s, &a, &z, &cfg).unwrap();
        assert_eq!(geo.mode, SeriesMode::Geometric);
        let offsets = prefix_sums(&a, &ctx);
        let shells = Shells::new(&s, &offsets, &z, &ctx).unwrap();
        let lev = levin(shells, &cfg, &ctx).unwrap();
        assert!(geo.value.sub(&lev.value, &ctx).abs_f64() < 1e-20);
    }

    #[test]
    fn domain_errors() {
        let ctx = Ctx::new(30);
        let cfg = SeriesEvalConfig::with_precision(30);
        let e = direct_series(
            &reals(&ctx, &[(0, 1), (0, 1)]),
            &reals(&ctx, &[(1, 1), (1, 1)]),
            &reals(&ctx, &[(1, 1), (1, 2)]),
            &cfg,
        );
        assert!(matches!(e, Err(OracleError::NonConvergentRegion(_))));
        let e = direct_series(
            &reals(&ctx, &[(2, 1)]),
            &reals(&ctx, &[(0, 1)]),
            &reals(&ctx, &[(1, 2)]),
            &cfg,
        );
        assert_eq!(e.unwrap_err(), OracleError::SingularTerm(1));
    }
}
