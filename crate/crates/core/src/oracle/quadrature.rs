use astro_float::BigFloat;
use rayon::prelude::*;

use crate::apostol::lambda;
use crate::exact_arith::{rat, rational_from_f64, BigRational};
use crate::numeric::{rational_abs_f64, to_f64, Complex, Ctx};

use super::gamma::gamma_numeric;
use super::{check_len, OracleError};

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureConfig {
    pub precision: u32,
    /// Required agreement of two successive refinement levels.
    pub tolerance: f64,
    /// Split point of `[0, ∞)`; defaults to 1/2 and is moved below
    /// `min_j λ(z_j)` when necessary.
    pub split: Option<BigRational>,
    pub min_level: u32,
    pub max_level: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            precision: 30,
            tolerance: 1e-12,
            split: None,
            min_level: 3,
            max_level: 8,
        }
    }
}

#[derive(Clone, Debug)]
pub struct QuadratureValue {
    pub value: Complex,
    /// Final step is `2^{−level}`.
    pub level: u32,
    /// Difference between the last two levels.
    pub estimate: f64,
    pub split: BigRational,
}

/// Tanh-sinh node on `[0, 1]`: `y`, `1 − y` and the weight `h·dy/dt`.
#[derive(Clone)]
struct Node {
    y: BigFloat,
    y_comp: BigFloat,
    weight: BigFloat,
}

fn tanh_sinh_nodes(level: u32, ctx: &Ctx) -> Vec<Node> {
    let digits = f64::from(ctx.digits()) + 5.0;
    // smallest t_max with π cosh t · e^{−π sinh t} below 10^{−digits}
    let mut t_max = 1.0f64;
    while std::f64::consts::PI * t_max.cosh() * (-std::f64::consts::PI * t_max.sinh()).exp()
        > 10f64.powf(-digits)
    {
        t_max += 0.125;
    }
    let steps = (t_max * f64::from(1u32 << level)).ceil() as i64;
    let h = ctx.div(&ctx.int(1), &ctx.int(1i64 << level));
    let half_pi = ctx.div(&ctx.pi(), &ctx.int(2));
    (-steps..=steps)
        .map(|j| {
            let t = ctx.mul(&ctx.int(j), &h);
            let et = ctx.exp(&t);
            let e_neg = ctx.div(&ctx.int(1), &et);
            let sinh = ctx.div(&ctx.sub(&et, &e_neg), &ctx.int(2));
            let cosh = ctx.div(&ctx.add(&et, &e_neg), &ctx.int(2));
            let u = ctx.mul(&half_pi, &sinh);
            let two_u = ctx.mul(&u, &ctx.int(2));
            let one = ctx.int(1);
            let y = ctx.div(&one, &ctx.add(&one, &ctx.exp(&two_u.neg())));
            let y_comp = ctx.div(&one, &ctx.add(&one, &ctx.exp(&two_u)));
            let w = ctx.mul(
                &ctx.mul(&h, &ctx.mul(&ctx.pi(), &cosh)),
                &ctx.mul(&y, &y_comp),
            );
            Node {
                y,
                y_comp,
                weight: w,
            }
        })
        .collect()
}

/// Validated problem data shared by every node.
struct Problem {
    s: Vec<Complex>,
    a: Vec<Complex>,
    z: Vec<Complex>,
    inv_gamma: Complex,
    split: BigFloat,
    /// Tail nodes with `Re(a₁)·x − Re(Σs)·log x` above this are dropped.
    cutoff: f64,
    decay: f64,
    growth: f64,
}

impl Problem {
    /// `u e^{−a u} / (1 − z e^{−u})` for real `u > 0`.
    fn kernel(&self, j: usize, u: &BigFloat, ctx: &Ctx) -> Complex {
        let one = Complex::one(ctx);
        let em1 = ctx.real(ctx.expm1(&u.neg()));
        let den = one.sub(&self.z[j], ctx).sub(&self.z[j].mul(&em1, ctx), ctx);
        let num = self.a[j].scale(u, ctx).neg().exp(ctx).scale(u, ctx);
        num.div(&den, ctx)
    }

    /// Outer factor at `x₁`; `None` when the node is beyond the cutoff.
    fn outer(&self, x: &BigFloat, ctx: &Ctx) -> Option<Complex> {
        let xf = to_f64(x);
        if xf > 1.0 && self.decay * xf - self.growth * xf.ln() > self.cutoff {
            return None;
        }
        let expo = match self.s.len() {
            1 => self.s[0].sub(&Complex::from_int(ctx, 2), ctx),
            _ => self.s[0]
                .add(&self.s[1], ctx)
                .sub(&Complex::from_int(ctx, 3), ctx),
        };
        Some(
            ctx.real(x.clone())
                .pow(&expo, ctx)
                .mul(&self.kernel(0, x, ctx), ctx),
        )
    }

    /// `x₂^{s₂−2}(1−x₂)^{s₁−1}` for the inner variable.
    fn inner_factor(&self, node: &Node, ctx: &Ctx) -> Complex {
        let two = Complex::from_int(ctx, 2);
        let one = Complex::one(ctx);
        let p = ctx.real(node.y.clone()).pow(&self.s[1].sub(&two, ctx), ctx);
        let q = ctx
            .real(node.y_comp.clone())
            .pow(&self.s[0].sub(&one, ctx), ctx);
        p.mul(&q, ctx).scale(&node.weight, ctx)
    }

    /// Integral at one tanh-sinh level over `[0, c] ∪ [c, ∞)`.
    fn level_value(&self, level: u32, ctx: &Ctx) -> Complex {
        let nodes = tanh_sinh_nodes(level, ctx);
        let inner: Vec<(BigFloat, Complex)> = if self.s.len() == 2 {
            nodes
                .iter()
                .map(|n| (n.y.clone(), self.inner_factor(n, ctx)))
                .collect()
        } else {
            Vec::new()
        };
        let one = ctx.int(1);
        // (x₁, dx₁) over both pieces, head first
        let mut outer: Vec<(BigFloat, BigFloat)> = nodes
            .iter()
            .map(|n| (ctx.mul(&self.split, &n.y), ctx.mul(&self.split, &n.weight)))
            .collect();
        outer.extend(nodes.iter().map(|n| {
            let inv = ctx.div(&one, &n.y_comp);
            let x = ctx.add(&self.split, &ctx.mul(&n.y, &inv));
            (x, ctx.mul(&n.weight, &ctx.mul(&inv, &inv)))
        }));
        let digits = ctx.digits();
        let parts: Vec<Complex> = outer
            .par_iter()
            .map_init(
                || Ctx::new(digits),
                |ctx, (x, w)| {
                    let Some(head) = self.outer(x, ctx) else {
                        return Complex::zero(ctx);
                    };
                    if inner.is_empty() {
                        return head.scale(w, ctx);
                    }
                    let sum = inner.iter().fold(Complex::zero(ctx), |acc, (y, c)| {
                        acc.add(&self.kernel(1, &ctx.mul(x, y), ctx).mul(c, ctx), ctx)
                    });
                    head.mul(&sum, ctx).scale(w, ctx)
                },
            )
            .collect();
        let total = parts
            .iter()
            .fold(Complex::zero(ctx), |acc, p| acc.add(p, ctx));
        total.mul(&self.inv_gamma, ctx)
    }
}

/// Integral representation of the depth-one or depth-two series,
/// `∫₀^∞ x^{s−2} f(x) dx / Γ(s)` or
/// `∬ x₁^{s₁+s₂−3} x₂^{s₂−2} (1−x₂)^{s₁−1} f₁(x₁) f₂(x₁x₂) dx₁dx₂ / (Γ(s₁)Γ(s₂))`
/// over `[0,∞)×[0,1]`, with `f_j(u) = u e^{−a_j u}/(1 − z_j e^{−u})`.
pub fn integral_representation_eval(
    s: &[Complex],
    a: &[Complex],
    z: &[Complex],
    cfg: &QuadratureConfig,
) -> Result<QuadratureValue, OracleError> {
    let r = s.len();
    if !(1..=2).contains(&r) {
        return Err(OracleError::QuadratureNonConvergence(format!(
            "depth {r} is not supported (1 or 2 only)"
        )));
    }
    check_len("a", r, a.len())?;
    check_len("z", r, z.len())?;
    if let Some(j) = s.iter().position(|x| to_f64(&x.re) <= 1.0) {
        return Err(OracleError::QuadratureNonConvergence(format!(
            "Re s_{} must exceed 1",
            j + 1
        )));
    }
    if let Some(j) = z.iter().position(|x| {
        let (re, im) = x.to_f64();
        im == 0.0 && re > 1.0
    }) {
        return Err(OracleError::QuadratureNonConvergence(format!(
            "z_{} lies on the cut (1, ∞)",
            j + 1
        )));
    }
    let re_a: Vec<f64> = a.iter().map(|x| to_f64(&x.re)).collect();
    let decay = if r == 1 {
        re_a[0]
    } else {
        re_a[0].min(re_a[0] + re_a[1])
    };
    if decay <= 0.0 {
        return Err(OracleError::QuadratureNonConvergence(
            "the integrand does not decay: need Re a₁ > 0 and Re(a₁ + a₂) > 0".into(),
        ));
    }

    let lambda_min = z
        .iter()
        .map(|x| lambda(x.to_f64()))
        .fold(f64::INFINITY, f64::min);
    let mut split = cfg.split.clone().unwrap_or_else(|| rat(1, 2));
    if rational_abs_f64(&split) >= lambda_min {
        split = rational_from_f64(lambda_min / 2.0).unwrap_or_else(|| rat(1, 4));
    }

    let ctx = Ctx::new(cfg.precision);
    let inv_gamma = s.iter().try_fold(Complex::one(&ctx), |acc, x| {
        Ok::<_, OracleError>(acc.mul(&gamma_numeric(x, &ctx)?.recip(&ctx), &ctx))
    })?;
    let growth: f64 = s.iter().map(|x| to_f64(&x.re)).sum();
    let problem = Problem {
        s: s.to_vec(),
        a: a.to_vec(),
        z: z.to_vec(),
        inv_gamma,
        split: ctx.from_rational(&split),
        cutoff: (f64::from(cfg.precision) + 10.0) * std::f64::consts::LN_10,
        decay,
        growth,
    };

    let mut prev = problem.level_value(cfg.min_level, &ctx);
    let mut diff = f64::INFINITY;
    for level in cfg.min_level + 1..=cfg.max_level {
        let cur = problem.level_value(level, &ctx);
        diff = cur.sub(&prev, &ctx).abs_f64();
        log::debug!("quadrature level {level}: step difference {diff:e}");
        if diff < cfg.tolerance {
            return Ok(QuadratureValue {
                value: cur,
                level,
                estimate: diff,
                split,
            });
        }
        prev = cur;
    }
    Err(OracleError::QuadratureNonConvergence(format!(
        "levels {} and {} still differ by {diff:e} (tolerance {:e})",
        cfg.max_level - 1,
        cfg.max_level,
        cfg.tolerance
    )))
}
