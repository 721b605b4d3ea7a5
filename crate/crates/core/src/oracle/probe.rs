use rayon::prelude::*;
use serde::Serialize;

use crate::exact_arith::{rational_to_string, BigRational};
use crate::expansion::{eval_expansion, expand, NumericParams, PointSpec};
use crate::numeric::{Complex, Ctx, DEFAULT_DIGITS};

use super::series::{direct_series, SeriesEvalConfig};
use super::{check_len, DirectionVector, OracleError};

/// Errors below this are treated as exact agreement when estimating the order.
const ERROR_FLOOR: f64 = 1e-35;
const SHOWN_DIGITS: usize = 25;

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeSettings {
    /// Strictly decreasing positive step sizes.
    pub deltas: Vec<BigRational>,
    pub precision: u32,
    pub min_order: f64,
    pub limit_tolerance: f64,
    /// Extra samples at `δ_min/10, δ_min/100, …` used only for the
    /// extrapolation to `δ = 0`.
    pub extra_refinements: u32,
}

impl Default for ProbeSettings {
    fn default() -> Self {
        let deltas = [100, 1000, 10000]
            .iter()
            .map(|&d| BigRational::new(1.into(), d.into()))
            .collect();
        Self {
            deltas,
            precision: DEFAULT_DIGITS,
            min_order: 0.8,
            limit_tolerance: 1e-6,
            extra_refinements: 2,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeRow {
    pub delta: String,
    pub zeta: String,
    pub formula: String,
    pub error: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbePoint {
    pub r: usize,
    pub l: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub point: ProbePoint,
    pub direction: Vec<String>,
    pub values: Vec<ProbeRow>,
    /// Smallest pairwise order; `None` when every error is below the
    /// arithmetic floor.
    pub empirical_order: Option<f64>,
    pub pairwise_orders: Vec<f64>,
    /// Polynomial extrapolation of the series values to `δ = 0`.
    pub extrapolated: String,
    /// Every step size entering the extrapolation.
    pub extrapolation_deltas: Vec<String>,
    pub limit_error: f64,
    pub passed: bool,
}

impl ProbeReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct Sample {
    delta: f64,
    zeta: Complex,
    formula: Complex,
    error: f64,
}

/// Compares the series at `s = −l + δc` with the expansion at `ε = δc` for
/// each `δ`, estimating the order of the remainder and the limit.
pub fn limit_probe(
    point: &PointSpec,
    a: &[Complex],
    z: &[Complex],
    dir: &DirectionVector,
    settings: &ProbeSettings,
) -> Result<ProbeReport, OracleError> {
    let r = point.r();
    check_len("a", r, a.len())?;
    check_len("z", r, z.len())?;
    check_len("direction", r, dir.len())?;
    if let Some(j) = z.iter().position(|x| x.abs_f64() >= 1.0) {
        return Err(OracleError::NonConvergentRegion(format!(
            "the probe needs |z_j| < 1, but |z_{}| = {}",
            j + 1,
            z[j].abs_f64()
        )));
    }
    if settings.deltas.len() < 2 || settings.deltas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(OracleError::InvalidDirection(
            "deltas must be at least two strictly decreasing values".into(),
        ));
    }
    if let Some(bad) = settings
        .deltas
        .iter()
        .find(|d| **d <= BigRational::from_integer(0.into()))
    {
        return Err(OracleError::InvalidDirection(format!(
            "delta {bad} is not positive"
        )));
    }

    let expansion = expand(point);
    let regimes = vec![None; r];
    let cfg = SeriesEvalConfig::with_precision(settings.precision);
    let ten = BigRational::from_integer(10.into());
    let mut all_deltas = settings.deltas.clone();
    for _ in 0..settings.extra_refinements {
        let next = all_deltas.last().expect("at least two deltas") / &ten;
        all_deltas.push(next);
    }
    let all_samples: Vec<Sample> = all_deltas
        .par_iter()
        .map(|delta| {
            let ctx = Ctx::new(settings.precision);
            let eps: Vec<Complex> = dir
                .components()
                .iter()
                .map(|c| ctx.real(ctx.from_rational(&(c * delta))))
                .collect();
            let s: Vec<Complex> = point
                .l()
                .iter()
                .zip(&eps)
                .map(|(&l, e)| e.sub(&Complex::from_int(&ctx, i64::from(l)), &ctx))
                .collect();
            let zeta = direct_series(&s, a, z, &cfg)?.value;
            let params = NumericParams {
                a,
                z,
                regimes: &regimes,
                eps: &eps,
            };
            let formula = eval_expansion(&expansion, &params, &ctx)?;
            let error = zeta.sub(&formula, &ctx).abs_f64();
            Ok(Sample {
                delta: crate::numeric::rational_abs_f64(delta),
                zeta,
                formula,
                error,
            })
        })
        .collect::<Result<_, OracleError>>()?;
    let samples = &all_samples[..settings.deltas.len()];

    let pairwise_orders: Vec<f64> = samples
        .windows(2)
        .filter(|w| w[0].error > ERROR_FLOOR && w[1].error > ERROR_FLOOR)
        .map(|w| (w[0].error / w[1].error).ln() / (w[0].delta / w[1].delta).ln())
        .collect();
    let all_exact = samples.iter().all(|s| s.error <= ERROR_FLOOR);
    let empirical_order = if all_exact {
        None
    } else {
        Some(
            pairwise_orders
                .iter()
                .cloned()
                .fold(f64::INFINITY, f64::min),
        )
    };

    let ctx = Ctx::new(settings.precision);
    let extrapolated = neville_at_zero(&all_deltas, &all_samples, &ctx);
    let limit_error = extrapolated.sub(&samples[0].formula, &ctx).abs_f64();
    let order_ok = empirical_order.is_none_or(|p| p >= settings.min_order);
    let passed = order_ok && limit_error <= settings.limit_tolerance;

    Ok(ProbeReport {
        point: ProbePoint {
            r,
            l: point.l().to_vec(),
        },
        direction: dir.components().iter().map(rational_to_string).collect(),
        values: settings
            .deltas
            .iter()
            .zip(samples)
            .map(|(d, s)| ProbeRow {
                delta: rational_to_string(d),
                zeta: s.zeta.format(SHOWN_DIGITS),
                formula: s.formula.format(SHOWN_DIGITS),
                error: format!("{:.6e}", s.error),
            })
            .collect(),
        empirical_order,
        pairwise_orders,
        extrapolated: extrapolated.format(SHOWN_DIGITS),
        extrapolation_deltas: all_deltas.iter().map(rational_to_string).collect(),
        limit_error,
        passed,
    })
}

/// Value at `δ = 0` of the interpolating polynomial through `(δ_i, ζ_i)`.
fn neville_at_zero(deltas: &[BigRational], samples: &[Sample], ctx: &Ctx) -> Complex {
    let x: Vec<_> = deltas.iter().map(|d| ctx.from_rational(d)).collect();
    let mut p: Vec<Complex> = samples.iter().map(|s| s.zeta.clone()).collect();
    let n = p.len();
    for m in 1..n {
        for i in 0..n - m {
            // P_{i..i+m}(0) = (x_{i+m} P_{i..i+m-1} − x_i P_{i+1..i+m}) / (x_{i+m} − x_i)
            let num = p[i]
                .scale(&x[i + m], ctx)
                .sub(&p[i + 1].scale(&x[i], ctx), ctx);
            let den = ctx.sub(&x[i + m], &x[i]);
            p[i] = num.scale(&ctx.div(&ctx.int(1), &den), ctx);
        }
    }
    p.swap_remove(0)
}
