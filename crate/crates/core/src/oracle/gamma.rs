use crate::apostol::bernoulli_numbers;
use crate::exact_arith::BigRational;
use crate::numeric::{to_f64, Complex, Ctx};

use super::OracleError;

/// `Γ(x)` at the context precision: reflection for `Re x < 1/2`,
/// otherwise an upward shift followed by the Stirling series.
pub fn gamma_numeric(x: &Complex, ctx: &Ctx) -> Result<Complex, OracleError> {
    if x.is_real() && x.re.is_int() && !x.re.is_positive() {
        return Err(OracleError::PoleOfGamma(x.format(10)));
    }
    if to_f64(&x.re) < 0.5 {
        // Γ(x) = π / (sin(πx) Γ(1−x))
        let pi = ctx.real(ctx.pi());
        let one = Complex::one(ctx);
        let g = gamma_numeric(&one.sub(x, ctx), ctx)?;
        let s = pi.mul(x, ctx).sin(ctx);
        return Ok(pi.div(&s.mul(&g, ctx), ctx));
    }
    let digits = i64::from(ctx.digits());
    let threshold = digits as f64;
    let shift = (threshold - to_f64(&x.re)).ceil().max(0.0) as i64;
    let mut w = x.clone();
    let mut rising = Complex::one(ctx);
    for _ in 0..shift {
        rising = rising.mul(&w, ctx);
        w = w.add(&Complex::one(ctx), ctx);
    }
    Ok(ln_gamma_stirling(&w, ctx).exp(ctx).div(&rising, ctx))
}

/// `ln Γ(w)` for `Re w` large, principal branch of `ln w`.
fn ln_gamma_stirling(w: &Complex, ctx: &Ctx) -> Complex {
    let terms = ctx.digits() as usize / 2 + 5;
    let b = bernoulli_numbers(2 * terms);
    let half = ctx.real(ctx.from_rational(&BigRational::new(1.into(), 2.into())));
    let ln_w = w.ln(ctx);
    let two_pi = ctx.mul(&ctx.int(2), &ctx.pi());
    let mut acc = w
        .sub(&half, ctx)
        .mul(&ln_w, ctx)
        .sub(w, ctx)
        .add(&ctx.real(ctx.div(&ctx.ln(&two_pi), &ctx.int(2))), ctx);
    let inv = w.recip(ctx);
    let inv2 = inv.mul(&inv, ctx);
    let mut pow = inv;
    for k in 1..=terms {
        let denom = BigRational::from_integer(((2 * k) * (2 * k - 1)).into());
        let c = ctx.from_rational(&(&b[2 * k] / denom));
        acc = acc.add(&pow.scale(&c, ctx), ctx);
        pow = pow.mul(&inv2, ctx);
    }
    acc
}
