use astro_float::BigFloat;

use super::{format_sig, to_f64, Ctx};

/// Complex number over [`BigFloat`]. Arithmetic goes through a [`Ctx`] so
/// that precision and rounding stay uniform.
#[derive(Clone, Debug)]
pub struct Complex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Complex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Self { re, im }
    }

    pub fn zero(ctx: &Ctx) -> Self {
        Self::new(ctx.zero(), ctx.zero())
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::new(ctx.int(1), ctx.zero())
    }

    pub fn from_int(ctx: &Ctx, n: i64) -> Self {
        Self::new(ctx.int(n), ctx.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, o: &Self, ctx: &Ctx) -> Self {
        Self::new(ctx.add(&self.re, &o.re), ctx.add(&self.im, &o.im))
    }

    pub fn sub(&self, o: &Self, ctx: &Ctx) -> Self {
        Self::new(ctx.sub(&self.re, &o.re), ctx.sub(&self.im, &o.im))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.re.neg(), self.im.neg())
    }

    pub fn mul(&self, o: &Self, ctx: &Ctx) -> Self {
        if self.is_real() && o.is_real() {
            return Self::new(ctx.mul(&self.re, &o.re), ctx.zero());
        }
        Self::new(
            ctx.sub(&ctx.mul(&self.re, &o.re), &ctx.mul(&self.im, &o.im)),
            ctx.add(&ctx.mul(&self.re, &o.im), &ctx.mul(&self.im, &o.re)),
        )
    }

    pub fn scale(&self, k: &BigFloat, ctx: &Ctx) -> Self {
        Self::new(ctx.mul(&self.re, k), ctx.mul(&self.im, k))
    }

    pub fn norm_sqr(&self, ctx: &Ctx) -> BigFloat {
        ctx.add(&ctx.mul(&self.re, &self.re), &ctx.mul(&self.im, &self.im))
    }

    pub fn abs(&self, ctx: &Ctx) -> BigFloat {
        if self.im.is_zero() {
            return ctx.abs(&self.re);
        }
        ctx.sqrt(&self.norm_sqr(ctx))
    }

    pub fn div(&self, o: &Self, ctx: &Ctx) -> Self {
        if o.is_real() {
            return Self::new(ctx.div(&self.re, &o.re), ctx.div(&self.im, &o.re));
        }
        let n = o.norm_sqr(ctx);
        let num = self.mul(&Self::new(o.re.clone(), o.im.neg()), ctx);
        Self::new(ctx.div(&num.re, &n), ctx.div(&num.im, &n))
    }

    pub fn recip(&self, ctx: &Ctx) -> Self {
        Self::one(ctx).div(self, ctx)
    }

    pub fn exp(&self, ctx: &Ctx) -> Self {
        let m = ctx.exp(&self.re);
        if self.im.is_zero() {
            return Self::new(m, ctx.zero());
        }
        Self::new(
            ctx.mul(&m, &ctx.cos(&self.im)),
            ctx.mul(&m, &ctx.sin(&self.im)),
        )
    }

    /// Principal logarithm, argument in `(−π, π]`.
    pub fn ln(&self, ctx: &Ctx) -> Self {
        if self.im.is_zero() && self.re.is_positive() {
            return Self::new(ctx.ln(&self.re), ctx.zero());
        }
        let half = ctx.div(&ctx.ln(&self.norm_sqr(ctx)), &ctx.int(2));
        Self::new(half, ctx.atan2(&self.im, &self.re))
    }

    pub fn powi(&self, n: i64, ctx: &Ctx) -> Self {
        if n < 0 {
            return self.powi(-n, ctx).recip(ctx);
        }
        let mut base = self.clone();
        let mut acc = Self::one(ctx);
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ctx);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, ctx);
            }
        }
        acc
    }

    /// Principal power `exp(w·Log self)`; integer exponents are exact
    /// products.
    pub fn pow(&self, w: &Self, ctx: &Ctx) -> Self {
        if let Some(n) = w.as_small_int() {
            return self.powi(n, ctx);
        }
        if self.is_zero() {
            return Self::zero(ctx);
        }
        w.mul(&self.ln(ctx), ctx).exp(ctx)
    }

    /// `Some(n)` when the value is exactly an integer of moderate size.
    pub fn as_small_int(&self) -> Option<i64> {
        if !self.im.is_zero() || !self.re.is_int() {
            return None;
        }
        let v = to_f64(&self.re);
        (v.abs() < 1e15).then_some(v as i64)
    }

    pub fn sin(&self, ctx: &Ctx) -> Self {
        if self.im.is_zero() {
            return Self::new(ctx.sin(&self.re), ctx.zero());
        }
        let (ch, sh) = cosh_sinh(&self.im, ctx);
        Self::new(
            ctx.mul(&ctx.sin(&self.re), &ch),
            ctx.mul(&ctx.cos(&self.re), &sh),
        )
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.re), to_f64(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        let (re, im) = self.to_f64();
        re.hypot(im)
    }

    /// `re` or `re±imi` with `sig` significant digits per part.
    pub fn format(&self, sig: usize) -> String {
        let re = format_sig(&self.re, sig);
        if self.im.is_zero() {
            return re;
        }
        let im = format_sig(&self.im, sig);
        if self.re.is_zero() {
            return format!("{im}i");
        }
        match im.strip_prefix('-') {
            Some(mag) => format!("{re}-{mag}i"),
            None => format!("{re}+{im}i"),
        }
    }
}

fn cosh_sinh(y: &BigFloat, ctx: &Ctx) -> (BigFloat, BigFloat) {
    let e = ctx.exp(y);
    let inv = ctx.div(&ctx.int(1), &e);
    let two = ctx.int(2);
    (
        ctx.div(&ctx.add(&e, &inv), &two),
        ctx.div(&ctx.sub(&e, &inv), &two),
    )
}
