use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exact_arith::{
    rational_to_string, BigRational, ExactComplex, Field, RationalFunction, UniPolynomial, ZVar,
};
use crate::numeric::{Complex, Ctx};

use super::ApostolError;

pub type ZPoly = UniPolynomial<BigRational, ZVar>;

/// `p(z) / (z − 1)^e` with `p(1) ≠ 0` whenever `e > 0`.
#[derive(Clone, PartialEq, Debug)]
pub struct ZRationalCoeff {
    num: ZPoly,
    pole: u32,
}

fn z_minus_one() -> ZPoly {
    ZPoly::linear(-BigRational::one(), BigRational::one())
}

impl ZRationalCoeff {
    pub fn new(num: ZPoly, pole: u32) -> Self {
        let mut out = Self { num, pole };
        out.normalize();
        out
    }

    pub fn zero() -> Self {
        Self::new(ZPoly::zero(), 0)
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::new(ZPoly::constant(q), 0)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.pole = 0;
            return;
        }
        let zm1 = z_minus_one();
        while self.pole > 0 && self.num.eval(&BigRational::one()).is_zero() {
            let (q, _) = self.num.div_rem(&zm1).expect("nonzero divisor");
            self.num = q;
            self.pole -= 1;
        }
    }

    pub fn numerator(&self) -> &ZPoly {
        &self.num
    }

    pub fn pole_order(&self) -> u32 {
        self.pole
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.num.scale(c), self.pole)
    }

    pub fn add(&self, other: &Self) -> Self {
        let e = self.pole.max(other.pole);
        let lift = |c: &Self| &c.num * &z_minus_one().pow(e - c.pole);
        Self::new(&lift(self) + &lift(other), e)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, self.pole + other.pole)
    }

    pub fn to_rational_function(&self) -> RationalFunction<BigRational, ZVar> {
        RationalFunction::new(self.num.clone(), z_minus_one().pow(self.pole))
            .expect("nonzero denominator")
    }

    pub fn eval_exact(&self, z: &ExactComplex) -> Result<ExactComplex, ApostolError> {
        let zp = self
            .num
            .map::<ExactComplex, ZVar>(|c| ExactComplex::real(c.clone()));
        let num = zp.eval(z);
        if self.pole == 0 {
            return Ok(num);
        }
        let zm1 = z.clone() - ExactComplex::one();
        let mut den = ExactComplex::one();
        for _ in 0..self.pole {
            den = den * zm1.clone();
        }
        num.checked_div(&den).map_err(|_| ApostolError::PoleAtZOne)
    }

    pub fn eval_numeric(&self, z: &Complex, ctx: &Ctx) -> Complex {
        let mut acc = Complex::zero(ctx);
        for c in self.num.coeffs().iter().rev() {
            acc = acc.mul(z, ctx).add(&ctx.real(ctx.from_rational(c)), ctx);
        }
        if self.pole == 0 {
            return acc;
        }
        let zm1 = z.sub(&Complex::one(ctx), ctx);
        acc.div(&zm1.powi(i64::from(self.pole), ctx), ctx)
    }

    /// Sign and magnitude text, e.g. `(true, "2z/(z-1)^2")`. With
    /// `bare_one` a unit magnitude renders as the empty string so the
    /// caller can append a variable.
    pub(crate) fn signed_body(&self, bare_one: bool) -> (bool, String) {
        let (neg, num) = signed_zpoly(&self.num, bare_one && self.pole == 0);
        if self.pole == 0 {
            return (neg, num);
        }
        let num = if num.is_empty() { "1".to_string() } else { num };
        let den = if self.pole == 1 {
            "(z-1)".to_string()
        } else {
            format!("(z-1)^{}", self.pole)
        };
        (neg, format!("{num}/{den}"))
    }
}

/// Coefficient text for a rational multiplying a variable: `1` vanishes,
/// fractions get parentheses.
pub(crate) fn coeff_prefix(c: &BigRational) -> String {
    if c.is_one() {
        String::new()
    } else if c.is_integer() {
        rational_to_string(c)
    } else {
        format!("({})", rational_to_string(c))
    }
}

pub(crate) fn var_power(name: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{k}"),
    }
}

fn signed_zpoly(p: &ZPoly, bare_one: bool) -> (bool, String) {
    let nz: Vec<(usize, &BigRational)> = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    match nz.as_slice() {
        [] => (false, "0".to_string()),
        [(k, c)] => {
            let mag = c.abs();
            let text = if *k == 0 {
                if bare_one && mag.is_one() {
                    String::new()
                } else {
                    rational_to_string(&mag)
                }
            } else {
                format!("{}{}", coeff_prefix(&mag), var_power("z", *k))
            };
            (c.is_negative(), text)
        }
        terms => {
            let neg = terms[0].1.is_negative();
            let mut s = String::from("(");
            for (i, (k, c)) in terms.iter().enumerate() {
                let c = if neg { -(*c).clone() } else { (*c).clone() };
                let mag = c.abs();
                if i > 0 {
                    s.push_str(if c.is_negative() { " - " } else { " + " });
                }
                if *k == 0 {
                    s.push_str(&rational_to_string(&mag));
                } else {
                    s.push_str(&coeff_prefix(&mag));
                    s.push_str(&var_power("z", *k));
                }
            }
            s.push(')');
            (neg, s)
        }
    }
}

impl fmt::Display for ZRationalCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, body) = self.signed_body(false);
        write!(f, "{}{body}", if neg { "-" } else { "" })
    }
}
