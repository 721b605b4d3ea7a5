use std::cell::RefCell;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact_arith::{
    binomial, factorial, rational_to_string, AVar, BigRational, ExactComplex, Field,
    RationalFunction, UniPolynomial, ZVar,
};
use crate::numeric::{Complex, Ctx};

use super::stirling::stirling2;
use super::zcoeff::{coeff_prefix, var_power, ZPoly, ZRationalCoeff};
use super::{ApostolError, Regime};

thread_local! {
    static BETA: RefCell<Vec<ZRationalCoeff>> = const { RefCell::new(Vec::new()) };
    static BERNOULLI: RefCell<Vec<BigRational>> = const { RefCell::new(Vec::new()) };
}

fn compute_beta(k: usize) -> ZRationalCoeff {
    if k == 0 {
        return ZRationalCoeff::zero();
    }
    let zm1 = ZPoly::linear(-BigRational::one(), BigRational::one());
    let minus_z = ZPoly::monomial(-BigRational::one(), 1);
    let sum = (0..k).fold(ZPoly::zero(), |acc, l| {
        let c = BigRational::from_integer(factorial(l as u64) * stirling2(k - 1, l));
        if c.is_zero() {
            return acc;
        }
        let term = &minus_z.pow(l as u32) * &zm1.pow((k - 1 - l) as u32);
        &acc + &term.scale(&c)
    });
    let k_rat = BigRational::from_integer(BigInt::from(k));
    ZRationalCoeff::new(sum.scale(&k_rat), k as u32)
}

/// `B_k(0; z)` as a rational function of `z`, from its Stirling-number
/// closed form. `β_0 = 0` away from `z = 1`.
pub fn beta_coeff(k: usize) -> ZRationalCoeff {
    BETA.with(|cache| {
        let mut cache = cache.borrow_mut();
        while cache.len() <= k {
            let next = compute_beta(cache.len());
            cache.push(next);
        }
        cache[k].clone()
    })
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = −1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    BERNOULLI.with(|cache| {
        let mut b = cache.borrow_mut();
        while b.len() <= n {
            let m = b.len();
            if m == 0 {
                b.push(BigRational::one());
                continue;
            }
            // Σ_{k=0}^{m} C(m+1, k) B_k = 0
            let s = (0..m).fold(BigRational::zero(), |acc, k| {
                acc + BigRational::from_integer(binomial(m as u64 + 1, k as u64)) * &b[k]
            });
            let next = -s / BigRational::from_integer(BigInt::from(m + 1));
            b.push(next);
        }
        b[..=n].to_vec()
    })
}

#[derive(Clone, PartialEq, Debug)]
enum Coeffs {
    /// Index `i` holds the coefficient of `a^i`.
    Generic(Vec<ZRationalCoeff>),
    ZEqualsOne(UniPolynomial<BigRational, AVar>),
}

/// `B_n(a; z)` as a polynomial in `a`.
#[derive(Clone, PartialEq, Debug)]
pub struct ApostolPolynomial {
    degree: usize,
    coeffs: Coeffs,
}

/// `B_n(a; z) = Σ_k C(n,k) β_k(z) a^{n−k}`, or the classical Bernoulli
/// polynomial in the `z = 1` regime.
pub fn apostol_poly(n: usize, regime: Regime) -> ApostolPolynomial {
    let coeffs = match regime {
        Regime::Generic => {
            let mut by_power = vec![ZRationalCoeff::zero(); n + 1];
            for k in 1..=n {
                let c = BigRational::from_integer(binomial(n as u64, k as u64));
                by_power[n - k] = beta_coeff(k).scale(&c);
            }
            Coeffs::Generic(by_power)
        }
        Regime::ZEqualsOne => {
            let b = bernoulli_numbers(n);
            let mut by_power = vec![BigRational::zero(); n + 1];
            for (k, bk) in b.iter().enumerate() {
                by_power[n - k] = BigRational::from_integer(binomial(n as u64, k as u64)) * bk;
            }
            Coeffs::ZEqualsOne(UniPolynomial::new(by_power))
        }
    };
    ApostolPolynomial { degree: n, coeffs }
}

impl ApostolPolynomial {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn regime(&self) -> Regime {
        match self.coeffs {
            Coeffs::Generic(_) => Regime::Generic,
            Coeffs::ZEqualsOne(_) => Regime::ZEqualsOne,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.coeffs {
            Coeffs::Generic(c) => c.iter().all(ZRationalCoeff::is_zero),
            Coeffs::ZEqualsOne(p) => p.is_zero(),
        }
    }

    /// Coefficient of `a^i` in the generic regime.
    pub fn z_coeff(&self, i: usize) -> Option<&ZRationalCoeff> {
        match &self.coeffs {
            Coeffs::Generic(c) => c.get(i),
            Coeffs::ZEqualsOne(_) => None,
        }
    }

    /// The `z = 1` polynomial in `a`.
    pub fn bernoulli(&self) -> Option<&UniPolynomial<BigRational, AVar>> {
        match &self.coeffs {
            Coeffs::ZEqualsOne(p) => Some(p),
            Coeffs::Generic(_) => None,
        }
    }

    /// Exact value at `(a, z)`; in the generic regime `z = 1` is rejected.
    pub fn eval_exact(
        &self,
        a: &ExactComplex,
        z: &ExactComplex,
    ) -> Result<ExactComplex, ApostolError> {
        match &self.coeffs {
            Coeffs::Generic(cs) => {
                if z.is_one() {
                    return Err(ApostolError::PoleAtZOne);
                }
                let mut acc = ExactComplex::zero();
                for c in cs.iter().rev() {
                    acc = acc * a.clone() + c.eval_exact(z)?;
                }
                Ok(acc)
            }
            Coeffs::ZEqualsOne(p) => {
                let pc = p.map::<ExactComplex, AVar>(|c| ExactComplex::real(c.clone()));
                Ok(pc.eval(a))
            }
        }
    }

    pub fn eval_numeric(&self, a: &Complex, z: &Complex, ctx: &Ctx) -> Complex {
        let mut acc = Complex::zero(ctx);
        match &self.coeffs {
            Coeffs::Generic(cs) => {
                for c in cs.iter().rev() {
                    acc = acc.mul(a, ctx).add(&c.eval_numeric(z, ctx), ctx);
                }
            }
            Coeffs::ZEqualsOne(p) => {
                for c in p.coeffs().iter().rev() {
                    acc = acc.mul(a, ctx).add(&ctx.real(ctx.from_rational(c)), ctx);
                }
            }
        }
        acc
    }

    /// Value at a rational `a` as a rational function of `z` (generic
    /// regime only).
    pub fn at_a_symbolic_z(&self, a: &BigRational) -> Option<RationalFunction<BigRational, ZVar>> {
        let Coeffs::Generic(cs) = &self.coeffs else {
            return None;
        };
        let a = RationalFunction::<BigRational, ZVar>::from_rational(a);
        let mut acc = RationalFunction::zero();
        for c in cs.iter().rev() {
            acc = acc * a.clone() + c.to_rational_function();
        }
        Some(acc)
    }
}

impl fmt::Display for ApostolPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(bool, String)> = Vec::new();
        match &self.coeffs {
            Coeffs::Generic(cs) => {
                for (i, c) in cs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
                    let (neg, body) = c.signed_body(i > 0);
                    let text = match (i, body.is_empty()) {
                        (0, _) => body,
                        (_, true) => var_power("a", i),
                        (_, false) if c.pole_order() > 0 => format!("{body}·{}", var_power("a", i)),
                        (_, false) => format!("{body}{}", var_power("a", i)),
                    };
                    parts.push((neg, text));
                }
            }
            Coeffs::ZEqualsOne(p) => {
                for (i, c) in p
                    .coeffs()
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, c)| !c.is_zero())
                {
                    let mag = c.abs();
                    let text = if i == 0 {
                        rational_to_string(&mag)
                    } else {
                        format!("{}{}", coeff_prefix(&mag), var_power("a", i))
                    };
                    parts.push((c.is_negative(), text));
                }
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (k, (neg, text)) in parts.iter().enumerate() {
            match (k, neg) {
                (0, true) => write!(f, "-{text}")?,
                (0, false) => write!(f, "{text}")?,
                (_, true) => write!(f, " - {text}")?,
                (_, false) => write!(f, " + {text}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{rat, rat_int};

    fn zp(cs: &[i64]) -> ZPoly {
        ZPoly::new(cs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn low_order_betas() {
        assert!(beta_coeff(0).is_zero());
        assert_eq!(beta_coeff(1), ZRationalCoeff::new(zp(&[1]), 1));
        assert_eq!(beta_coeff(2), ZRationalCoeff::new(zp(&[0, -2]), 2));
    }

    #[test]
    fn fourth_polynomial() {
        let p = apostol_poly(4, Regime::Generic);
        assert!(p.z_coeff(4).unwrap().is_zero());
        assert_eq!(p.z_coeff(3).unwrap(), &ZRationalCoeff::new(zp(&[4]), 1));
        assert_eq!(
            p.z_coeff(2).unwrap(),
            &ZRationalCoeff::new(zp(&[0, -12]), 2)
        );
        assert_eq!(
            p.z_coeff(1).unwrap(),
            &ZRationalCoeff::new(zp(&[0, 12, 12]), 3)
        );
        assert_eq!(
            p.z_coeff(0).unwrap(),
            &ZRationalCoeff::new(zp(&[0, -4, -16, -4]), 4)
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(
            apostol_poly(2, Regime::Generic).to_string(),
            "2/(z-1)·a - 2z/(z-1)^2"
        );
        assert_eq!(apostol_poly(0, Regime::Generic).to_string(), "0");
        assert_eq!(
            apostol_poly(3, Regime::ZEqualsOne).to_string(),
            "a^3 - (3/2)a^2 + (1/2)a"
        );
        assert_eq!(
            apostol_poly(2, Regime::ZEqualsOne).to_string(),
            "a^2 - a + 1/6"
        );
        assert_eq!(apostol_poly(0, Regime::ZEqualsOne).to_string(), "1");
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[3], rat_int(0));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[12], rat(-691, 2730));
    }

    #[test]
    fn exact_values() {
        let half = ExactComplex::real(rat(1, 2));
        let one = ExactComplex::one();
        let b3 = apostol_poly(3, Regime::Generic);
        assert_eq!(
            b3.eval_exact(&one, &half).unwrap(),
            ExactComplex::real(rat_int(-36))
        );
        let b2 = apostol_poly(2, Regime::ZEqualsOne);
        assert_eq!(
            b2.eval_exact(&one, &one).unwrap(),
            ExactComplex::real(rat(1, 6))
        );
        assert_eq!(b3.eval_exact(&one, &one), Err(ApostolError::PoleAtZOne));
    }
}
