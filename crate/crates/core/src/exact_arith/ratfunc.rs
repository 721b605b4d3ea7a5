use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{ArithError, BigRational, Delta, Field, UniPolynomial, Var};

/// Quotient of two polynomials in one variable, kept in lowest terms with
/// a monic denominator. With that normal form structural equality is
/// mathematical equality, and the orders at zero of numerator and
/// denominator are intrinsic.
#[derive(Clone, PartialEq, Debug)]
pub struct RationalFunction<F, V> {
    num: UniPolynomial<F, V>,
    den: UniPolynomial<F, V>,
}

/// Exact rational function of the ray parameter δ.
pub type RayRationalFunction = RationalFunction<BigRational, Delta>;

impl<F: Field, V: Var> RationalFunction<F, V> {
    pub fn new(num: UniPolynomial<F, V>, den: UniPolynomial<F, V>) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(UniPolynomial::zero()));
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        let lead = den.leading().and_then(Field::inverse).expect("nonzero");
        Ok(Self {
            num: num.scale(&lead),
            den: den.scale(&lead),
        })
    }

    pub fn from_poly(p: UniPolynomial<F, V>) -> Self {
        Self {
            num: p,
            den: UniPolynomial::constant(F::one()),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(UniPolynomial::constant(c))
    }

    pub fn var() -> Self {
        Self::from_poly(UniPolynomial::var())
    }

    pub fn numer(&self) -> &UniPolynomial<F, V> {
        &self.num
    }

    pub fn denom(&self) -> &UniPolynomial<F, V> {
        &self.den
    }

    pub fn eval(&self, x: &F) -> Result<F, ArithError> {
        self.num.eval(x).checked_div(&self.den.eval(x))
    }

    /// `lim_{V→0}`; finite iff the numerator vanishes to at least the
    /// order of the denominator.
    pub fn limit_at_zero(&self) -> Result<F, ArithError> {
        let Some(num_order) = self.num.valuation() else {
            return Ok(F::zero());
        };
        let den_order = self.den.valuation().expect("denominator is nonzero");
        match num_order.cmp(&den_order) {
            std::cmp::Ordering::Less => Err(ArithError::PoleAtZero {
                num_order,
                den_order,
            }),
            std::cmp::Ordering::Greater => Ok(F::zero()),
            std::cmp::Ordering::Equal => {
                self.num.coeffs()[num_order].checked_div(&self.den.coeffs()[den_order])
            }
        }
    }

    pub fn powi(&self, e: i32) -> Result<Self, ArithError> {
        let base = if e < 0 {
            self.inverse().ok_or(ArithError::DivisionByZero)?
        } else {
            self.clone()
        };
        let k = e.unsigned_abs();
        Self::new(base.num.pow(k), base.den.pow(k))
    }

    fn combine(num: UniPolynomial<F, V>, den: UniPolynomial<F, V>) -> Self {
        Self::new(num, den).expect("product of nonzero denominators")
    }
}

/// Exact `lim_{δ→0⁺} f(δ)`.
pub fn ray_limit_at_zero(f: &RayRationalFunction) -> Result<BigRational, ArithError> {
    f.limit_at_zero()
}

impl<F: Field, V: Var> Add for RationalFunction<F, V> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            return Self::combine(&self.num + &rhs.num, self.den);
        }
        Self::combine(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<F: Field, V: Var> Sub for RationalFunction<F, V> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Field, V: Var> Mul for RationalFunction<F, V> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::combine(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<F: Field, V: Var> Neg for RationalFunction<F, V> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            num: -self.num,
            den: self.den,
        }
    }
}

impl<F: Field, V: Var> Zero for RationalFunction<F, V> {
    fn zero() -> Self {
        Self::from_poly(UniPolynomial::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field, V: Var> One for RationalFunction<F, V> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<F: Field, V: Var> Field for RationalFunction<F, V> {
    fn inverse(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::combine(self.den.clone(), self.num.clone()))
        }
    }

    fn from_rational(q: &BigRational) -> Self {
        Self::constant(F::from_rational(q))
    }
}

impl<F: Field + fmt::Display, V: Var> fmt::Display for RationalFunction<F, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{rat, rat_int};

    type P = UniPolynomial<BigRational, Delta>;

    fn p(cs: &[i64]) -> P {
        P::new(cs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn limit_examples() {
        let f = RayRationalFunction::new(p(&[0, 2, 3]), p(&[0, 1])).unwrap();
        assert_eq!(ray_limit_at_zero(&f), Ok(rat_int(2)));
        let g = RayRationalFunction::new(p(&[0, 0, 1]), p(&[0, 1])).unwrap();
        assert_eq!(ray_limit_at_zero(&g), Ok(rat_int(0)));
        let h = RayRationalFunction::new(p(&[0, 1]), p(&[0, 0, 1])).unwrap();
        assert!(matches!(
            ray_limit_at_zero(&h),
            Err(ArithError::PoleAtZero { .. })
        ));
    }

    #[test]
    fn stored_reduced_and_monic() {
        // (2δ^2 - 2)/(4δ - 4) = (δ+1)/2
        let f = RayRationalFunction::new(p(&[-2, 0, 2]), p(&[-4, 4])).unwrap();
        assert_eq!(f.denom(), &p(&[1]));
        assert_eq!(f.numer(), &P::new(vec![rat(1, 2), rat(1, 2)]));
        assert_eq!(
            RayRationalFunction::new(p(&[1]), P::zero()),
            Err(ArithError::DivisionByZero)
        );
    }

    #[test]
    fn field_ops() {
        let x = RayRationalFunction::var();
        let one = RayRationalFunction::one();
        let f = (x.clone() + one.clone()).inverse().unwrap();
        let g = f.clone() * (x.clone() + one.clone());
        assert_eq!(g, one);
        assert_eq!(f.eval(&rat_int(1)), Ok(rat(1, 2)));
        assert_eq!(x.powi(-2).unwrap().eval(&rat_int(2)), Ok(rat(1, 4)));
    }
}
