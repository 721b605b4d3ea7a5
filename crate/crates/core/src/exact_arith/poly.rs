use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{ArithError, Field, Var};

/// Dense univariate polynomial; `coeffs[i]` multiplies `V^i`.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and `degree()` is well defined.
#[derive(Clone, PartialEq, Debug)]
pub struct UniPolynomial<F, V> {
    coeffs: Vec<F>,
    var: PhantomData<V>,
}

impl<F: Field, V: Var> UniPolynomial<F, V> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self {
            coeffs,
            var: PhantomData,
        }
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: F, degree: usize) -> Self {
        let mut coeffs = vec![F::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        Self::monomial(F::one(), 1)
    }

    /// `c0 + c1·V`.
    pub fn linear(c0: F, c1: F) -> Self {
        Self::new(vec![c0, c1])
    }

    pub fn var_name() -> &'static str {
        V::NAME
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    /// Index of the lowest nonvanishing coefficient (the order at zero).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn map<G: Field, W: Var>(&self, f: impl Fn(&F) -> G) -> UniPolynomial<G, W> {
        UniPolynomial::new(self.coeffs.iter().map(f).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(F::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Euclidean division, `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), ArithError> {
        let lead_inv = divisor
            .leading()
            .and_then(Field::inverse)
            .ok_or(ArithError::DivisionByZero)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() * lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - c.clone() * d.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Scales to a monic polynomial; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading().and_then(Field::inverse) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Divides out `V^k` where `k` is the valuation.
    pub fn strip_valuation(&self) -> (usize, Self) {
        match self.valuation() {
            Some(v) => (v, Self::new(self.coeffs[v..].to_vec())),
            None => (0, self.clone()),
        }
    }
}

impl<F: Field, V: Var> Add for &UniPolynomial<F, V> {
    type Output = UniPolynomial<F, V>;
    fn add(self, rhs: Self) -> Self::Output {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<F: Field, V: Var> Sub for &UniPolynomial<F, V> {
    type Output = UniPolynomial<F, V>;
    fn sub(self, rhs: Self) -> Self::Output {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<F: Field, V: Var> Mul for &UniPolynomial<F, V> {
    type Output = UniPolynomial<F, V>;
    fn mul(self, rhs: Self) -> Self::Output {
        if self.is_zero() || rhs.is_zero() {
            return UniPolynomial::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPolynomial::new(out)
    }
}

impl<F: Field, V: Var> Neg for &UniPolynomial<F, V> {
    type Output = UniPolynomial<F, V>;
    fn neg(self) -> Self::Output {
        UniPolynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl<F: Field, V: Var> $tr for UniPolynomial<F, V> {
            type Output = UniPolynomial<F, V>;
            fn $m(self, rhs: Self) -> Self::Output {
                (&self).$m(&rhs)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl<F: Field, V: Var> Neg for UniPolynomial<F, V> {
    type Output = UniPolynomial<F, V>;
    fn neg(self) -> Self::Output {
        -&self
    }
}

impl<F: Field, V: Var> Zero for UniPolynomial<F, V> {
    fn zero() -> Self {
        UniPolynomial::new(Vec::new())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<F: Field, V: Var> One for UniPolynomial<F, V> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<F: Field + fmt::Display, V: Var> fmt::Display for UniPolynomial<F, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c}){}", V::NAME)?,
                _ => write!(f, "({c}){}^{i}", V::NAME)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{rat, rat_int, AVar, BigRational};

    type P = UniPolynomial<BigRational, AVar>;

    fn p(cs: &[i64]) -> P {
        P::new(cs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn horner_matches_bernoulli_factor() {
        // a^2 - a + 1/6 at a = 1
        let b2 = P::new(vec![rat(1, 6), rat_int(-1), rat_int(1)]);
        assert_eq!(b2.eval(&rat_int(1)), rat(1, 6));
        assert_eq!(P::zero().eval(&rat(7, 3)), rat_int(0));
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let q = p(&[1, 2, 0, 0]);
        assert_eq!(q.degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[-1, 0, 0, 1]);
        let b = p(&[-1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.div_rem(&P::zero()), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn gcd_is_monic() {
        let a = &p(&[-1, 1]) * &p(&[2, 3]);
        let b = &p(&[-1, 1]) * &p(&[5, 0, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn valuation_and_pow() {
        assert_eq!(p(&[0, 0, 3, 1]).valuation(), Some(2));
        assert_eq!(p(&[1, 1]).pow(3), p(&[1, 3, 3, 1]));
    }
}
