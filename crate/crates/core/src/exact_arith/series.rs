use super::{factorial, ArithError, BigRational, Field};

/// `c_0 + c_1 x + … + c_N x^N + O(x^{N+1})`.
///
/// Binary operations require equal truncation orders; there is no silent
/// re-truncation.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<F> {
    coeffs: Vec<F>,
}

impl<F: Field> TruncatedSeries<F> {
    /// `coeffs.len()` must equal `order + 1`.
    pub fn new(order: usize, coeffs: Vec<F>) -> Result<Self, ArithError> {
        if coeffs.len() != order + 1 {
            return Err(ArithError::OrderMismatch {
                left: order,
                right: coeffs.len().saturating_sub(1),
            });
        }
        Ok(Self { coeffs })
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> F) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn constant(order: usize, c: F) -> Self {
        Self::from_fn(order, |k| if k == 0 { c.clone() } else { F::zero() })
    }

    /// Taylor series of `exp(q·x)`.
    pub fn exp_scaled(order: usize, q: &F) -> Self {
        let mut power = F::one();
        Self::from_fn(order, |k| {
            if k > 0 {
                power = power.clone() * q.clone();
            }
            let inv_fact = BigRational::from_integer(factorial(k as u64)).recip();
            power.clone() * F::from_rational(&inv_fact)
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &F {
        &self.coeffs[k]
    }

    /// `x·self`, keeping the truncation order.
    pub fn shift_up(&self) -> Self {
        let n = self.coeffs.len();
        Self::from_fn(self.order(), |k| {
            if k == 0 || k > n {
                F::zero()
            } else {
                self.coeffs[k - 1].clone()
            }
        })
    }

    pub fn scale(&self, c: &F) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    fn check_order(&self, other: &Self) -> Result<(), ArithError> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(ArithError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.add(&other.scale(&F::from_int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_order(other)?;
        Ok(Self::from_fn(self.order(), |k| {
            (0..=k).fold(F::zero(), |acc, i| {
                let (a, b) = (&self.coeffs[i], &other.coeffs[k - i]);
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc + a.clone() * b.clone()
                }
            })
        }))
    }
}

/// `num / den` as truncated series; needs `den(0) ≠ 0`.
pub fn series_divide<F: Field>(
    num: &TruncatedSeries<F>,
    den: &TruncatedSeries<F>,
) -> Result<TruncatedSeries<F>, ArithError> {
    num.check_order(den)?;
    let inv0 = den.coeffs[0]
        .inverse()
        .ok_or(ArithError::ZeroConstantTerm)?;
    let mut q: Vec<F> = Vec::with_capacity(num.coeffs.len());
    for k in 0..num.coeffs.len() {
        let mut acc = num.coeffs[k].clone();
        for i in 1..=k {
            if !den.coeffs[i].is_zero() {
                acc = acc - den.coeffs[i].clone() * q[k - i].clone();
            }
        }
        q.push(acc * inv0.clone());
    }
    Ok(TruncatedSeries { coeffs: q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{rat, rat_int};

    type S = TruncatedSeries<BigRational>;

    fn s(cs: &[i64]) -> S {
        S::new(cs.len() - 1, cs.iter().map(|&c| rat_int(c)).collect()).unwrap()
    }

    #[test]
    fn identity_divisor() {
        let q = series_divide(&s(&[1, 1, 0]), &s(&[1, 0, 0])).unwrap();
        assert_eq!(q, s(&[1, 1, 0]));
    }

    #[test]
    fn geometric_series() {
        let q = series_divide(&s(&[1, 0, 0, 0]), &s(&[1, -1, 0, 0])).unwrap();
        assert_eq!(q, s(&[1, 1, 1, 1]));
    }

    #[test]
    fn bernoulli_generating_series() {
        // x/(e^x - 1) to order 4, computed by long division of
        // (1, 0, 0, 0, 0) by (e^x - 1)/x = 1 + x/2 + x^2/6 + x^3/24 + x^4/120.
        let order = 4;
        let e = S::exp_scaled(order + 1, &rat_int(1));
        let den = S::from_fn(order, |k| e.coeff(k + 1).clone());
        let q = series_divide(&S::constant(order, rat_int(1)), &den).unwrap();
        let expect = [rat_int(1), rat(-1, 2), rat(1, 12), rat_int(0), rat(-1, 720)];
        assert_eq!(q.coeffs(), &expect[..]);
    }

    #[test]
    fn errors() {
        assert_eq!(
            series_divide(&s(&[1, 0]), &s(&[0, 1])),
            Err(ArithError::ZeroConstantTerm)
        );
        assert!(matches!(
            s(&[1, 0]).mul(&s(&[1, 0, 0])),
            Err(ArithError::OrderMismatch { .. })
        ));
        assert!(S::new(2, vec![rat_int(1)]).is_err());
    }
}
