use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact_arith::{BigRational, RayRationalFunction, UniPolynomial};

/// `α + β·δ` with integer `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub constant: BigInt,
    pub slope: BigRational,
}

impl LinearForm {
    pub fn new(constant: BigInt, slope: BigRational) -> Self {
        Self { constant, slope }
    }

    /// `β·δ`.
    pub fn ray(slope: BigRational) -> Self {
        Self::new(BigInt::zero(), slope)
    }

    pub fn shifted(&self, k: i64) -> Self {
        Self::new(&self.constant + k, self.slope.clone())
    }

    fn poly(&self) -> UniPolynomial<BigRational, crate::exact_arith::Delta> {
        UniPolynomial::linear(
            BigRational::from_integer(self.constant.clone()),
            self.slope.clone(),
        )
    }

    pub fn eval(&self, delta: &BigRational) -> BigRational {
        BigRational::from_integer(self.constant.clone()) + &self.slope * delta
    }
}

/// Product of linear forms over a product of linear forms; the exact
/// carrier of Pochhammer symbols of arguments linear in `δ`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PochhammerRational {
    num: Vec<LinearForm>,
    den: Vec<LinearForm>,
}

impl PochhammerRational {
    pub fn one() -> Self {
        Self::default()
    }

    /// `(x)_m = x(x+1)⋯(x+m−1)` for `m > 0`, `1/((x−1)⋯(x−|m|))` for
    /// `m < 0`, and `1` for `m = 0`.
    pub fn symbol(x: &LinearForm, m: i64) -> Self {
        if m >= 0 {
            Self {
                num: (0..m).map(|k| x.shifted(k)).collect(),
                den: Vec::new(),
            }
        } else {
            Self {
                num: Vec::new(),
                den: (1..=-m).map(|k| x.shifted(-k)).collect(),
            }
        }
    }

    pub fn times(mut self, other: &Self) -> Self {
        self.num.extend(other.num.iter().cloned());
        self.den.extend(other.den.iter().cloned());
        self
    }

    pub fn recip(self) -> Self {
        Self {
            num: self.den,
            den: self.num,
        }
    }

    pub fn factors(&self) -> (&[LinearForm], &[LinearForm]) {
        (&self.num, &self.den)
    }

    /// Exact value at a rational `δ`; `None` if a denominator factor
    /// vanishes there.
    pub fn eval(&self, delta: &BigRational) -> Option<BigRational> {
        let num = self
            .num
            .iter()
            .fold(BigRational::one(), |acc, f| acc * f.eval(delta));
        let den = self
            .den
            .iter()
            .fold(BigRational::one(), |acc, f| acc * f.eval(delta));
        (!den.is_zero()).then(|| num / den)
    }

    pub fn to_ray_function(&self) -> RayRationalFunction {
        let prod = |fs: &[LinearForm]| {
            fs.iter()
                .fold(UniPolynomial::constant(BigRational::one()), |acc, f| {
                    &acc * &f.poly()
                })
        };
        RayRationalFunction::new(prod(&self.num), prod(&self.den))
            .expect("linear factors with nonzero slope never vanish identically")
    }
}
