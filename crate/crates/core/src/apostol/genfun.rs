use crate::exact_arith::{
    factorial, series_divide, BigRational, Field, RationalFunction, TruncatedSeries, ZVar,
};

use super::{apostol_poly, ApostolError, Regime};

/// Largest order accepted by the generating-function checks.
pub const GF_ORDER_CAP: usize = 16;

/// Both expansions, given `a`, `z` in a field and `B_n(a;z)` in that field:
/// `x e^{ax}/(z e^x − 1) = Σ B_n x^n/n!` and
/// `x e^{−ax}/(1 − z e^{−x}) = Σ (−1)^n B_n x^n/n!`.
fn both_forms_hold<F: Field>(order: usize, a: &F, z: &F, b: impl Fn(usize) -> F) -> bool {
    let one = TruncatedSeries::constant(order, F::one());
    let expected: Vec<F> = (0..=order)
        .map(|n| {
            let inv = BigRational::from_integer(factorial(n as u64)).recip();
            b(n) * F::from_rational(&inv)
        })
        .collect();

    let num = TruncatedSeries::exp_scaled(order, a).shift_up();
    let den = TruncatedSeries::exp_scaled(order, &F::one())
        .scale(z)
        .sub(&one)
        .expect("equal orders");
    let Ok(lhs) = series_divide(&num, &den) else {
        return false;
    };
    if lhs.coeffs() != expected.as_slice() {
        return false;
    }

    let num = TruncatedSeries::exp_scaled(order, &-a.clone()).shift_up();
    let den = one
        .sub(&TruncatedSeries::exp_scaled(order, &F::from_int(-1)).scale(z))
        .expect("equal orders");
    let Ok(lhs) = series_divide(&num, &den) else {
        return false;
    };
    lhs.coeffs()
        .iter()
        .zip(&expected)
        .enumerate()
        .all(|(n, (got, want))| {
            if n % 2 == 0 {
                got == want
            } else {
                *got == -want.clone()
            }
        })
}

/// Exact check of both generating-function identities up to `order`
/// at rational `a` and `z ≠ 1`.
pub fn check_generating_function(
    order: usize,
    a: &BigRational,
    z: &BigRational,
) -> Result<bool, ApostolError> {
    if order > GF_ORDER_CAP {
        return Err(ApostolError::OrderAboveCap {
            order,
            cap: GF_ORDER_CAP,
        });
    }
    let one = BigRational::from_int(1);
    if *z == one {
        return Err(ApostolError::PoleAtZOne);
    }
    let polys: Vec<_> = (0..=order)
        .map(|n| apostol_poly(n, Regime::Generic))
        .collect();
    let b = |n: usize| {
        let v = polys[n]
            .eval_exact(&a.clone().into(), &z.clone().into())
            .expect("z is not 1");
        debug_assert!(v.is_real());
        v.re
    };
    Ok(both_forms_hold(order, a, z, b))
}

/// As [`check_generating_function`] but with `z` kept as an indeterminate,
/// so the identity is verified as one between rational functions of `z`.
pub fn check_generating_function_symbolic(
    order: usize,
    a: &BigRational,
) -> Result<bool, ApostolError> {
    if order > GF_ORDER_CAP {
        return Err(ApostolError::OrderAboveCap {
            order,
            cap: GF_ORDER_CAP,
        });
    }
    type Rf = RationalFunction<BigRational, ZVar>;
    let polys: Vec<Rf> = (0..=order)
        .map(|n| {
            apostol_poly(n, Regime::Generic)
                .at_a_symbolic_z(a)
                .expect("generic regime")
        })
        .collect();
    Ok(both_forms_hold(
        order,
        &Rf::from_rational(a),
        &Rf::var(),
        |n| polys[n].clone(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{rat, rat_int};

    #[test]
    fn rational_points() {
        assert_eq!(
            check_generating_function(8, &rat_int(1), &rat_int(2)),
            Ok(true)
        );
        assert_eq!(
            check_generating_function(8, &rat_int(0), &rat_int(-1)),
            Ok(true)
        );
        assert_eq!(
            check_generating_function(1, &rat(3, 7), &rat(-5, 2)),
            Ok(true)
        );
    }

    #[test]
    fn symbolic_z() {
        assert_eq!(check_generating_function_symbolic(6, &rat(1, 3)), Ok(true));
    }

    #[test]
    fn guards() {
        assert_eq!(
            check_generating_function(17, &rat_int(0), &rat_int(2)),
            Err(ApostolError::OrderAboveCap { order: 17, cap: 16 })
        );
        assert_eq!(
            check_generating_function(4, &rat_int(0), &rat_int(1)),
            Err(ApostolError::PoleAtZOne)
        );
    }
}
