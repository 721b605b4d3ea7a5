use num_bigint::BigInt;
use num_traits::One;

use crate::exact_arith::{factorial, BigRational};

use super::types::{BranchVector, Composition, EpsRatioMonomial, PointSpec};
use super::ExpansionError;

/// All compositions of `total` into `parts` non-negative parts, in
/// descending lexicographic order.
pub fn compositions(total: u32, parts: usize) -> Vec<Composition> {
    fn go(rest: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if slots == 1 {
            prefix.push(rest);
            out.push(Composition(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in (0..=rest).rev() {
            prefix.push(first);
            go(rest - first, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

/// The two exponents attached to position `j`:
/// `D = n(j+1,r) − l(j,r) − (r−j)` and `U = n(j+1,r) − l(j+1,r) − (r−j)`.
fn shifts(point: &PointSpec, n: &Composition, j: usize) -> (i64, i64) {
    let r = point.r();
    let tail = n.suffix(j + 1) as i64;
    let gap = (r - j) as i64;
    (
        tail - point.l_suffix(j) as i64 - gap,
        tail - point.l_suffix(j + 1) as i64 - gap,
    )
}

/// Branch vector whose index set contains `n`, or `None` for a gap
/// composition (one that lies in no index set).
pub fn classify(point: &PointSpec, n: &Composition) -> Option<BranchVector> {
    (1..point.r())
        .map(|j| {
            let (d, u) = shifts(point, n, j);
            if u <= 0 {
                Some(false)
            } else if d > 0 {
                Some(true)
            } else {
                None
            }
        })
        .collect::<Option<Vec<bool>>>()
        .map(BranchVector::new)
}

fn belongs(point: &PointSpec, d: &BranchVector, n: &Composition) -> bool {
    n.parts().len() == point.r()
        && n.total() == u64::from(point.total_degree())
        && d.len() + 1 == point.r()
        && (1..point.r()).all(|j| {
            let (dd, u) = shifts(point, n, j);
            if d.get(j) {
                dd > 0
            } else {
                u <= 0
            }
        })
}

/// Compositions admitted by the branch `d`, in descending lexicographic
/// order.
pub fn index_set(point: &PointSpec, d: &BranchVector) -> Vec<Composition> {
    compositions(point.total_degree(), point.r())
        .into_iter()
        .filter(|n| belongs(point, d, n))
        .collect()
}

fn fact(k: i64) -> BigInt {
    assert!(k >= 0, "factorial of negative argument {k}");
    factorial(k as u64)
}

/// Rational part and ε-ratio monomial of the coefficient `h` attached to
/// `n ∈ S^(d)`.
pub fn h_coefficient(
    point: &PointSpec,
    d: &BranchVector,
    n: &Composition,
) -> Result<(BigRational, EpsRatioMonomial), ExpansionError> {
    if !belongs(point, d, n) {
        return Err(ExpansionError::CompositionNotInSet {
            composition: n.to_string(),
            branch: d.to_string(),
        });
    }
    let r = point.r();
    let lr = point.l()[r - 1];
    let sign = |k: u32| {
        if k % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    };
    let mut num = sign(lr) * factorial(u64::from(lr));
    let mut den = BigInt::one();
    for j in 1..r {
        let (dd, u) = shifts(point, n, j);
        if d.get(j) {
            num *= fact(u - 1);
            den *= fact(dd - 1);
        } else {
            num *= sign(point.l()[j - 1]) * fact(-dd);
            den *= fact(-u);
        }
    }
    Ok((BigRational::new(num, den), EpsRatioMonomial::from_branch(d)))
}
