use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::apostol::{apostol_poly, Regime};
use crate::exact_arith::{factorial, ray_limit_at_zero, BigRational};
use crate::expansion::{compositions, Composition, PointSpec};
use crate::numeric::{Complex, Ctx};

use super::gamma::gamma_numeric;
use super::pochhammer::{LinearForm, PochhammerRational};
use super::{check_len, DirectionVector, OracleError};

/// `Π_j (ε(j+1,r))_{U_j} / (ε(j,r))_{D_j} · 1/(ε_r)_{−l_r}` on the ray
/// `ε = δ·c`, with `U_j = n(j+1,r) − l(j+1,r) − (r−j)` and
/// `D_j = n(j+1,r) − l(j,r) − (r−j)`.
fn ray_factor(point: &PointSpec, dir: &DirectionVector, n: &Composition) -> PochhammerRational {
    let r = point.r();
    let eps = |i: usize| LinearForm::ray(dir.suffix(i));
    let mut f = PochhammerRational::symbol(&eps(r), -i64::from(point.l()[r - 1])).recip();
    for j in 1..r {
        let tail = n.suffix(j + 1) as i64;
        let gap = (r - j) as i64;
        let up = tail - point.l_suffix(j + 1) as i64 - gap;
        let down = tail - point.l_suffix(j) as i64 - gap;
        f = f
            .times(&PochhammerRational::symbol(&eps(j + 1), up))
            .times(&PochhammerRational::symbol(&eps(j), down).recip());
    }
    f
}

fn sign_over_factorials(k: u64, n: &Composition) -> BigRational {
    let den = n
        .parts()
        .iter()
        .fold(BigInt::one(), |acc, &m| acc * factorial(u64::from(m)));
    let sign = if k % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    BigRational::new(sign, den)
}

/// Exact limit along the ray of the top stratum (`k = N`) of the Gamma-ratio
/// closed form, as coefficients of the atom products `Π_j B_{n_j}(a_j; z_j)`.
/// The scalar `c^{ε(1,r)}/Γ(1+ε(1,r))` is replaced by its limit 1.
/// Compositions with zero limit are omitted.
pub fn y1_leading_limit(
    point: &PointSpec,
    dir: &DirectionVector,
) -> Result<BTreeMap<Composition, BigRational>, OracleError> {
    check_len("direction", point.r(), dir.len())?;
    let total = point.total_degree();
    let mut out = BTreeMap::new();
    for n in compositions(total, point.r()) {
        let limit = ray_limit_at_zero(&ray_factor(point, dir, &n).to_ray_function())?;
        if limit.is_zero() {
            continue;
        }
        let v = limit * sign_over_factorials(u64::from(total), &n);
        out.insert(n, v);
    }
    Ok(out)
}

/// The full `k ≤ N` Gamma-ratio sum at a positive rational `δ` with split
/// point `c`, evaluated numerically for given `(a, z)`. Its `δ → 0` limit
/// does not depend on `c`.
#[allow(clippy::too_many_arguments)]
pub fn y1_numeric_at(
    point: &PointSpec,
    dir: &DirectionVector,
    delta: &BigRational,
    split: &BigRational,
    a: &[Complex],
    z: &[Complex],
    regimes: &[Regime],
    ctx: &Ctx,
) -> Result<Complex, OracleError> {
    let r = point.r();
    check_len("direction", r, dir.len())?;
    check_len("a", r, a.len())?;
    check_len("z", r, z.len())?;
    check_len("regimes", r, regimes.len())?;
    let total = point.total_degree();
    let e1 = ctx.from_rational(&(dir.suffix(1) * delta));
    let inv_gamma = gamma_numeric(&ctx.real(e1.clone()), ctx)?.recip(ctx);
    let ln_c = ctx.ln(&ctx.from_rational(split));
    let mut atoms: BTreeMap<(usize, u32), Complex> = BTreeMap::new();
    let mut acc = Complex::zero(ctx);
    for k in 0..=total {
        // c^{k−N+E} / (k−N+E) / Γ(E)
        let expo = ctx.add(&ctx.int(i64::from(k) - i64::from(total)), &e1);
        let scalar = ctx.div(&ctx.exp(&ctx.mul(&expo, &ln_c)), &expo);
        let scalar = inv_gamma.scale(&scalar, ctx);
        for n in compositions(k, r) {
            let ratio = ray_factor(point, dir, &n)
                .eval(delta)
                .ok_or_else(|| OracleError::InvalidDirection(format!("δ = {delta} hits a pole")))?;
            let mut term =
                ctx.real(ctx.from_rational(&(ratio * sign_over_factorials(u64::from(k), &n))));
            for (j, &m) in n.parts().iter().enumerate() {
                let b = atoms.entry((j, m)).or_insert_with(|| {
                    apostol_poly(m as usize, regimes[j]).eval_numeric(&a[j], &z[j], ctx)
                });
                term = term.mul(b, ctx);
            }
            acc = acc.add(&term.mul(&scalar, ctx), ctx);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;
    use crate::expansion::expand;

    fn dir(c: &[(i64, i64)]) -> DirectionVector {
        DirectionVector::new(c.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    fn matches_expansion(l: &[u32], c: &[(i64, i64)]) {
        let p = PointSpec::new(l.to_vec()).unwrap();
        let d = dir(c);
        let exact = y1_leading_limit(&p, &d).unwrap();
        assert_eq!(
            exact,
            expand(&p).coefficients_at(d.components()).unwrap(),
            "l={l:?}"
        );
    }

    #[test]
    fn hand_values() {
        let comp = |n: &[u32]| Composition(n.to_vec());
        let p = PointSpec::new(vec![0, 0]).unwrap();
        let m = y1_leading_limit(&p, &dir(&[(1, 1), (1, 1)])).unwrap();
        let want: BTreeMap<_, _> = [
            (comp(&[1, 1]), rat(1, 1)),
            (comp(&[2, 0]), rat(1, 2)),
            (comp(&[0, 2]), rat(1, 4)),
        ]
        .into_iter()
        .collect();
        assert_eq!(m, want);
        let p = PointSpec::new(vec![1, 0]).unwrap();
        let m = y1_leading_limit(&p, &dir(&[(1, 1), (2, 1)])).unwrap();
        assert_eq!(m[&comp(&[2, 1])], rat(1, 2));
        assert_eq!(m[&comp(&[3, 0])], rat(1, 3));
        assert_eq!(m[&comp(&[0, 3])], rat(-1, 9));
    }

    #[test]
    fn depth_two_points() {
        matches_expansion(&[0, 0], &[(1, 1), (1, 1)]);
        matches_expansion(&[1, 0], &[(1, 1), (2, 1)]);
        matches_expansion(&[0, 2], &[(3, 2), (1, 5)]);
        matches_expansion(&[2, 1], &[(1, 3), (4, 1)]);
    }

    #[test]
    fn numeric_variant_tends_to_limit() {
        let p = PointSpec::new(vec![0, 0]).unwrap();
        let d = dir(&[(1, 1), (2, 1)]);
        let ctx = Ctx::new(40);
        let a = [
            ctx.real(ctx.from_rational(&rat(1, 3))),
            ctx.real(ctx.int(1)),
        ];
        let z = [
            ctx.real(ctx.from_rational(&rat(1, 2))),
            ctx.real(ctx.from_rational(&rat(-1, 3))),
        ];
        let regimes = [Regime::Generic, Regime::Generic];
        let expected = expand(&p)
            .coefficients_at(d.components())
            .unwrap()
            .iter()
            .fold(Complex::zero(&ctx), |acc, (n, q)| {
                let mut t = ctx.real(ctx.from_rational(q));
                for (j, &m) in n.parts().iter().enumerate() {
                    t = t.mul(
                        &apostol_poly(m as usize, Regime::Generic).eval_numeric(&a[j], &z[j], &ctx),
                        &ctx,
                    );
                }
                acc.add(&t, &ctx)
            });
        let mut prev = f64::INFINITY;
        for k in [3, 5, 7] {
            let delta = rat(1, 10i64.pow(k));
            let errs: Vec<f64> = [rat(1, 4), rat(1, 2)]
                .iter()
                .map(|c| {
                    let v = y1_numeric_at(&p, &d, &delta, c, &a, &z, &regimes, &ctx).unwrap();
                    v.sub(&expected, &ctx).abs_f64()
                })
                .collect();
            assert!(errs.iter().all(|e| *e < prev), "{errs:?}");
            prev = errs.iter().cloned().fold(0.0, f64::max);
        }
        assert!(prev < 1e-5);
    }

    #[test]
    fn agrees_with_expansion_depth_three() {
        let p = PointSpec::new(vec![0, 0, 0]).unwrap();
        let d = dir(&[(1, 1), (1, 1), (1, 1)]);
        let exact = y1_leading_limit(&p, &d).unwrap();
        assert_eq!(exact, expand(&p).coefficients_at(d.components()).unwrap());
    }
}
