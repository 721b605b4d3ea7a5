use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::apostol::{apostol_poly, resolve_regime_exact, resolve_regime_numeric, Regime};
use crate::exact_arith::{factorial, BigRational, ExactComplex, Field};
use crate::numeric::{Complex, Ctx};

use super::index::{classify, compositions, h_coefficient, index_set};
use super::types::{BranchVector, Composition, EpsRatioMonomial, PointSpec};
use super::ExpansionError;

/// `coefficient · Π_j B_{n_j}(a_j; z_j) · monomial`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExpansionTerm {
    pub coefficient: BigRational,
    pub composition: Composition,
    pub branch: BranchVector,
    pub monomial: EpsRatioMonomial,
}

impl ExpansionTerm {
    /// Degrees of the `B`-atoms, one per coordinate.
    pub fn atoms(&self) -> &[u32] {
        self.composition.parts()
    }
}

/// Leading-term expansion at a point, terms in descending lexicographic
/// order of their compositions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Expansion {
    point: PointSpec,
    terms: Vec<ExpansionTerm>,
}

impl Expansion {
    /// Sorts into canonical order; rejects duplicate compositions.
    pub fn from_terms(
        point: PointSpec,
        mut terms: Vec<ExpansionTerm>,
    ) -> Result<Self, ExpansionError> {
        terms.sort_by(|a, b| b.composition.cmp(&a.composition));
        if let Some(w) = terms
            .windows(2)
            .find(|w| w[0].composition == w[1].composition)
        {
            return Err(ExpansionError::Malformed(format!(
                "duplicate composition {}",
                w[0].composition
            )));
        }
        Ok(Self { point, terms })
    }

    pub fn point(&self) -> &PointSpec {
        &self.point
    }

    pub fn terms(&self) -> &[ExpansionTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms grouped by branch vector (read as a binary number), each
    /// group in canonical order.
    pub fn grouped(&self) -> Vec<&ExpansionTerm> {
        let mut v: Vec<&ExpansionTerm> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            a.branch
                .cmp(&b.branch)
                .then_with(|| b.composition.cmp(&a.composition))
        });
        v
    }

    /// Coefficient of every atom product once the monomials are evaluated
    /// at the direction `c` (so `ε = δ·c`).
    pub fn coefficients_at(
        &self,
        c: &[BigRational],
    ) -> Result<BTreeMap<Composition, BigRational>, ExpansionError> {
        let suffix = suffix_sums_exact(c, self.point.r())?;
        let mut out = BTreeMap::new();
        for t in &self.terms {
            let m = t.monomial.eval_with(
                BigRational::one(),
                |i| Ok::<_, ExpansionError>(suffix[i - 1].clone()),
                |x, y| x * y,
                |x, y| x / y,
            )?;
            let v = &t.coefficient * m;
            if !v.is_zero() {
                out.insert(t.composition.clone(), v);
            }
        }
        Ok(out)
    }
}

/// Expansion at `point`; branches are processed in parallel and merged in
/// canonical order.
pub fn expand(point: &PointSpec) -> Expansion {
    let r = point.r();
    let total = point.total_degree();
    let sign = if total % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let terms: Vec<ExpansionTerm> = BranchVector::all(r - 1)
        .into_par_iter()
        .flat_map_iter(|d| {
            index_set(point, &d)
                .into_iter()
                .map(|n| {
                    let (h, monomial) =
                        h_coefficient(point, &d, &n).expect("member of its own set");
                    let den = n
                        .parts()
                        .iter()
                        .fold(BigInt::one(), |acc, &k| acc * factorial(u64::from(k)));
                    ExpansionTerm {
                        coefficient: h * BigRational::new(sign.clone(), den),
                        composition: n,
                        branch: d.clone(),
                        monomial,
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    if log::log_enabled!(log::Level::Debug) {
        let gaps = compositions(total, r)
            .iter()
            .filter(|n| classify(point, n).is_none())
            .count();
        log::debug!(
            "{point}: {} terms, {gaps} gap compositions excluded",
            terms.len()
        );
    }
    Expansion::from_terms(point.clone(), terms).expect("index sets are disjoint")
}

/// Drops terms containing `B_0(a_j; z_j)` for coordinates in the generic
/// regime, where that atom vanishes identically.
pub fn specialize(e: &Expansion, regimes: &[Regime]) -> Result<Expansion, ExpansionError> {
    check_len("regimes", e.point.r(), regimes.len())?;
    let terms = e
        .terms
        .iter()
        .filter(|t| {
            t.atoms()
                .iter()
                .zip(regimes)
                .all(|(&n, reg)| n > 0 || *reg == Regime::ZEqualsOne)
        })
        .cloned()
        .collect();
    Ok(Expansion {
        point: e.point.clone(),
        terms,
    })
}

fn check_len(what: &'static str, expected: usize, got: usize) -> Result<(), ExpansionError> {
    if expected == got {
        Ok(())
    } else {
        Err(ExpansionError::LengthMismatch {
            what,
            expected,
            got,
        })
    }
}

fn suffix_sums_exact<T>(eps: &[T], r: usize) -> Result<Vec<T>, ExpansionError>
where
    T: Field,
{
    check_len("eps", r, eps.len())?;
    let mut out = vec![T::zero(); r];
    let mut acc = T::zero();
    for i in (0..r).rev() {
        acc = acc + eps[i].clone();
        if acc.is_zero() {
            return Err(ExpansionError::SuffixSumZero(i + 1));
        }
        out[i] = acc.clone();
    }
    Ok(out)
}

/// Parameters of a numeric evaluation, one entry per coordinate.
pub struct NumericParams<'a> {
    pub a: &'a [Complex],
    pub z: &'a [Complex],
    /// `None` lets `z` decide; `z = 1` then needs an explicit regime.
    pub regimes: &'a [Option<Regime>],
    pub eps: &'a [Complex],
}

/// Numeric value of the expansion; terms are summed in canonical order.
pub fn eval_expansion(
    e: &Expansion,
    p: &NumericParams<'_>,
    ctx: &Ctx,
) -> Result<Complex, ExpansionError> {
    let r = e.point.r();
    check_len("a", r, p.a.len())?;
    check_len("z", r, p.z.len())?;
    check_len("regimes", r, p.regimes.len())?;
    check_len("eps", r, p.eps.len())?;
    let mut regimes = Vec::with_capacity(r);
    for j in 0..r {
        if p.z[j].is_real() && p.z[j].re > ctx.int(1) {
            return Err(ExpansionError::ZOnCut(j + 1));
        }
        regimes.push(resolve_regime_numeric(&p.z[j], p.regimes[j], ctx)?);
    }
    let mut suffix = vec![Complex::zero(ctx); r];
    let mut acc = Complex::zero(ctx);
    for i in (0..r).rev() {
        acc = acc.add(&p.eps[i], ctx);
        if acc.is_zero() {
            return Err(ExpansionError::SuffixSumZero(i + 1));
        }
        suffix[i] = acc.clone();
    }
    let mut atoms: HashMap<(usize, u32), Complex> = HashMap::new();
    let mut total = Complex::zero(ctx);
    for t in &e.terms {
        let mut v = ctx.real(ctx.from_rational(&t.coefficient));
        for (j, &n) in t.atoms().iter().enumerate() {
            let b = atoms.entry((j, n)).or_insert_with(|| {
                apostol_poly(n as usize, regimes[j]).eval_numeric(&p.a[j], &p.z[j], ctx)
            });
            v = v.mul(b, ctx);
        }
        let m = t.monomial.eval_with(
            Complex::one(ctx),
            |i| Ok::<_, ExpansionError>(suffix[i - 1].clone()),
            |x, y| x.mul(y, ctx),
            |x, y| x.div(y, ctx),
        )?;
        total = total.add(&v.mul(&m, ctx), ctx);
    }
    Ok(total)
}

/// Exact parameters over `ℚ(i)`.
pub struct ExactParams<'a> {
    pub a: &'a [ExactComplex],
    pub z: &'a [ExactComplex],
    pub regimes: &'a [Option<Regime>],
    pub eps: &'a [ExactComplex],
}

/// Exact value of the expansion.
pub fn eval_expansion_exact(
    e: &Expansion,
    p: &ExactParams<'_>,
) -> Result<ExactComplex, ExpansionError> {
    let r = e.point.r();
    check_len("a", r, p.a.len())?;
    check_len("z", r, p.z.len())?;
    check_len("regimes", r, p.regimes.len())?;
    let regimes = (0..r)
        .map(|j| {
            if p.z[j].on_lerch_cut() {
                return Err(ExpansionError::ZOnCut(j + 1));
            }
            Ok(resolve_regime_exact(&p.z[j], p.regimes[j])?)
        })
        .collect::<Result<Vec<_>, ExpansionError>>()?;
    let suffix = suffix_sums_exact(p.eps, r)?;
    let mut atoms: HashMap<(usize, u32), ExactComplex> = HashMap::new();
    let mut total = ExactComplex::zero();
    for t in &e.terms {
        let mut v = ExactComplex::real(t.coefficient.clone());
        for (j, &n) in t.atoms().iter().enumerate() {
            let b = match atoms.get(&(j, n)) {
                Some(b) => b.clone(),
                None => {
                    let b = apostol_poly(n as usize, regimes[j]).eval_exact(&p.a[j], &p.z[j])?;
                    atoms.insert((j, n), b.clone());
                    b
                }
            };
            v = v * b;
        }
        let m = t.monomial.eval_with(
            ExactComplex::one(),
            |i| Ok::<_, ExpansionError>(suffix[i - 1].clone()),
            |x, y| x.clone() * y.clone(),
            |x, y| x.checked_div(y).expect("suffix sums are nonzero"),
        )?;
        total = total + v * m;
    }
    Ok(total)
}
