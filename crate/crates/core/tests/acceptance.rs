//! One pass/fail line per acceptance criterion, at pinned tolerances.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use hlzeta::apostol::{apostol_eval_exact, apostol_poly, check_generating_function, Regime};
use hlzeta::exact_arith::{factorial, rat, BigRational, ExactComplex};
use hlzeta::expansion::{
    compositions, eval_expansion_exact, expand, h_coefficient, index_set, verify_fixtures,
    BranchVector, EpsRatioMonomial, ExactParams, PointSpec,
};
use hlzeta::numeric::{Complex, Ctx};
use hlzeta::oracle::{
    direct_series, integral_representation_eval, limit_probe, y1_leading_limit, DirectionVector,
    ProbeSettings, QuadratureConfig, SeriesEvalConfig,
};

type Instance = (&'static [u32], [(i64, i64); 2]);
type ParameterSet = (&'static str, Vec<Complex>, Vec<Complex>, Vec<Complex>);
type Criterion = (&'static str, fn() -> Verdict, Duration);

struct Verdict {
    passed: bool,
    detail: String,
}

impl Verdict {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self {
            passed,
            detail: detail.into(),
        }
    }
}

fn random_rational(rng: &mut StdRng, lo: i64, hi: i64, den: i64) -> BigRational {
    rat(rng.gen_range(lo * den..=hi * den), den)
}

fn cx(ctx: &Ctx, re: BigRational, im: BigRational) -> Complex {
    ctx.complex(&ExactComplex { re, im })
}

fn reals(ctx: &Ctx, xs: &[(i64, i64)]) -> Vec<Complex> {
    xs.iter()
        .map(|&(n, d)| ctx.real(ctx.from_rational(&rat(n, d))))
        .collect()
}

fn fixture_suite() -> Verdict {
    let outcomes = verify_fixtures(None, false);
    let required = [
        "r2-l00", "r2-l10", "r2-l01", "r2-l11", "r3-l000", "r3-l100", "r3-l010", "r3-l001",
        "r4-l0000", "ex-gg", "ex-1g", "ex-g1", "ex-11",
    ];
    let names: BTreeSet<_> = outcomes.iter().map(|o| o.name).collect();
    let missing: Vec<_> = required.iter().filter(|n| !names.contains(*n)).collect();
    let failed: Vec<_> = outcomes
        .iter()
        .filter(|o| !o.passed())
        .map(|o| o.name)
        .collect();
    Verdict::new(
        missing.is_empty() && failed.is_empty(),
        format!(
            "{}/{} references exact; missing {missing:?}; failed {failed:?}",
            outcomes.len() - failed.len(),
            outcomes.len()
        ),
    )
}

fn generating_function() -> Verdict {
    let mut rng = StdRng::seed_from_u64(0x6f);
    let mut ok = 0;
    let mut bad = Vec::new();
    let mut tried = 0;
    while tried < 60 {
        let a = random_rational(&mut rng, -3, 3, 7);
        let z = random_rational(&mut rng, -4, 4, 9);
        if z == BigRational::one() {
            continue;
        }
        tried += 1;
        match check_generating_function(12, &a, &z) {
            Ok(true) => ok += 1,
            other => bad.push(format!("a={a} z={z}: {other:?}")),
        }
    }
    Verdict::new(
        bad.is_empty() && ok >= 50,
        format!("{ok}/{tried} pairs exact to order 12, both forms {bad:?}"),
    )
}

fn apostol_closed_form() -> Verdict {
    let ctx = Ctx::new(60);
    let cfg = SeriesEvalConfig::with_precision(50);
    let mut rng = StdRng::seed_from_u64(0xa905);
    let mut samples = vec![(ExactComplex::real(rat(1, 1)), ExactComplex::real(rat(1, 2)))];
    while samples.len() < 10 {
        let a = ExactComplex {
            re: random_rational(&mut rng, 0, 3, 8) + rat(1, 8),
            im: if samples.len() % 3 == 0 {
                random_rational(&mut rng, -1, 1, 4)
            } else {
                BigRational::zero()
            },
        };
        let z = ExactComplex {
            re: random_rational(&mut rng, -1, 1, 8) / BigInt::from(2),
            im: if samples.len() % 2 == 0 {
                random_rational(&mut rng, -1, 1, 8) / BigInt::from(2)
            } else {
                BigRational::zero()
            },
        };
        samples.push((a, z));
    }
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for (a, z) in &samples {
        for n in 0..=6u32 {
            let b = apostol_eval_exact(n as usize + 1, a, z, None).expect("z ≠ 1");
            let expected = -(b * ExactComplex::real(rat(1, i64::from(n) + 1)));
            let s = [Complex::from_int(&ctx, -i64::from(n))];
            let got = match direct_series(&s, &[ctx.complex(a)], &[ctx.complex(z)], &cfg) {
                Ok(v) => v.value,
                Err(e) => {
                    failures.push(format!("n={n} a={a} z={z}: {e}"));
                    continue;
                }
            };
            worst = worst.max(got.sub(&ctx.complex(&expected), &ctx).abs_f64());
        }
    }
    let twelve = {
        let s = [Complex::from_int(&ctx, -2)];
        let v = direct_series(&s, &reals(&ctx, &[(1, 1)]), &reals(&ctx, &[(1, 2)]), &cfg).unwrap();
        v.value.sub(&Complex::from_int(&ctx, 12), &ctx).abs_f64()
    };
    Verdict::new(
        failures.is_empty() && worst <= 1e-30 && twelve <= 1e-30,
        format!(
            "70 values, max error {worst:.2e}; ζ(-2;1;1/2) off 12 by {twelve:.2e} {failures:?}"
        ),
    )
}

fn end_to_end_limit() -> Verdict {
    let ctx = Ctx::new(50);
    let instances: [Instance; 3] = [
        (&[0, 0], [(1, 2), (1, 3)]),
        (&[1, 0], [(1, 2), (1, 2)]),
        (&[1, 1], [(1, 2), (1, 2)]),
    ];
    let dirs = [[1, 1], [1, 3]];
    let mut lines = Vec::new();
    let mut all = true;
    for (l, z) in instances {
        let point = PointSpec::new(l.to_vec()).unwrap();
        let a = reals(&ctx, &[(1, 1), (1, 1)]);
        let zc = reals(&ctx, &z);
        for c in dirs {
            let dir = DirectionVector::new(c.iter().map(|&x| rat(x, 1)).collect()).unwrap();
            match limit_probe(&point, &a, &zc, &dir, &ProbeSettings::default()) {
                Ok(rep) => {
                    all &= rep.passed;
                    lines.push(format!(
                        "l={l:?} c={c:?}: order {:.3}, limit off {:.1e}",
                        rep.empirical_order.unwrap_or(f64::INFINITY),
                        rep.limit_error
                    ));
                }
                Err(e) => {
                    all = false;
                    lines.push(format!("l={l:?} c={c:?}: {e}"));
                }
            }
        }
    }
    // first instance: the constant term is exactly 3
    let point = PointSpec::new(vec![0, 0]).unwrap();
    let one = ExactComplex::real(rat(1, 1));
    let a = [one.clone(), one.clone()];
    let z = [ExactComplex::real(rat(1, 2)), ExactComplex::real(rat(1, 3))];
    let eps = [one.clone(), ExactComplex::real(rat(3, 1))];
    let v = eval_expansion_exact(
        &expand(&point),
        &ExactParams {
            a: &a,
            z: &z,
            regimes: &[None, None],
            eps: &eps,
        },
    )
    .unwrap();
    let three = v == ExactComplex::real(rat(3, 1));
    Verdict::new(
        all && three,
        format!("constant term {v}; {}", lines.join("; ")),
    )
}

fn oracle_equivalence() -> Verdict {
    let mut rng = StdRng::seed_from_u64(0x51);
    let mut points = Vec::new();
    for r in 2..=3usize {
        for code in 0..3usize.pow(r as u32) {
            let l: Vec<u32> = (0..r)
                .map(|j| ((code / 3usize.pow(j as u32)) % 3) as u32)
                .collect();
            points.push(l);
        }
    }
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for l in &points {
        let point = PointSpec::new(l.clone()).unwrap();
        let expansion = expand(&point);
        for _ in 0..3 {
            let c: Vec<BigRational> = (0..l.len())
                .map(|_| rat(rng.gen_range(1..=12), rng.gen_range(1..=12)))
                .collect();
            let dir = DirectionVector::new(c.clone()).unwrap();
            let oracle = y1_leading_limit(&point, &dir).unwrap();
            let formula = expansion.coefficients_at(&c).unwrap();
            checked += 1;
            if oracle != formula {
                mismatches.push(format!("l={l:?} c={c:?}"));
            }
        }
    }
    Verdict::new(
        mismatches.is_empty() && checked == 108,
        format!(
            "{}/{checked} (point, direction) pairs identical {mismatches:?}",
            checked - mismatches.len()
        ),
    )
}

fn bernoulli_consistency() -> Verdict {
    // classical values, B_1 = −1/2
    let table: BTreeMap<usize, (i64, i64)> = [
        (0, (1, 1)),
        (1, (-1, 2)),
        (2, (1, 6)),
        (4, (-1, 30)),
        (6, (1, 42)),
        (8, (-1, 30)),
        (10, (5, 66)),
        (12, (-691, 2730)),
        (14, (7, 6)),
        (16, (-3617, 510)),
        (18, (43867, 798)),
        (20, (-174611, 330)),
    ]
    .into_iter()
    .collect();
    let one = ExactComplex::real(rat(1, 1));
    let mut bad = Vec::new();
    for n in 0..=20usize {
        let v = apostol_poly(n, Regime::ZEqualsOne)
            .eval_exact(&one, &one)
            .unwrap();
        let signed = if n % 2 == 0 { v } else { -v };
        let want = table
            .get(&n)
            .map_or(BigRational::zero(), |&(p, q)| rat(p, q));
        if signed != ExactComplex::real(want.clone()) {
            bad.push(format!("n={n}: {signed} vs {want}"));
        }
    }
    Verdict::new(bad.is_empty(), format!("21 values checked {bad:?}"))
}

fn quadrature_cross_check() -> Verdict {
    let ctx = Ctx::new(30);
    let quad_cfg = QuadratureConfig {
        precision: 20,
        tolerance: 1e-11,
        ..QuadratureConfig::default()
    };
    let q = |re: i64, im: i64, den: i64| cx(&ctx, rat(re, den), rat(im, den));
    let sets: Vec<ParameterSet> = vec![
        (
            "s=2 a=1 z=1/2",
            vec![q(2, 0, 1)],
            vec![q(1, 0, 1)],
            vec![q(1, 0, 2)],
        ),
        (
            "s=(2,2) z=(1/2,1/2)",
            vec![q(2, 0, 1), q(2, 0, 1)],
            vec![q(1, 0, 1), q(1, 0, 1)],
            vec![q(1, 0, 2), q(1, 0, 2)],
        ),
        (
            "s=(3,2) z=(-1,-1)",
            vec![q(3, 0, 1), q(2, 0, 1)],
            vec![q(1, 0, 1), q(1, 0, 1)],
            vec![q(-1, 0, 1), q(-1, 0, 1)],
        ),
        (
            "s=(2,2) z=(1,1)",
            vec![q(2, 0, 1), q(2, 0, 1)],
            vec![q(1, 0, 1), q(1, 0, 1)],
            vec![q(1, 0, 1), q(1, 0, 1)],
        ),
        (
            "s=(2+i/2,3) a=(1/2,3/4) z=(i/2,-1/3)",
            vec![q(4, 1, 2), q(3, 0, 1)],
            vec![q(1, 0, 2), q(3, 0, 4)],
            vec![q(0, 1, 2), q(-1, 0, 3)],
        ),
    ];
    let mut lines = Vec::new();
    let mut all = true;
    let mut double_zeta = None;
    for (i, (name, s, a, z)) in sets.iter().enumerate() {
        let quad = integral_representation_eval(s, a, z, &quad_cfg);
        if i == 3 {
            double_zeta = quad.as_ref().ok().map(|v| v.value.clone());
        }
        let series = direct_series(s, a, z, &SeriesEvalConfig::with_precision(30));
        match (quad, series) {
            (Ok(qv), Ok(sv)) => {
                let gap = qv.value.sub(&sv.value, &ctx).abs_f64();
                all &= gap <= 1e-10;
                lines.push(format!("{name}: {gap:.1e}"));
            }
            (qv, sv) => {
                all = false;
                lines.push(format!("{name}: {:?} / {:?}", qv.err(), sv.err()));
            }
        }
    }
    // the z = 1 set is the double zeta value π⁴/120
    let pi = ctx.pi();
    let pi4 = ctx.mul(&ctx.mul(&pi, &pi), &ctx.mul(&pi, &pi));
    let exact = ctx.real(ctx.div(&pi4, &ctx.int(120)));
    let known = double_zeta
        .map(|v| v.sub(&exact, &ctx).abs_f64())
        .unwrap_or(f64::INFINITY);
    all &= known <= 1e-10;
    Verdict::new(
        all,
        format!("{}; quadrature vs π⁴/120 {known:.1e}", lines.join("; ")),
    )
}

/// Independent transcription of the index conditions.
fn branches_containing(l: &[u32], n: &[u32]) -> Vec<Vec<bool>> {
    let r = l.len();
    let suffix = |v: &[u32], i: usize| -> i64 { v[i - 1..].iter().map(|&x| i64::from(x)).sum() };
    let mut found = Vec::new();
    for mask in 0..(1usize << (r - 1)) {
        let d: Vec<bool> = (0..r - 1).map(|k| mask >> (r - 2 - k) & 1 == 1).collect();
        let ok = (1..r).all(|j| {
            let tail = suffix(n, j + 1) - (r - j) as i64;
            let lower = tail - suffix(l, j);
            let upper = tail - suffix(l, j + 1);
            if d[j - 1] {
                lower > 0
            } else {
                upper <= 0
            }
        });
        if ok {
            found.push(d);
        }
    }
    found
}

fn independent_coefficient(l: &[u32], n: &[u32], d: &[bool]) -> BigRational {
    let r = l.len();
    let suffix = |v: &[u32], i: usize| -> i64 { v[i - 1..].iter().map(|&x| i64::from(x)).sum() };
    let fact =
        |k: i64| BigRational::from_integer(factorial(u64::try_from(k).expect("non-negative")));
    let sign = |k: i64| {
        if k % 2 == 0 {
            BigRational::one()
        } else {
            -BigRational::one()
        }
    };
    let total: i64 = n.iter().map(|&x| i64::from(x)).sum();
    let mut h = sign(i64::from(l[r - 1])) * fact(i64::from(l[r - 1]));
    for j in 1..r {
        let tail = suffix(n, j + 1) - (r - j) as i64;
        let lower = tail - suffix(l, j);
        let upper = tail - suffix(l, j + 1);
        h *= if d[j - 1] {
            fact(upper - 1) / fact(lower - 1)
        } else {
            sign(i64::from(l[j - 1])) * fact(-lower) / fact(-upper)
        };
    }
    let denom = n
        .iter()
        .fold(BigRational::one(), |acc, &m| acc * fact(i64::from(m)));
    sign(total) * h / denom
}

fn structural_properties() -> Verdict {
    let mut rng = StdRng::seed_from_u64(0x8);
    let mut points = 0;
    let mut problems = Vec::new();
    for r in 2..=4usize {
        for code in 0..4usize.pow(r as u32) {
            let l: Vec<u32> = (0..r)
                .map(|j| ((code / 4usize.pow(j as u32)) % 4) as u32)
                .collect();
            points += 1;
            let point = PointSpec::new(l.clone()).unwrap();
            let expansion = expand(&point);
            let terms: BTreeMap<_, _> = expansion
                .terms()
                .iter()
                .map(|t| (t.composition.clone(), t))
                .collect();

            // partition and disjointness
            let mut covered = BTreeSet::new();
            for d in BranchVector::all(r - 1) {
                for n in index_set(&point, &d) {
                    if !covered.insert(n.clone()) {
                        problems.push(format!("l={l:?}: {n} in two index sets"));
                    }
                    // factorial-argument safety
                    match std::panic::catch_unwind(|| h_coefficient(&point, &d, &n)) {
                        Ok(Ok(_)) => {}
                        Ok(Err(e)) => problems.push(format!("l={l:?} n={n}: {e}")),
                        Err(e) => problems.push(format!("l={l:?} n={n}: panic {e:?}")),
                    }
                }
            }
            for n in compositions(point.total_degree(), r) {
                let branches = branches_containing(&l, n.parts());
                if branches.len() > 1 {
                    problems.push(format!(
                        "l={l:?}: {n} satisfies {} branch conditions",
                        branches.len()
                    ));
                }
                match (branches.first(), terms.get(&n)) {
                    (None, None) => {}
                    (Some(d), Some(t)) => {
                        if t.branch.bits() != d.as_slice() {
                            problems.push(format!("l={l:?}: {n} filed under the wrong branch"));
                        }
                        if t.coefficient != independent_coefficient(&l, n.parts(), d) {
                            problems.push(format!("l={l:?}: coefficient of {n}"));
                        }
                    }
                    (Some(_), None)
                        if independent_coefficient(&l, n.parts(), branches[0].as_slice())
                            .is_zero() => {}
                    _ => problems.push(format!("l={l:?}: membership of {n} disagrees")),
                }
                if covered.contains(&n) != !branches.is_empty() {
                    problems.push(format!("l={l:?}: index_set and conditions disagree on {n}"));
                }
            }

            // monomial telescoping and scale invariance
            let c: Vec<BigRational> = (0..r)
                .map(|_| rat(rng.gen_range(1..=9), rng.gen_range(1..=9)))
                .collect();
            let suffix = |i: usize| -> BigRational { c[i - 1..].iter().sum() };
            for d in BranchVector::all(r - 1) {
                let m = EpsRatioMonomial::from_branch(&d);
                let cancelled = m.numerator().iter().all(|i| !m.denominator().contains(i));
                let direct = (1..r)
                    .filter(|&j| d.get(j))
                    .fold(BigRational::one(), |acc, j| acc * suffix(j + 1) / suffix(j));
                let via = m
                    .eval_with(
                        BigRational::one(),
                        |i| Ok::<_, ()>(suffix(i)),
                        |x, y| x * y,
                        |x, y| x / y,
                    )
                    .unwrap();
                if !cancelled || via != direct {
                    problems.push(format!("l={l:?} d={d}: monomial does not telescope"));
                }
            }
            let lambda = rat(rng.gen_range(1..=20), rng.gen_range(1..=20));
            let scaled: Vec<BigRational> = c.iter().map(|x| x * &lambda).collect();
            if expansion.coefficients_at(&c).unwrap() != expansion.coefficients_at(&scaled).unwrap()
            {
                problems.push(format!("l={l:?}: not invariant under eps ↦ {lambda}·eps"));
            }
        }
    }
    problems.truncate(5);
    Verdict::new(
        problems.is_empty(),
        format!("{points} points, r ≤ 4, l_j ≤ 3 {problems:?}"),
    )
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("fixture suite", fixture_suite, Duration::from_secs(5)),
        (
            "generating-function identity",
            generating_function,
            Duration::from_secs(10),
        ),
        (
            "depth-one closed form",
            apostol_closed_form,
            Duration::from_secs(30),
        ),
        (
            "end-to-end limit",
            end_to_end_limit,
            Duration::from_secs(120),
        ),
        (
            "exact oracle equivalence",
            oracle_equivalence,
            Duration::from_secs(60),
        ),
        (
            "Bernoulli consistency",
            bernoulli_consistency,
            Duration::from_secs(1),
        ),
        (
            "integral representation",
            quadrature_cross_check,
            Duration::from_secs(120),
        ),
        (
            "structural properties",
            structural_properties,
            Duration::from_secs(60),
        ),
    ];
    let mut failures = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let elapsed = start.elapsed();
        let passed = verdict.passed && elapsed <= *budget;
        if !passed {
            failures += 1;
        }
        println!(
            "criterion {}: {} {name} ({:.2}s of {}s) {}",
            i + 1,
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            verdict.detail
        );
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
