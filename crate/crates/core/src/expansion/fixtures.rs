//! Reference expansions transcribed from published tables.
//!
//! Each display is a list of lines `coeff n1,…,nr [| num / den]`, where
//! `num` and `den` list the suffix indices `i` of `ε(i,r)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::apostol::Regime;
use crate::exact_arith::{parse_rational, rat, rational_to_string, BigRational, ExactComplex};

use super::expand::{eval_expansion_exact, expand, specialize, ExactParams, Expansion};
use super::types::{Composition, EpsRatioMonomial, PointSpec};

struct Display {
    name: &'static str,
    l: &'static [u32],
    regimes: Option<&'static [Regime]>,
    body: &'static str,
    closed_form: Option<ClosedForm>,
}

/// Value of a specialised display as a function of `(a, z, ε₂/(ε₁+ε₂))`.
type ClosedForm = fn(&[BigRational], &[BigRational], &BigRational) -> BigRational;

const G: Regime = Regime::Generic;
const ONE: Regime = Regime::ZEqualsOne;

fn cf_gg(_: &[BigRational], z: &[BigRational], _: &BigRational) -> BigRational {
    let one = rat(1, 1);
    (&z[0] - &one).recip() * (&z[1] - &one).recip()
}

fn cf_1g(a: &[BigRational], z: &[BigRational], rho: &BigRational) -> BigRational {
    let w = &z[1] - rat(1, 1);
    (&a[0] - rat(1, 2)) / &w + (&a[1] / &w - &z[1] / (&w * &w)) * rho
}

fn cf_g1(a: &[BigRational], z: &[BigRational], _: &BigRational) -> BigRational {
    let w = &z[0] - rat(1, 1);
    (&a[0] + &a[1] - rat(3, 2)) / &w - (&w * &w).recip()
}

fn cf_11(a: &[BigRational], _: &[BigRational], rho: &BigRational) -> BigRational {
    let b2 = |x: &BigRational| x * x - x + rat(1, 6);
    (&a[0] - rat(1, 2)) * (&a[1] - rat(1, 2)) + b2(&a[0]) * rat(1, 2) + b2(&a[1]) * rat(1, 2) * rho
}

const DISPLAYS: &[Display] = &[
    Display {
        name: "r2-l00",
        l: &[0, 0],
        regimes: None,
        body: "1 1,1; 1/2 2,0; 1/2 0,2 | 2 / 1",
        closed_form: None,
    },
    Display {
        name: "r2-l10",
        l: &[1, 0],
        regimes: None,
        body: "1/2 2,1; 1/3 3,0; -1/6 0,3 | 2 / 1",
        closed_form: None,
    },
    Display {
        name: "r2-l01",
        l: &[0, 1],
        regimes: None,
        body: "1/2 2,1; 1/2 1,2; 1/6 3,0; 1/6 0,3 | 2 / 1",
        closed_form: None,
    },
    Display {
        name: "r2-l11",
        l: &[1, 1],
        regimes: None,
        body: "1/4 2,2; 1/3 3,1; 1/8 4,0; -1/24 0,4 | 2 / 1",
        closed_form: None,
    },
    Display {
        name: "r3-l000",
        l: &[0, 0, 0],
        regimes: None,
        body: "-1 1,1,1; -1/2 2,0,1; -1/2 2,1,0; -1/2 1,2,0; -1/6 3,0,0;
               -1/2 1,0,2 | 3 / 2;
               -1/2 0,2,1 | 2 / 1; -1/6 0,3,0 | 2 / 1;
               -1/2 0,1,2 | 3 / 1; -1/6 0,0,3 | 3 / 1",
        closed_form: None,
    },
    Display {
        name: "r3-l100",
        l: &[1, 0, 0],
        regimes: None,
        body: "-1/2 2,1,1; -1/4 2,2,0; -1/3 3,1,0; -1/3 3,0,1; -1/8 4,0,0;
               -1/4 2,0,2 | 3 / 2;
               1/6 0,3,1 | 2 / 1; 1/24 0,4,0 | 2 / 1;
               1/4 0,2,2 | 3 / 1; 1/6 0,1,3 | 3 / 1; 1/24 0,0,4 | 3 / 1",
        closed_form: None,
    },
    Display {
        name: "r3-l010",
        l: &[0, 1, 0],
        regimes: None,
        body: "-1/2 2,1,1; -1/2 2,2,0; -1/3 3,1,0; -1/6 3,0,1; -1/2 1,2,1;
               -1/3 1,3,0; -1/12 4,0,0;
               1/6 1,0,3 | 3 / 2;
               -1/6 0,3,1 | 2 / 1; -1/12 0,4,0 | 2 / 1;
               1/6 0,1,3 | 3 / 1; 1/12 0,0,4 | 3 / 1",
        closed_form: None,
    },
    Display {
        name: "r3-l001",
        l: &[0, 0, 1],
        regimes: None,
        body: "-1/2 2,1,1; -1/4 2,2,0; -1/4 2,0,2; -1/2 1,2,1; -1/2 1,1,2;
               -1/6 3,1,0; -1/6 3,0,1; -1/6 1,3,0; -1/24 4,0,0;
               -1/6 1,0,3 | 3 / 2;
               -1/4 0,2,2 | 2 / 1; -1/6 0,3,1 | 2 / 1; -1/24 0,4,0 | 2 / 1;
               -1/6 0,1,3 | 3 / 1; -1/24 0,0,4 | 3 / 1",
        closed_form: None,
    },
    Display {
        name: "r4-l0000",
        l: &[0, 0, 0, 0],
        regimes: None,
        body: "1 1,1,1,1; 1/2 2,1,1,0; 1/2 2,1,0,1; 1/2 2,0,1,1; 1/2 1,2,1,0;
               1/2 1,2,0,1; 1/4 2,2,0,0; 1/2 1,1,2,0; 1/4 2,0,2,0; 1/6 3,1,0,0;
               1/6 3,0,1,0; 1/6 3,0,0,1; 1/6 1,3,0,0; 1/24 4,0,0,0;
               1/2 1,1,0,2 | 4 / 3; 1/4 2,0,0,2 | 4 / 3;
               1/2 1,0,2,1 | 3 / 2; 1/6 1,0,3,0 | 3 / 2;
               1/2 1,0,1,2 | 4 / 2; 1/6 1,0,0,3 | 4 / 2;
               1/2 0,2,1,1 | 2 / 1; 1/4 0,2,2,0 | 2 / 1; 1/6 0,3,0,1 | 2 / 1;
               1/6 0,3,1,0 | 2 / 1; 1/24 0,4,0,0 | 2 / 1;
               1/2 0,1,2,1 | 3 / 1; 1/6 0,1,3,0 | 3 / 1; 1/6 0,0,3,1 | 3 / 1;
               1/24 0,0,4,0 | 3 / 1;
               1/2 0,1,1,2 | 4 / 1; 1/4 0,0,2,2 | 4 / 1; 1/6 0,1,0,3 | 4 / 1;
               1/6 0,0,1,3 | 4 / 1; 1/24 0,0,0,4 | 4 / 1;
               1/4 0,2,0,2 | 2,4 / 1,3",
        closed_form: None,
    },
    Display {
        name: "ex-gg",
        l: &[0, 0],
        regimes: Some(&[G, G]),
        body: "1 1,1",
        closed_form: Some(cf_gg),
    },
    Display {
        name: "ex-1g",
        l: &[0, 0],
        regimes: Some(&[ONE, G]),
        body: "1 1,1; 1/2 0,2 | 2 / 1",
        closed_form: Some(cf_1g),
    },
    Display {
        name: "ex-g1",
        l: &[0, 0],
        regimes: Some(&[G, ONE]),
        body: "1 1,1; 1/2 2,0",
        closed_form: Some(cf_g1),
    },
    Display {
        name: "ex-11",
        l: &[0, 0],
        regimes: Some(&[ONE, ONE]),
        body: "1 1,1; 1/2 2,0; 1/2 0,2 | 2 / 1",
        closed_form: Some(cf_11),
    },
];

type TermMap = BTreeMap<Composition, (BigRational, EpsRatioMonomial)>;

fn parse_indices(s: &str) -> Vec<usize> {
    s.split(',')
        .map(|x| x.trim().parse().expect("fixture index"))
        .collect()
}

fn parse_body(body: &str) -> TermMap {
    body.split(';')
        .map(str::trim)
        .filter(|line| !line.is_empty())
        .map(|line| {
            let (term, mono) = match line.split_once('|') {
                Some((t, m)) => {
                    let (num, den) = m.split_once('/').expect("fixture monomial");
                    (
                        t,
                        EpsRatioMonomial::new(parse_indices(num), parse_indices(den)),
                    )
                }
                None => (line, EpsRatioMonomial::one()),
            };
            let mut it = term.split_whitespace();
            let coeff =
                parse_rational(it.next().expect("coefficient")).expect("fixture coefficient");
            let n = parse_indices(it.next().expect("composition"))
                .into_iter()
                .map(|k| k as u32)
                .collect();
            (Composition(n), (coeff, mono))
        })
        .collect()
}

fn term_map(e: &Expansion) -> TermMap {
    e.terms()
        .iter()
        .map(|t| {
            (
                t.composition.clone(),
                (t.coefficient.clone(), t.monomial.clone()),
            )
        })
        .collect()
}

/// First disagreement between a computed expansion and a reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermDiff {
    pub composition: String,
    pub expected: String,
    pub computed: String,
}

impl fmt::Display for TermDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "B_{}: expected {}, computed {}",
            self.composition, self.expected, self.computed
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureOutcome {
    pub name: &'static str,
    pub terms: usize,
    pub diff: Option<TermDiff>,
}

impl FixtureOutcome {
    pub fn passed(&self) -> bool {
        self.diff.is_none()
    }
}

fn describe(entry: Option<&(BigRational, EpsRatioMonomial)>, r: usize) -> String {
    match entry {
        None => "absent".into(),
        Some((c, m)) if m.is_one() => rational_to_string(c),
        Some((c, m)) => format!("{} · {}", rational_to_string(c), m.render(r)),
    }
}

fn first_diff(expected: &TermMap, computed: &TermMap, r: usize) -> Option<TermDiff> {
    let mut keys: Vec<&Composition> = expected.keys().chain(computed.keys()).collect();
    keys.sort_by(|a, b| b.cmp(a));
    keys.dedup();
    keys.into_iter()
        .find(|k| expected.get(*k) != computed.get(*k))
        .map(|k| TermDiff {
            composition: k.to_string(),
            expected: describe(expected.get(k), r),
            computed: describe(computed.get(k), r),
        })
}

/// Checks a specialised display against its closed form at a few exact
/// sample points.
fn closed_form_diff(e: &Expansion, regimes: &[Regime], cf: ClosedForm) -> Option<TermDiff> {
    let samples: [([i64; 4], [i64; 4], [i64; 4]); 3] = [
        ([1, 1, 1, 1], [1, 2, 1, 3], [1, 1, 1, 1]),
        ([3, 7, -2, 5], [-1, 1, 2, 3], [1, 3, 2, 1]),
        ([0, 1, 5, 4], [-3, 2, -1, 4], [2, 5, 7, 3]),
    ];
    for (a, z, eps) in samples {
        let a = [rat(a[0], a[1]), rat(a[2], a[3])];
        let z: Vec<BigRational> = regimes
            .iter()
            .zip([rat(z[0], z[1]), rat(z[2], z[3])])
            .map(|(reg, v)| if *reg == ONE { rat(1, 1) } else { v })
            .collect();
        let eps = [rat(eps[0], eps[1]), rat(eps[2], eps[3])];
        let rho = &eps[1] / (&eps[0] + &eps[1]);
        let ex = |v: &[BigRational]| {
            v.iter()
                .cloned()
                .map(ExactComplex::real)
                .collect::<Vec<_>>()
        };
        let reg: Vec<Option<Regime>> = regimes.iter().copied().map(Some).collect();
        let got = eval_expansion_exact(
            e,
            &ExactParams {
                a: &ex(&a),
                z: &ex(&z),
                regimes: &reg,
                eps: &ex(&eps),
            },
        )
        .expect("valid sample point");
        let want = ExactComplex::real(cf(&a, &z, &rho));
        if got != want {
            return Some(TermDiff {
                composition: format!("closed form at a={a:?}, z={z:?}"),
                expected: want.to_string(),
                computed: got.to_string(),
            });
        }
    }
    None
}

/// Names of all embedded reference displays.
pub fn fixture_names() -> Vec<&'static str> {
    DISPLAYS.iter().map(|d| d.name).collect()
}

/// Recomputes every reference display whose name starts with `only` (all
/// when `None`). With `corrupt` the first selected reference has its first
/// coefficient altered, as a negative control.
pub fn verify_fixtures(only: Option<&str>, corrupt: bool) -> Vec<FixtureOutcome> {
    let mut corrupted = !corrupt;
    DISPLAYS
        .iter()
        .filter(|d| only.is_none_or(|p| d.name.starts_with(p)))
        .map(|d| {
            let point = PointSpec::new(d.l.to_vec()).expect("fixture depth ≥ 2");
            let mut expected = parse_body(d.body);
            if !corrupted {
                if let Some((c, _)) = expected.values_mut().next_back() {
                    *c += rat(1, 1);
                }
                corrupted = true;
            }
            let mut e = expand(&point);
            if let Some(reg) = d.regimes {
                e = specialize(&e, reg).expect("regime count");
            }
            let computed = term_map(&e);
            let mut diff = first_diff(&expected, &computed, point.r());
            if diff.is_none() {
                if let (Some(reg), Some(cf)) = (d.regimes, d.closed_form) {
                    diff = closed_form_diff(&e, reg, cf);
                }
            }
            FixtureOutcome {
                name: d.name,
                terms: computed.len(),
                diff,
            }
        })
        .collect()
}
