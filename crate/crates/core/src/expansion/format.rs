use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::exact_arith::{parse_rational, rational_to_string};

use super::expand::{Expansion, ExpansionTerm};
use super::index::h_coefficient;
use super::types::{join, BranchVector, Composition, EpsRatioMonomial, PointSpec};
use super::ExpansionError;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonExpansion {
    r: usize,
    l: Vec<u32>,
    terms: Vec<JsonTerm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonTerm {
    n: Composition,
    d: Vec<u8>,
    coeff: String,
    mono: JsonMono,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonMono {
    num: Vec<usize>,
    den: Vec<usize>,
}

/// Compact JSON with stable key order.
pub fn to_json(e: &Expansion) -> String {
    let doc = JsonExpansion {
        r: e.point().r(),
        l: e.point().l().to_vec(),
        terms: e
            .terms()
            .iter()
            .map(|t| JsonTerm {
                n: t.composition.clone(),
                d: t.branch.digits(),
                coeff: rational_to_string(&t.coefficient),
                mono: JsonMono {
                    num: t.monomial.numerator().to_vec(),
                    den: t.monomial.denominator().to_vec(),
                },
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}

/// Parses the JSON form. Each term must lie in the index set of its
/// branch and carry that branch's monomial; coefficients are taken as
/// given.
pub fn from_json(s: &str) -> Result<Expansion, ExpansionError> {
    let doc: JsonExpansion =
        serde_json::from_str(s).map_err(|e| ExpansionError::Malformed(e.to_string()))?;
    if doc.r != doc.l.len() {
        return Err(ExpansionError::Malformed(format!(
            "r = {} but l has {} entries",
            doc.r,
            doc.l.len()
        )));
    }
    let point = PointSpec::new(doc.l)?;
    let terms = doc
        .terms
        .into_iter()
        .map(|t| {
            let branch = BranchVector::from_digits(&t.d)?;
            let (_, mono) = h_coefficient(&point, &branch, &t.n)?;
            let given = EpsRatioMonomial::new(t.mono.num, t.mono.den);
            if given != mono {
                return Err(ExpansionError::Malformed(format!(
                    "monomial of {} does not match branch {branch}",
                    t.n
                )));
            }
            let coefficient =
                parse_rational(&t.coeff).map_err(|e| ExpansionError::Malformed(e.to_string()))?;
            Ok(ExpansionTerm {
                coefficient,
                composition: t.n,
                branch,
                monomial: mono,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Expansion::from_terms(point, terms)
}

/// One line of the text form, e.g. `+1/2 · B_(0,2) · ε2/(ε1+ε2)`.
pub fn term_line(t: &ExpansionTerm, r: usize) -> String {
    let sign = if t.coefficient.is_negative() {
        '-'
    } else {
        '+'
    };
    let mut line = format!(
        "{sign}{} · B_({})",
        rational_to_string(&t.coefficient.abs()),
        join(t.composition.parts())
    );
    if !t.monomial.is_one() {
        line.push_str(" · ");
        line.push_str(&t.monomial.render(r));
    }
    line
}

/// Text form: one term per line, grouped by monomial.
pub fn to_text(e: &Expansion) -> String {
    let r = e.point().r();
    let mut out = String::new();
    for t in e.grouped() {
        out.push_str(&term_line(t, r));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::expand;

    fn p(l: &[u32]) -> PointSpec {
        PointSpec::new(l.to_vec()).unwrap()
    }

    #[test]
    fn json_schema_and_roundtrip() {
        let e = expand(&p(&[0, 0]));
        let js = to_json(&e);
        assert!(js.starts_with(
            r#"{"r":2,"l":[0,0],"terms":[{"n":[2,0],"d":[0],"coeff":"1/2","mono":{"num":[],"den":[]}},"#
        ));
        assert_eq!(from_json(&js).unwrap(), e);
        let e = expand(&p(&[0, 0, 0, 0]));
        assert_eq!(from_json(&to_json(&e)).unwrap(), e);
    }

    #[test]
    fn json_rejects_inconsistent_terms() {
        let bad = r#"{"r":2,"l":[0,0],"terms":[{"n":[0,2],"d":[0],"coeff":"1","mono":{"num":[],"den":[]}}]}"#;
        assert!(from_json(bad).is_err());
        let bad = r#"{"r":2,"l":[0,0],"terms":[{"n":[0,2],"d":[1],"coeff":"1","mono":{"num":[],"den":[]}}]}"#;
        assert!(from_json(bad).is_err());
        assert!(from_json("{").is_err());
    }

    #[test]
    fn text_layout() {
        let e = expand(&p(&[1, 0]));
        assert_eq!(
            to_text(&e),
            "+1/3 · B_(3,0)\n+1/2 · B_(2,1)\n-1/6 · B_(0,3) · ε2/(ε1+ε2)\n"
        );
    }
}
