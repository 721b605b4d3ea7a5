use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ArithError, BigRational, ExactComplex};

/// Parses `p/q`, integers and decimal literals (`0.25`, `1e-3`, `-2.5E+2`)
/// into the exact rational they denote.
pub fn parse_rational(s: &str) -> Result<BigRational, ArithError> {
    let err = || ArithError::Parse(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = parse_decimal(p.trim()).ok_or_else(err)?;
        let q = parse_decimal(q.trim()).ok_or_else(err)?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(p / q);
    }
    parse_decimal(t).ok_or_else(err)
}

fn parse_decimal(t: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(all.parse::<BigInt>().ok()?);
    let shift = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let scale = (0..shift.unsigned_abs()).fold(BigRational::one(), |acc, _| acc * &ten);
    if shift >= 0 {
        value *= scale;
    } else {
        value /= scale;
    }
    Some(if negative { -value } else { value })
}

/// Comma-separated list of rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<BigRational>, ArithError> {
    s.split(',').map(parse_rational).collect()
}

/// Parses `x`, `yi`, `x+yi`, `x-yi`, `i`, `-i` with rational parts.
pub fn parse_exact_complex(s: &str) -> Result<ExactComplex, ArithError> {
    let err = || ArithError::Parse(s.to_string());
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('i') else {
        return parse_rational(&t).map(ExactComplex::real);
    };
    // split point: last sign that is not leading and not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_rational(&body[..k])?, &body[k..]),
        None => (BigRational::zero(), body),
    };
    let im = match im {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        other => parse_rational(other).map_err(|_| err())?,
    };
    Ok(ExactComplex::new(re, im))
}
