//! Multi-precision real and complex floating point.
//!
//! A [`Ctx`] fixes the working precision and owns the constants cache that
//! the transcendental kernels need. It is deliberately `!Sync`; parallel
//! callers create one per worker.

mod complex;

use std::cell::RefCell;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_traits::Signed;

use crate::exact_arith::{BigRational, ExactComplex};

pub use complex::Complex;

pub const RM: RoundingMode = RoundingMode::ToEven;

/// Default working precision (significant decimal digits) of the numeric
/// oracles.
pub const DEFAULT_DIGITS: u32 = 50;
pub const MIN_DIGITS: u32 = 15;

const GUARD_BITS: usize = 64;

pub struct Ctx {
    digits: u32,
    bits: usize,
    consts: RefCell<Consts>,
}

impl Ctx {
    pub fn new(digits: u32) -> Self {
        let digits = digits.max(MIN_DIGITS);
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS;
        Self {
            digits,
            bits,
            consts: RefCell::new(Consts::new().expect("constants cache allocation")),
        }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    /// `10^{-digits}`, the nominal relative resolution.
    pub fn epsilon_f64(&self) -> f64 {
        10f64.powi(-(self.digits as i32))
    }

    pub fn zero(&self) -> BigFloat {
        BigFloat::from_i32(0, self.bits)
    }

    pub fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.bits)
    }

    pub fn from_f64(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.bits)
    }

    pub fn from_rational(&self, q: &BigRational) -> BigFloat {
        let n = self.parse_int(&q.numer().to_string());
        if q.denom() == &num_bigint::BigInt::from(1) {
            return n;
        }
        let d = self.parse_int(&q.denom().to_string());
        self.div(&n, &d)
    }

    fn parse_int(&self, digits: &str) -> BigFloat {
        // integers up to 2^63 are exact through i64
        match digits.parse::<i64>() {
            Ok(v) => BigFloat::from_i64(v, self.bits),
            Err(_) => {
                let mut cc = self.consts.borrow_mut();
                BigFloat::parse(digits, Radix::Dec, self.bits, RM, &mut cc)
            }
        }
    }

    pub fn complex(&self, z: &ExactComplex) -> Complex {
        Complex::new(self.from_rational(&z.re), self.from_rational(&z.im))
    }

    pub fn real(&self, x: BigFloat) -> Complex {
        Complex::new(x, self.zero())
    }

    pub fn pi(&self) -> BigFloat {
        self.consts.borrow_mut().pi(self.bits, RM)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.bits, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.bits, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.bits, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.bits, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.bits, RM)
    }

    pub fn ln(&self, a: &BigFloat) -> BigFloat {
        a.ln(self.bits, RM, &mut self.consts.borrow_mut())
    }

    pub fn exp(&self, a: &BigFloat) -> BigFloat {
        a.exp(self.bits, RM, &mut self.consts.borrow_mut())
    }

    pub fn sin(&self, a: &BigFloat) -> BigFloat {
        a.sin(self.bits, RM, &mut self.consts.borrow_mut())
    }

    pub fn cos(&self, a: &BigFloat) -> BigFloat {
        a.cos(self.bits, RM, &mut self.consts.borrow_mut())
    }

    pub fn atan(&self, a: &BigFloat) -> BigFloat {
        a.atan(self.bits, RM, &mut self.consts.borrow_mut())
    }

    /// `exp(x) − 1` without cancellation for small `|x|`.
    pub fn expm1(&self, x: &BigFloat) -> BigFloat {
        if to_f64(x).abs() >= 0.5 {
            return self.sub(&self.exp(x), &self.int(1));
        }
        let mut term = x.clone();
        let mut acc = x.clone();
        let limit = self.bits as i64 + 8;
        for k in 2..10_000i64 {
            term = self.div(&self.mul(&term, x), &self.int(k));
            if term.is_zero() || magnitude(&term) < magnitude(&acc) - limit {
                break;
            }
            acc = self.add(&acc, &term);
        }
        acc
    }

    /// Principal `atan2(y, x)` in `(−π, π]`.
    pub fn atan2(&self, y: &BigFloat, x: &BigFloat) -> BigFloat {
        let pi = self.pi();
        if x.is_zero() {
            return if y.is_zero() {
                self.zero()
            } else if y.is_negative() {
                self.div(&pi.neg(), &self.int(2))
            } else {
                self.div(&pi, &self.int(2))
            };
        }
        let base = self.atan(&self.div(y, x));
        if x.is_positive() {
            base
        } else if y.is_negative() {
            self.sub(&base, &pi)
        } else {
            self.add(&base, &pi)
        }
    }

    pub fn abs(&self, a: &BigFloat) -> BigFloat {
        if a.is_negative() {
            a.neg()
        } else {
            a.clone()
        }
    }
}

/// Binary exponent, `i64::MIN` for zero (a cheap magnitude proxy).
pub fn magnitude(x: &BigFloat) -> i64 {
    if x.is_zero() {
        i64::MIN / 2
    } else {
        x.exponent().map(i64::from).unwrap_or(0)
    }
}

pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    x.to_string().parse::<f64>().unwrap_or(f64::NAN)
}

/// Decimal rendering rounded to `sig` significant digits. Moderate
/// magnitudes print positionally, others in scientific notation.
pub fn format_sig(x: &BigFloat, sig: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let raw = x.to_string();
    if raw.contains("NaN") || raw.contains("Inf") {
        return raw;
    }
    let (mant, exp) = match raw.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (raw.as_str(), 0),
    };
    let negative = mant.starts_with('-');
    let mant = mant.trim_start_matches(['-', '+']);
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    let mut digits: Vec<u8> = ip.bytes().chain(fp.bytes()).map(|b| b - b'0').collect();
    let mut exp10 = exp + ip.len() as i64 - 1;
    while digits.first() == Some(&0) && digits.len() > 1 {
        digits.remove(0);
        exp10 -= 1;
    }
    let sig = sig.max(1);
    if digits.len() > sig {
        let round_up = digits[sig] >= 5;
        digits.truncate(sig);
        if round_up {
            let mut i = sig;
            loop {
                if i == 0 {
                    digits.insert(0, 1);
                    digits.pop();
                    exp10 += 1;
                    break;
                }
                i -= 1;
                if digits[i] == 9 {
                    digits[i] = 0;
                } else {
                    digits[i] += 1;
                    break;
                }
            }
        }
    }
    while digits.len() > 1 && digits.last() == Some(&0) {
        digits.pop();
    }
    let body: String = digits.iter().map(|d| char::from(b'0' + d)).collect();
    let sign = if negative { "-" } else { "" };
    if (-6..=14).contains(&exp10) {
        let s = if exp10 < 0 {
            format!("0.{}{}", "0".repeat((-exp10 - 1) as usize), body)
        } else if (exp10 as usize) + 1 >= body.len() {
            format!("{}{}", body, "0".repeat(exp10 as usize + 1 - body.len()))
        } else {
            let (a, b) = body.split_at(exp10 as usize + 1);
            format!("{a}.{b}")
        };
        format!("{sign}{s}")
    } else if body.len() == 1 {
        format!("{sign}{body}e{exp10}")
    } else {
        format!("{sign}{}.{}e{exp10}", &body[..1], &body[1..])
    }
}

/// Lossy but convenient for tolerances: `|q|` as `f64`.
pub fn rational_abs_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.abs().to_f64().unwrap_or(f64::INFINITY)
}
