//! C ABI over `hlzeta`.
//!
//! Every function returns an [`HlzStatus`]; on failure the message is
//! available from [`hlz_last_error_message`] on the same thread. Strings
//! returned through out-pointers are owned by the caller and released with
//! [`hlz_string_free`]; expansions with [`hlz_expansion_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use hlzeta::apostol::{apostol_eval_exact, apostol_poly, Regime};
use hlzeta::exact_arith::{parse_exact_complex, ExactComplex};
use hlzeta::expansion::{
    eval_expansion_exact, expand, from_json, specialize, to_json, to_text, verify_fixtures,
    ExactParams, Expansion, PointSpec,
};
use hlzeta::numeric::{to_f64, Complex, Ctx};
use hlzeta::oracle::{direct_series, SeriesEvalConfig};

#[repr(i32)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HlzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Domain = 4,
    Internal = 5,
}

/// Expansion handle.
pub struct HlzExpansion(Expansion);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HlzComplex {
    pub re: f64,
    pub im: f64,
}

/// Regime code for the C side.
pub const HLZ_REGIME_AUTO: i32 = -1;
pub const HLZ_REGIME_GENERIC: i32 = 0;
pub const HLZ_REGIME_Z_ONE: i32 = 1;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("interior nul removed"));
}

struct Failure(HlzStatus, String);

impl Failure {
    fn new(status: HlzStatus, msg: impl std::fmt::Display) -> Self {
        Self(status, msg.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HlzStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            HlzStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HlzStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(
            HlzStatus::NullPointer,
            format!("{what} is null"),
        ));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::new(HlzStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(
            HlzStatus::NullPointer,
            "output pointer is null",
        ));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure::new(HlzStatus::Internal, e))?;
    write_out(out, c.into_raw())
}

unsafe fn handle<'a>(e: *const HlzExpansion) -> Result<&'a Expansion, Failure> {
    e.as_ref()
        .map(|h| &h.0)
        .ok_or_else(|| Failure::new(HlzStatus::NullPointer, "expansion handle is null"))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if p.is_null() {
        return Err(Failure::new(
            HlzStatus::NullPointer,
            format!("{what} is null"),
        ));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn regime_code(code: i32) -> Result<Option<Regime>, Failure> {
    match code {
        HLZ_REGIME_AUTO => Ok(None),
        HLZ_REGIME_GENERIC => Ok(Some(Regime::Generic)),
        HLZ_REGIME_Z_ONE => Ok(Some(Regime::ZEqualsOne)),
        other => Err(Failure::new(
            HlzStatus::InvalidArgument,
            format!("unknown regime code {other}"),
        )),
    }
}

fn parse_list(s: &str, what: &str) -> Result<Vec<ExactComplex>, Failure> {
    s.split(',')
        .map(|x| {
            parse_exact_complex(x)
                .map_err(|e| Failure::new(HlzStatus::Parse, format!("{what}: {e}")))
        })
        .collect()
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn hlz_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn hlz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn hlz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `e` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn hlz_expansion_free(e: *mut HlzExpansion) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Expansion at the point `l[0..r]`, `r ≥ 2`.
///
/// # Safety
/// `l` must point to `r` values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hlz_expand(
    l: *const u32,
    r: usize,
    out: *mut *mut HlzExpansion,
) -> HlzStatus {
    guard(|| {
        let l = slice(l, r, "l")?.to_vec();
        let point = PointSpec::new(l).map_err(|e| Failure::new(HlzStatus::InvalidArgument, e))?;
        write_out(out, Box::into_raw(Box::new(HlzExpansion(expand(&point)))))
    })
}

/// Keeps the terms that survive the given regimes (`HLZ_REGIME_GENERIC` or
/// `HLZ_REGIME_Z_ONE`, one per coordinate).
///
/// # Safety
/// `e` must be a live handle, `regimes` must point to `r` values and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn hlz_expansion_specialize(
    e: *const HlzExpansion,
    regimes: *const i32,
    r: usize,
    out: *mut *mut HlzExpansion,
) -> HlzStatus {
    guard(|| {
        let e = handle(e)?;
        let regimes = slice(regimes, r, "regimes")?
            .iter()
            .map(|&c| {
                regime_code(c)?.ok_or_else(|| {
                    Failure::new(
                        HlzStatus::InvalidArgument,
                        "specialize needs a concrete regime",
                    )
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let s =
            specialize(e, &regimes).map_err(|err| Failure::new(HlzStatus::InvalidArgument, err))?;
        write_out(out, Box::into_raw(Box::new(HlzExpansion(s))))
    })
}

/// # Safety
/// `e` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hlz_expansion_term_count(
    e: *const HlzExpansion,
    out: *mut usize,
) -> HlzStatus {
    guard(|| write_out(out, handle(e)?.len()))
}

/// # Safety
/// `e` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hlz_expansion_to_json(
    e: *const HlzExpansion,
    out: *mut *mut c_char,
) -> HlzStatus {
    guard(|| write_string(out, to_json(handle(e)?)))
}

/// # Safety
/// `e` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hlz_expansion_to_text(
    e: *const HlzExpansion,
    out: *mut *mut c_char,
) -> HlzStatus {
    guard(|| write_string(out, to_text(handle(e)?)))
}

/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hlz_expansion_from_json(
    json: *const c_char,
    out: *mut *mut HlzExpansion,
) -> HlzStatus {
    guard(|| {
        let e =
            from_json(str_arg(json, "json")?).map_err(|err| Failure::new(HlzStatus::Parse, err))?;
        write_out(out, Box::into_raw(Box::new(HlzExpansion(e))))
    })
}

/// Exact value of the expansion. `a`, `z`, `eps` are comma-separated exact
/// complex numbers such as `1/2,3-i`; `regimes` holds `r` regime codes or
/// is null for automatic choice. The result is an exact string.
///
/// # Safety
/// String arguments must be nul-terminated, `regimes` null or of length `r`,
/// `e` a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hlz_expansion_eval(
    e: *const HlzExpansion,
    a: *const c_char,
    z: *const c_char,
    eps: *const c_char,
    regimes: *const i32,
    out: *mut *mut c_char,
) -> HlzStatus {
    guard(|| {
        let e = handle(e)?;
        let r = e.point().r();
        let a = parse_list(str_arg(a, "a")?, "a")?;
        let z = parse_list(str_arg(z, "z")?, "z")?;
        let eps = parse_list(str_arg(eps, "eps")?, "eps")?;
        let regimes = if regimes.is_null() {
            vec![None; r]
        } else {
            slice(regimes, r, "regimes")?
                .iter()
                .map(|&c| regime_code(c))
                .collect::<Result<_, _>>()?
        };
        let params = ExactParams {
            a: &a,
            z: &z,
            regimes: &regimes,
            eps: &eps,
        };
        let v =
            eval_expansion_exact(e, &params).map_err(|err| Failure::new(HlzStatus::Domain, err))?;
        write_string(out, v.to_string())
    })
}

/// Exact `B_n(a; z)` as a string.
///
/// # Safety
/// `a`, `z` must be nul-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hlz_apostol_eval(
    n: u32,
    a: *const c_char,
    z: *const c_char,
    regime: i32,
    out: *mut *mut c_char,
) -> HlzStatus {
    guard(|| {
        let a =
            parse_exact_complex(str_arg(a, "a")?).map_err(|e| Failure::new(HlzStatus::Parse, e))?;
        let z =
            parse_exact_complex(str_arg(z, "z")?).map_err(|e| Failure::new(HlzStatus::Parse, e))?;
        let v = apostol_eval_exact(n as usize, &a, &z, regime_code(regime)?)
            .map_err(|e| Failure::new(HlzStatus::Domain, e))?;
        write_string(out, v.to_string())
    })
}

/// `B_n(a; z)` as a polynomial in `a`; `regime` must be concrete.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hlz_apostol_poly_string(
    n: u32,
    regime: i32,
    out: *mut *mut c_char,
) -> HlzStatus {
    guard(|| {
        let regime = regime_code(regime)?.ok_or_else(|| {
            Failure::new(HlzStatus::InvalidArgument, "a concrete regime is required")
        })?;
        write_string(out, apostol_poly(n as usize, regime).to_string())
    })
}

/// The defining series at double-precision inputs, summed with `precision`
/// digits and rounded to double.
///
/// # Safety
/// `s`, `a`, `z` must point to `r` values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hlz_direct_series(
    s: *const HlzComplex,
    a: *const HlzComplex,
    z: *const HlzComplex,
    r: usize,
    precision: u32,
    out: *mut HlzComplex,
) -> HlzStatus {
    guard(|| {
        let ctx = Ctx::new(precision);
        let lift = |v: &[HlzComplex]| -> Vec<Complex> {
            v.iter()
                .map(|c| Complex::new(ctx.from_f64(c.re), ctx.from_f64(c.im)))
                .collect()
        };
        let s = lift(slice(s, r, "s")?);
        let a = lift(slice(a, r, "a")?);
        let z = lift(slice(z, r, "z")?);
        let v = direct_series(&s, &a, &z, &SeriesEvalConfig::with_precision(precision))
            .map_err(|e| Failure::new(HlzStatus::Domain, e))?;
        write_out(
            out,
            HlzComplex {
                re: to_f64(&v.value.re),
                im: to_f64(&v.value.im),
            },
        )
    })
}

/// Recomputes the embedded reference expansions.
///
/// # Safety
/// `passed` and `total` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hlz_verify_fixtures(passed: *mut usize, total: *mut usize) -> HlzStatus {
    guard(|| {
        let outcomes = verify_fixtures(None, false);
        write_out(passed, outcomes.iter().filter(|o| o.passed()).count())?;
        write_out(total, outcomes.len())
    })
}
