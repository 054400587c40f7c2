//! C interface to `trichain`.
//!
//! Every function returns a [`TrichainStatus`]; results come back through out
//! pointers. On failure, [`trichain_last_error`] describes the error on the
//! calling thread. Handles are opaque and must be released with their `_free`
//! function. Strings returned to the caller are freed with
//! [`trichain_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use trichain::arith::{format_rational, parse_rational, GaussianRational, Rational, VarOrder};
use trichain::chains::ZeroDimChain;
use trichain::cli::{parse_system, run_on, Command};
use trichain::dualspace::dual_space_dim;
use trichain::isolate::{iso_mult_with_width, IsolatedZero};
use trichain::reg2sim::{reg2sim, reg_mult, Decomposition};
use trichain::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrichainStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    NotRegular = 5,
    DepthCap = 6,
    OracleCap = 7,
    OutOfRange = 8,
    Internal = 9,
    Panic = 10,
}

/// Parsed zero-dimensional chain with its variable names.
pub struct TrichainSystem {
    order: VarOrder,
    chain: ZeroDimChain,
}

/// Simple branches with multiplicity arrays.
pub struct TrichainDecomposition {
    inner: std::sync::Arc<Decomposition>,
}

/// Real zeros with multiplicities.
pub struct TrichainZeros {
    zeros: Vec<IsolatedZero>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> TrichainStatus {
    match e {
        Error::Parse { .. } => TrichainStatus::Parse,
        Error::Domain(_) => TrichainStatus::Domain,
        Error::NotRegular { .. } => TrichainStatus::NotRegular,
        Error::DepthCap { .. } => TrichainStatus::DepthCap,
        Error::OracleCap { .. } => TrichainStatus::OracleCap,
        Error::Invariant(_) => TrichainStatus::Internal,
    }
}

struct Fail(TrichainStatus, String);

type FfiResult<T> = Result<T, Fail>;

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> FfiResult<()>) -> TrichainStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TrichainStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside trichain".into());
            TrichainStatus::Panic
        }
    }
}

/// # Safety
/// `p` is null or a NUL-terminated string valid for reads.
unsafe fn text<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(Fail(
            TrichainStatus::NullArgument,
            format!("{what} is null"),
        ));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(TrichainStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` is null or points to a live `T`.
unsafe fn handle<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref()
        .ok_or_else(|| Fail(TrichainStatus::NullArgument, format!("{what} is null")))
}

fn out_ptr<T>(p: *mut T) -> FfiResult<()> {
    if p.is_null() {
        Err(Fail(
            TrichainStatus::NullArgument,
            "output pointer is null".into(),
        ))
    } else {
        Ok(())
    }
}

fn parse_point(s: &str) -> FfiResult<Vec<GaussianRational>> {
    s.split(',')
        .map(|c| GaussianRational::parse(c).map_err(|e| Fail(TrichainStatus::Parse, e.to_string())))
        .collect()
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn trichain_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a system file (`vars:` line, `chain:` line, one polynomial per line).
///
/// # Safety
/// `source` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn trichain_system_parse(
    source: *const c_char,
    out: *mut *mut TrichainSystem,
) -> TrichainStatus {
    guard(|| {
        out_ptr(out)?;
        let (order, t) = parse_system(text(source, "source")?)?;
        let chain = ZeroDimChain::from_triangular(&t)?;
        *out = Box::into_raw(Box::new(TrichainSystem { order, chain }));
        Ok(())
    })
}

/// # Safety
/// `sys` is null or a handle from [`trichain_system_parse`], freed once.
#[no_mangle]
pub unsafe extern "C" fn trichain_system_free(sys: *mut TrichainSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// # Safety
/// `sys` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn trichain_system_nvars(
    sys: *const TrichainSystem,
    out: *mut usize,
) -> TrichainStatus {
    guard(|| {
        out_ptr(out)?;
        *out = handle(sys, "system")?.order.len();
        Ok(())
    })
}

/// Local multiplicity at a zero given as comma-separated Gaussian rationals,
/// e.g. `"1+1i,0"`.
///
/// # Safety
/// `sys` is a live handle; `point` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn trichain_mult(
    sys: *const TrichainSystem,
    point: *const c_char,
    out: *mut u64,
) -> TrichainStatus {
    guard(|| {
        out_ptr(out)?;
        let s = handle(sys, "system")?;
        let p = parse_point(text(point, "point")?)?;
        *out = reg_mult(&s.chain, &p)?;
        Ok(())
    })
}

/// Multiplicity at a rational zero by dual-space dimension, exploring orders
/// up to `cap`.
///
/// # Safety
/// `sys` is a live handle; `point` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn trichain_oracle(
    sys: *const TrichainSystem,
    point: *const c_char,
    cap: usize,
    out: *mut u64,
) -> TrichainStatus {
    guard(|| {
        out_ptr(out)?;
        let s = handle(sys, "system")?;
        let p: Vec<Rational> = text(point, "point")?
            .split(',')
            .map(parse_rational)
            .collect::<Result<_, _>>()?;
        *out = dual_space_dim(s.chain.polys(), &p, cap)?;
        Ok(())
    })
}

/// # Safety
/// `sys` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn trichain_decompose(
    sys: *const TrichainSystem,
    out: *mut *mut TrichainDecomposition,
) -> TrichainStatus {
    guard(|| {
        out_ptr(out)?;
        let inner = reg2sim(&handle(sys, "system")?.chain)?;
        *out = Box::into_raw(Box::new(TrichainDecomposition { inner }));
        Ok(())
    })
}

/// # Safety
/// `d` is null or a handle from [`trichain_decompose`], freed once.
#[no_mangle]
pub unsafe extern "C" fn trichain_decomposition_free(d: *mut TrichainDecomposition) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn trichain_decomposition_len(
    d: *const TrichainDecomposition,
    out: *mut usize,
) -> TrichainStatus {
    guard(|| {
        out_ptr(out)?;
        *out = handle(d, "decomposition")?.inner.branches.len();
        Ok(())
    })
}

/// Product of the multiplicity array of branch `i`.
///
/// # Safety
/// `d` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn trichain_decomposition_product(
    d: *const TrichainDecomposition,
    i: usize,
    out: *mut u64,
) -> TrichainStatus {
    guard(|| {
        out_ptr(out)?;
        let b = handle(d, "decomposition")?
            .inner
            .branches
            .get(i)
            .ok_or_else(|| Fail(TrichainStatus::OutOfRange, format!("no branch {i}")))?;
        *out = b.array.product();
        Ok(())
    })
}

/// Real zeros with multiplicities; `width` is null or a rational such as
/// `"1/1000"` bounding every interval width.
///
/// # Safety
/// `sys` is a live handle; `width` is null or a NUL-terminated string; `out`
/// is writable.
#[no_mangle]
pub unsafe extern "C" fn trichain_isolate(
    sys: *const TrichainSystem,
    width: *const c_char,
    out: *mut *mut TrichainZeros,
) -> TrichainStatus {
    guard(|| {
        out_ptr(out)?;
        let s = handle(sys, "system")?;
        let w = if width.is_null() {
            None
        } else {
            Some(parse_rational(text(width, "width")?)?)
        };
        let zeros = iso_mult_with_width(&s.chain, w.as_ref())?;
        *out = Box::into_raw(Box::new(TrichainZeros { zeros }));
        Ok(())
    })
}

/// # Safety
/// `z` is null or a handle from [`trichain_isolate`], freed once.
#[no_mangle]
pub unsafe extern "C" fn trichain_zeros_free(z: *mut TrichainZeros) {
    if !z.is_null() {
        drop(Box::from_raw(z));
    }
}

/// # Safety
/// `z` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn trichain_zeros_len(
    z: *const TrichainZeros,
    out: *mut usize,
) -> TrichainStatus {
    guard(|| {
        out_ptr(out)?;
        *out = handle(z, "zeros")?.zeros.len();
        Ok(())
    })
}

fn zero_at(z: &TrichainZeros, i: usize) -> FfiResult<&IsolatedZero> {
    z.zeros
        .get(i)
        .ok_or_else(|| Fail(TrichainStatus::OutOfRange, format!("no zero {i}")))
}

/// # Safety
/// `z` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn trichain_zeros_multiplicity(
    z: *const TrichainZeros,
    i: usize,
    out: *mut u64,
) -> TrichainStatus {
    guard(|| {
        out_ptr(out)?;
        *out = zero_at(handle(z, "zeros")?, i)?.multiplicity;
        Ok(())
    })
}

/// Endpoints of coordinate `var` of zero `i` as `p/q` strings. Both outputs
/// are owned by the caller.
///
/// # Safety
/// `z` is a live handle; `lo` and `hi` are writable.
#[no_mangle]
pub unsafe extern "C" fn trichain_zeros_interval(
    z: *const TrichainZeros,
    i: usize,
    var: usize,
    lo: *mut *mut c_char,
    hi: *mut *mut c_char,
) -> TrichainStatus {
    guard(|| {
        out_ptr(lo)?;
        out_ptr(hi)?;
        let iv = zero_at(handle(z, "zeros")?, i)?
            .bounds
            .intervals
            .get(var)
            .ok_or_else(|| Fail(TrichainStatus::OutOfRange, format!("no coordinate {var}")))?;
        *lo = owned_string(format_rational(&iv.lo));
        *hi = owned_string(format_rational(&iv.hi));
        Ok(())
    })
}

/// Runs a CLI command (`decompose`, `mult`, `isolate`, `oracle`, `check`) and
/// returns its JSON document. `point` and `width` may be null when unused.
///
/// # Safety
/// `sys` is a live handle; string arguments are null or NUL-terminated;
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn trichain_run_json(
    sys: *const TrichainSystem,
    command: *const c_char,
    point: *const c_char,
    width: *const c_char,
    out: *mut *mut c_char,
) -> TrichainStatus {
    guard(|| {
        out_ptr(out)?;
        let s = handle(sys, "system")?;
        let opt = |p: *const c_char, what| -> FfiResult<Option<String>> {
            if p.is_null() {
                Ok(None)
            } else {
                text(p, what).map(|t| Some(t.to_string()))
            }
        };
        let need = |v: Option<String>| {
            v.ok_or_else(|| {
                Fail(
                    TrichainStatus::NullArgument,
                    "point is required".to_string(),
                )
            })
        };
        let file = Default::default();
        let cmd = match text(command, "command")? {
            "decompose" => Command::Decompose { file },
            "check" => Command::Check { file },
            "isolate" => Command::Isolate {
                file,
                width: opt(width, "width")?,
            },
            "mult" => Command::Mult {
                file,
                point: need(opt(point, "point")?)?,
            },
            "oracle" => Command::Oracle {
                file,
                point: need(opt(point, "point")?)?,
                cap: trichain::dualspace::DEFAULT_CAP,
            },
            other => {
                return Err(Fail(
                    TrichainStatus::Domain,
                    format!("unknown command `{other}`"),
                ))
            }
        };
        let t = s.chain.to_triangular();
        let doc = run_on(&cmd, &s.order, &t).map_err(|f| {
            let status = if f.code == trichain::cli::EXIT_PARSE {
                TrichainStatus::Parse
            } else {
                TrichainStatus::Domain
            };
            Fail(status, f.message)
        })?;
        let json = serde_json::to_string(&doc)
            .map_err(|e| Fail(TrichainStatus::Internal, e.to_string()))?;
        *out = owned_string(json);
        Ok(())
    })
}

/// # Safety
/// `s` is null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn trichain_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
