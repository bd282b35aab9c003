//! C ABI for `zksym`.
//!
//! Geometry is exposed through an opaque [`ZksymGeometry`] handle created by
//! [`zksym_geometry_new`] and released with [`zksym_geometry_free`]. Every
//! fallible call returns a [`ZksymStatus`]; on failure a message is kept per
//! thread and can be read back with [`zksym_last_error`]. Panics never cross
//! the boundary.
//!
//! Tables are written row-major: the Ricci matrix as `rho[8*i + j]`, the
//! bracket and U tables as `c[64*i + 8*j + k]`, the coefficient of `E_k` in
//! `T(E_i, E_j)` for the frame `A1~ A2~ A3~ A4~ B1~ B2~ C1~ C2~`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use zksym::analysis::{self, Branch, LedgerSolution};
use zksym::cli::{EXIT_INVALID, EXIT_NUMERICAL};
use zksym::geometry::Table;
use zksym::{Geometry, GeometryError, MetricError, MetricParams, SolveError};

/// Dimension of m.
pub const ZKSYM_FRAME_DIM: usize = 8;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZksymStatus {
    Ok = 0,
    InvalidInput = 1,
    Numerical = 2,
    NullPointer = 3,
    BufferTooSmall = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZksymBranch {
    UZero = 0,
    UNonzero = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZksymParams {
    pub t: f64,
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZksymSolution {
    pub branch: ZksymBranch,
    pub s: f64,
    pub v_ratio: f64,
    pub w_ratio: f64,
    pub usq: f64,
    pub params: ZksymParams,
    pub ledger_residual: f64,
    pub star_residual: f64,
    pub gram_residual: f64,
    pub naturally_reductive: bool,
}

/// Opaque handle holding a metric and its precomputed geometry.
pub struct ZksymGeometry {
    params: MetricParams,
    geometry: Geometry,
}

struct Failure {
    status: ZksymStatus,
    message: String,
}

impl Failure {
    fn new(status: ZksymStatus, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
        }
    }

    fn null(what: &str) -> Self {
        Self::new(ZksymStatus::NullPointer, format!("{what} is null"))
    }
}

fn status_of(code: i32) -> ZksymStatus {
    match code {
        EXIT_INVALID => ZksymStatus::InvalidInput,
        EXIT_NUMERICAL => ZksymStatus::Numerical,
        _ => ZksymStatus::Ok,
    }
}

impl From<MetricError> for Failure {
    fn from(e: MetricError) -> Self {
        let code = if e.is_numerical() {
            EXIT_NUMERICAL
        } else {
            EXIT_INVALID
        };
        Self::new(status_of(code), e.to_string())
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        let code = if e.is_numerical() {
            EXIT_NUMERICAL
        } else {
            EXIT_INVALID
        };
        Self::new(status_of(code), e.to_string())
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = if e.is_numerical() {
            EXIT_NUMERICAL
        } else {
            EXIT_INVALID
        };
        Self::new(status_of(code), e.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ZksymStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            ZksymStatus::Ok
        }
        Ok(Err(failure)) => {
            set_last_error(&failure.message);
            failure.status
        }
        Err(_) => {
            set_last_error("internal panic");
            ZksymStatus::Panic
        }
    }
}

unsafe fn handle<'a>(g: *const ZksymGeometry) -> Result<&'a ZksymGeometry, Failure> {
    g.as_ref().ok_or_else(|| Failure::null("geometry handle"))
}

unsafe fn out_slice<'a>(
    out: *mut f64,
    len: usize,
    needed: usize,
) -> Result<&'a mut [f64], Failure> {
    if out.is_null() {
        return Err(Failure::null("output buffer"));
    }
    if len < needed {
        return Err(Failure::new(
            ZksymStatus::BufferTooSmall,
            format!("output buffer holds {len} values, {needed} required"),
        ));
    }
    Ok(std::slice::from_raw_parts_mut(out, needed))
}

unsafe fn frame_vector<'a>(x: *const f64, what: &str) -> Result<&'a [f64], Failure> {
    if x.is_null() {
        return Err(Failure::null(what));
    }
    Ok(std::slice::from_raw_parts(x, ZKSYM_FRAME_DIM))
}

fn write_table(table: &Table, out: &mut [f64]) {
    let n = table.dim();
    for i in 0..n {
        for j in 0..n {
            out[(i * n + j) * n..(i * n + j + 1) * n].copy_from_slice(table.entry(i, j));
        }
    }
}

fn check_tol(tol: f64) -> Result<f64, Failure> {
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(Failure::new(
            ZksymStatus::InvalidInput,
            format!("tolerance must be positive, got {tol}"),
        ))
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn zksym_version() -> *const c_char {
    static VERSION: &CStr =
        match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
            Ok(v) => v,
            Err(_) => panic!("version contains NUL"),
        };
    VERSION.as_ptr()
}

/// Copies the calling thread's last error message into `buf` (truncated,
/// always NUL-terminated when `len > 0`). Returns the full message length
/// without the terminator, or 0 if the last call succeeded.
///
/// # Safety
/// `buf` must be null or point to at least `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn zksym_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else {
            if !buf.is_null() && len > 0 {
                *buf = 0;
            }
            return 0;
        };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Builds the geometry of the metric `params`. On success `*out` owns a
/// handle that must be released with [`zksym_geometry_free`].
///
/// # Safety
/// `out` must be null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn zksym_geometry_new(
    params: ZksymParams,
    out: *mut *mut ZksymGeometry,
) -> ZksymStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        *out = std::ptr::null_mut();
        let p = MetricParams::new(params.t, params.u, params.v, params.w)?;
        let geometry = Geometry::so5(&p)?;
        *out = Box::into_raw(Box::new(ZksymGeometry {
            params: p,
            geometry,
        }));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `g` must be null or a handle from [`zksym_geometry_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zksym_geometry_free(g: *mut ZksymGeometry) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Writes the 64 Ricci entries.
///
/// # Safety
/// `g` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn zksym_geometry_ricci(
    g: *const ZksymGeometry,
    out: *mut f64,
    len: usize,
) -> ZksymStatus {
    guard(|| {
        let g = handle(g)?;
        let out = out_slice(out, len, 64)?;
        let rho = g.geometry.ricci();
        for i in 0..8 {
            for j in 0..8 {
                out[8 * i + j] = rho[(i, j)];
            }
        }
        Ok(())
    })
}

/// Writes the 512 coefficients of `[ , ]_m` in the frame.
///
/// # Safety
/// `g` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn zksym_geometry_bracket_table(
    g: *const ZksymGeometry,
    out: *mut f64,
    len: usize,
) -> ZksymStatus {
    guard(|| {
        let g = handle(g)?;
        write_table(g.geometry.bracket_table(), out_slice(out, len, 512)?);
        Ok(())
    })
}

/// Writes the 512 coefficients of the U map in the frame.
///
/// # Safety
/// `g` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn zksym_geometry_u_table(
    g: *const ZksymGeometry,
    out: *mut f64,
    len: usize,
) -> ZksymStatus {
    guard(|| {
        let g = handle(g)?;
        write_table(g.geometry.u_table(), out_slice(out, len, 512)?);
        Ok(())
    })
}

/// `L(x, y, z)` for frame-coordinate vectors of length 8.
///
/// # Safety
/// `g` must be a live handle, `x`, `y`, `z` must each point to 8 doubles
/// and `out` must be valid for one double.
#[no_mangle]
pub unsafe extern "C" fn zksym_geometry_ledger(
    g: *const ZksymGeometry,
    x: *const f64,
    y: *const f64,
    z: *const f64,
    out: *mut f64,
) -> ZksymStatus {
    guard(|| {
        let g = handle(g)?;
        let (x, y, z) = (
            frame_vector(x, "x")?,
            frame_vector(y, "y")?,
            frame_vector(z, "z")?,
        );
        let out = out_slice(out, 1, 1)?;
        out[0] = g.geometry.ledger(x, y, z);
        Ok(())
    })
}

/// Max `|L|` over frame triples and the maximizing triple.
///
/// # Safety
/// `g` must be a live handle, `value` valid for one double and `triple`
/// null or valid for three `size_t`.
#[no_mangle]
pub unsafe extern "C" fn zksym_geometry_max_ledger(
    g: *const ZksymGeometry,
    value: *mut f64,
    triple: *mut usize,
) -> ZksymStatus {
    guard(|| {
        let g = handle(g)?;
        if value.is_null() {
            return Err(Failure::null("value"));
        }
        let m = g.geometry.max_ledger();
        *value = m.value;
        if !triple.is_null() {
            std::ptr::copy_nonoverlapping(m.triple.as_ptr(), triple, 3);
        }
        Ok(())
    })
}

/// Whether every `<U(X,Y),Z>` over frame triples is within `tol`.
///
/// # Safety
/// `g` must be a live handle and `out` valid for one bool.
#[no_mangle]
pub unsafe extern "C" fn zksym_geometry_is_naturally_reductive(
    g: *const ZksymGeometry,
    tol: f64,
    out: *mut bool,
) -> ZksymStatus {
    guard(|| {
        let g = handle(g)?;
        let tol = check_tol(tol)?;
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        *out = analysis::is_naturally_reductive(&g.params, tol)?.naturally_reductive;
        Ok(())
    })
}

/// Dimension of the space of infinitesimal isometries in m.
///
/// # Safety
/// `g` must be a live handle and `out` valid for one `size_t`.
#[no_mangle]
pub unsafe extern "C" fn zksym_geometry_isometry_dim(
    g: *const ZksymGeometry,
    tol: f64,
    out: *mut usize,
) -> ZksymStatus {
    guard(|| {
        let g = handle(g)?;
        let tol = check_tol(tol)?;
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        *out = analysis::isometries_of(&g.geometry, tol).dim;
        Ok(())
    })
}

fn to_c(sol: &LedgerSolution) -> ZksymSolution {
    ZksymSolution {
        branch: match sol.branch {
            Branch::UZero => ZksymBranch::UZero,
            Branch::UNonzero => ZksymBranch::UNonzero,
        },
        s: sol.s,
        v_ratio: sol.v_ratio,
        w_ratio: sol.w_ratio,
        usq: sol.usq,
        params: ZksymParams {
            t: sol.params.t(),
            u: sol.params.u(),
            v: sol.params.v(),
            w: sol.params.w(),
        },
        ledger_residual: sol.residuals.ledger,
        star_residual: sol.residuals.star,
        gram_residual: sol.residuals.gram,
        naturally_reductive: sol.naturally_reductive,
    }
}

/// Solves the first Ledger condition at `s` on `branch` (2 solutions for
/// `u = 0`, 4 otherwise). `*written` receives the number of solutions; if
/// `cap` is too small nothing is copied and `BUFFER_TOO_SMALL` is returned.
///
/// # Safety
/// `out` must hold `cap` solutions and `written` must be valid for one `size_t`.
#[no_mangle]
pub unsafe extern "C" fn zksym_solve(
    branch: ZksymBranch,
    s: f64,
    tol: f64,
    out: *mut ZksymSolution,
    cap: usize,
    written: *mut usize,
) -> ZksymStatus {
    guard(|| {
        let tol = check_tol(tol)?;
        if out.is_null() || written.is_null() {
            return Err(Failure::null("output"));
        }
        *written = 0;
        let sols: Vec<LedgerSolution> = match branch {
            ZksymBranch::UZero => analysis::solve_ledger_u0(s, tol)?.to_vec(),
            ZksymBranch::UNonzero => analysis::solve_ledger_unonzero(s, tol)?,
        };
        if cap < sols.len() {
            *written = sols.len();
            return Err(Failure::new(
                ZksymStatus::BufferTooSmall,
                format!("{} solutions, buffer holds {cap}", sols.len()),
            ));
        }
        for (i, sol) in sols.iter().enumerate() {
            *out.add(i) = to_c(sol);
        }
        *written = sols.len();
        Ok(())
    })
}
