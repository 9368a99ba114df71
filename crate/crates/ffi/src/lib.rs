//! C ABI for `vacpol`.
//!
//! Parameters live behind opaque handles created by `*_new` and released by
//! `*_free`. Every entry point returns a status code; on failure a
//! message is kept per thread and can be read with [`vacpol_last_error`].
//! Panics never cross the boundary.

use num_complex::Complex64;
use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use vacpol::cli::{profile_rows, Grid, Sides, Spacing, Wall};
use vacpol::heatkernel::{reflecting_kernel, semitransparent_kernel};
use vacpol::{reflecting, semitransparent};
use vacpol::{FieldConfig, HeatQuery, ReflectingBC, RobinParam, SemitransparentBC, VacpolError};

pub const VACPOL_OK: i32 = 0;
/// Invalid parameter, positivity violation or out-of-domain argument.
pub const VACPOL_ERR_INVALID: i32 = 2;
pub const VACPOL_ERR_INFRARED: i32 = 3;
/// Quadrature or fit failure.
pub const VACPOL_ERR_NUMERICAL: i32 = 4;
pub const VACPOL_ERR_NULL: i32 = 5;
pub const VACPOL_ERR_PANIC: i32 = 6;

/// Field parameters: dimension, mass and renormalization scale.
pub struct VacpolField {
    cfg: FieldConfig,
}

/// A reflecting or semitransparent wall.
pub struct VacpolWall {
    wall: Wall,
}

/// Robin condition on one face. `dirichlet != 0` selects Dirichlet and
/// ignores `b`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct VacpolRobin {
    pub dirichlet: i32,
    pub b: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct VacpolValue {
    pub free_term: f64,
    pub plane_term: f64,
    pub total: f64,
}

/// Spectrum summary. `lambda_plus` and `lambda_minus` are meaningful only
/// when `has_lambdas != 0`; the first `n_eigenvalues` entries of
/// `eigenvalues` are filled, in ascending order.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct VacpolSpectrum {
    pub threshold: f64,
    pub has_lambdas: i32,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub n_eigenvalues: i32,
    pub eigenvalues: [f64; 2],
    pub positive: i32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Fail {
    Lib(VacpolError),
    Null(&'static str),
}

impl From<VacpolError> for Fail {
    fn from(e: VacpolError) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> i32 {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => VACPOL_OK,
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            match e.exit_code() {
                3 => VACPOL_ERR_INFRARED,
                4 => VACPOL_ERR_NUMERICAL,
                _ => VACPOL_ERR_INVALID,
            }
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer passed as {what}"));
            VACPOL_ERR_NULL
        }
        Err(_) => {
            set_error("internal panic".into());
            VACPOL_ERR_PANIC
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

fn robin(r: VacpolRobin) -> RobinParam {
    if r.dirichlet != 0 {
        RobinParam::Dirichlet
    } else {
        RobinParam::Finite(r.b)
    }
}

/// Message for the most recent failure on this thread, or NULL. The
/// pointer stays valid until the next `vacpol_*` call on the same thread.
#[no_mangle]
pub extern "C" fn vacpol_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn vacpol_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `out_field` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn vacpol_field_new(
    d: u32,
    m: f64,
    kappa: f64,
    out_field: *mut *mut VacpolField,
) -> i32 {
    guard(|| {
        let slot = out(out_field, "out_field")?;
        let cfg = FieldConfig::new(d, m, kappa)?;
        *slot = Box::into_raw(Box::new(VacpolField { cfg }));
        Ok(())
    })
}

/// # Safety
/// `field` must be NULL or a handle from `vacpol_field_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vacpol_field_free(field: *mut VacpolField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// # Safety
/// `out_wall` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vacpol_wall_reflecting_new(
    b_plus: VacpolRobin,
    b_minus: VacpolRobin,
    out_wall: *mut *mut VacpolWall,
) -> i32 {
    guard(|| {
        let slot = out(out_wall, "out_wall")?;
        let bc = ReflectingBC::new(robin(b_plus), robin(b_minus))?;
        *slot = Box::into_raw(Box::new(VacpolWall {
            wall: Wall::Reflecting(bc),
        }));
        Ok(())
    })
}

/// `omega` must have unit modulus and `alpha*sigma - beta*gamma = 1`.
///
/// # Safety
/// `out_wall` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vacpol_wall_semitransparent_new(
    omega_re: f64,
    omega_im: f64,
    alpha: f64,
    beta: f64,
    gamma: f64,
    sigma: f64,
    out_wall: *mut *mut VacpolWall,
) -> i32 {
    guard(|| {
        let slot = out(out_wall, "out_wall")?;
        let bc = SemitransparentBC::new(
            Complex64::new(omega_re, omega_im),
            alpha,
            beta,
            gamma,
            sigma,
        )?;
        *slot = Box::into_raw(Box::new(VacpolWall {
            wall: Wall::Semitransparent(bc),
        }));
        Ok(())
    })
}

/// # Safety
/// `wall` must be NULL or a live wall handle.
#[no_mangle]
pub unsafe extern "C" fn vacpol_wall_free(wall: *mut VacpolWall) {
    if !wall.is_null() {
        drop(Box::from_raw(wall));
    }
}

/// Renormalized polarization at `x1`; a massless field gives the `m -> 0` limit.
///
/// # Safety
/// Handles must be live and `out_value` valid.
#[no_mangle]
pub unsafe extern "C" fn vacpol_evaluate(
    field: *const VacpolField,
    wall: *const VacpolWall,
    x1: f64,
    out_value: *mut VacpolValue,
) -> i32 {
    guard(|| {
        let cfg = &deref(field, "field")?.cfg;
        let w = &deref(wall, "wall")?.wall;
        let slot = out(out_value, "out_value")?;
        let v = match w {
            Wall::Reflecting(bc) => reflecting::evaluate(cfg, bc, x1)?,
            Wall::Semitransparent(bc) => semitransparent::evaluate(cfg, bc, x1)?,
        };
        *slot = VacpolValue {
            free_term: v.free_term,
            plane_term: v.plane_term,
            total: v.total,
        };
        Ok(())
    })
}

/// Evaluates `n` points in parallel, writing `out_values[i]` for `x1[i]`.
/// On failure `*out_failed_index` (if non-NULL) receives the first
/// failing index and nothing else is guaranteed about `out_values`.
///
/// # Safety
/// `x1` and `out_values` must each hold `n` elements.
#[no_mangle]
pub unsafe extern "C" fn vacpol_evaluate_many(
    field: *const VacpolField,
    wall: *const VacpolWall,
    x1: *const f64,
    n: usize,
    out_values: *mut VacpolValue,
    out_failed_index: *mut usize,
) -> i32 {
    guard(|| {
        let cfg = &deref(field, "field")?.cfg;
        let w = &deref(wall, "wall")?.wall;
        if n == 0 {
            return Ok(());
        }
        if x1.is_null() {
            return Err(Fail::Null("x1"));
        }
        if out_values.is_null() {
            return Err(Fail::Null("out_values"));
        }
        let xs = std::slice::from_raw_parts(x1, n);
        let dst = std::slice::from_raw_parts_mut(out_values, n);
        use rayon::prelude::*;
        let results: Vec<_> = xs
            .par_iter()
            .map(|&x| match w {
                Wall::Reflecting(bc) => reflecting::evaluate(cfg, bc, x),
                Wall::Semitransparent(bc) => semitransparent::evaluate(cfg, bc, x),
            })
            .collect();
        for (i, r) in results.into_iter().enumerate() {
            match r {
                Ok(v) => {
                    dst[i] = VacpolValue {
                        free_term: v.free_term,
                        plane_term: v.plane_term,
                        total: v.total,
                    }
                }
                Err(e) => {
                    if let Some(slot) = out_failed_index.as_mut() {
                        *slot = i;
                    }
                    return Err(e.into());
                }
            }
        }
        Ok(())
    })
}

/// Plane term by direct proper-time integration of the heat kernel.
///
/// # Safety
/// Handles must be live and `out_plane` valid.
#[no_mangle]
pub unsafe extern "C" fn vacpol_plane_term_oracle(
    field: *const VacpolField,
    wall: *const VacpolWall,
    x1: f64,
    out_plane: *mut f64,
) -> i32 {
    guard(|| {
        let cfg = &deref(field, "field")?.cfg;
        let w = &deref(wall, "wall")?.wall;
        let slot = out(out_plane, "out_plane")?;
        *slot = match w {
            Wall::Reflecting(bc) => reflecting::plane_term_oracle(cfg, bc, x1)?,
            Wall::Semitransparent(bc) => semitransparent::plane_term_oracle(cfg, bc, x1)?,
        };
        Ok(())
    })
}

/// Leading small- and large-distance terms of the plane contribution
/// (massive fields only). Either output pointer may be NULL.
///
/// # Safety
/// Handles must be live; non-NULL outputs must be valid.
#[no_mangle]
pub unsafe extern "C" fn vacpol_asymptotics(
    field: *const VacpolField,
    wall: *const VacpolWall,
    x1: f64,
    out_small: *mut f64,
    out_large: *mut f64,
) -> i32 {
    guard(|| {
        let cfg = &deref(field, "field")?.cfg;
        let w = &deref(wall, "wall")?.wall;
        let (s, l) = match w {
            Wall::Reflecting(bc) => (
                reflecting::small_x_asymptotic(cfg, bc, x1)?,
                reflecting::large_x_asymptotic(cfg, bc, x1)?,
            ),
            Wall::Semitransparent(bc) => (
                semitransparent::small_x_asymptotic(cfg, bc, x1)?,
                semitransparent::large_x_asymptotic(cfg, bc, x1)?,
            ),
        };
        if let Some(p) = out_small.as_mut() {
            *p = s;
        }
        if let Some(p) = out_large.as_mut() {
            *p = l;
        }
        Ok(())
    })
}

/// Transverse heat kernel `K(tau; x, y)` including the mass factor.
/// Reflecting walls always give a zero imaginary part.
///
/// # Safety
/// `wall` must be live; outputs must be valid.
#[no_mangle]
pub unsafe extern "C" fn vacpol_heat_kernel(
    wall: *const VacpolWall,
    m: f64,
    tau: f64,
    x: f64,
    y: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> i32 {
    guard(|| {
        let w = &deref(wall, "wall")?.wall;
        let re = out(out_re, "out_re")?;
        let im = out(out_im, "out_im")?;
        if !(0.0..f64::INFINITY).contains(&m) {
            return Err(
                VacpolError::Parameter(format!("mass must be finite and >= 0, got {m}")).into(),
            );
        }
        let q = HeatQuery::new(tau, x, y)?;
        let k = match w {
            Wall::Reflecting(bc) => Complex64::new(reflecting_kernel(&q, bc, m)?, 0.0),
            Wall::Semitransparent(bc) => semitransparent_kernel(&q, bc, m)?,
        };
        *re = k.re;
        *im = k.im;
        Ok(())
    })
}

/// # Safety
/// `wall` must be live and `out_spectrum` valid.
#[no_mangle]
pub unsafe extern "C" fn vacpol_spectrum(
    wall: *const VacpolWall,
    m: f64,
    out_spectrum: *mut VacpolSpectrum,
) -> i32 {
    guard(|| {
        let w = &deref(wall, "wall")?.wall;
        let slot = out(out_spectrum, "out_spectrum")?;
        if !(0.0..f64::INFINITY).contains(&m) {
            return Err(
                VacpolError::Parameter(format!("mass must be finite and >= 0, got {m}")).into(),
            );
        }
        let rep = w.spectrum(m);
        let mut s = VacpolSpectrum {
            threshold: rep.continuous_threshold,
            positive: rep.positive as i32,
            ..Default::default()
        };
        if let (Some(lp), Some(lm)) = (rep.lambda_plus, rep.lambda_minus) {
            s.has_lambdas = 1;
            s.lambda_plus = lp;
            s.lambda_minus = lm;
        }
        for (dst, e) in s.eigenvalues.iter_mut().zip(&rep.point_eigenvalues) {
            *dst = *e;
        }
        s.n_eigenvalues = rep.point_eigenvalues.len().min(2) as i32;
        *slot = s;
        Ok(())
    })
}

/// Fills `out_x1` and `out_values` (each `points` long) with a profile on
/// `[x_min, x_max]`, linear (`log_spacing == 0`) or logarithmic, for
/// `x1 > 0`.
///
/// # Safety
/// Output arrays must hold `points` elements.
#[no_mangle]
pub unsafe extern "C" fn vacpol_profile(
    field: *const VacpolField,
    wall: *const VacpolWall,
    x_min: f64,
    x_max: f64,
    points: usize,
    log_spacing: i32,
    out_x1: *mut f64,
    out_values: *mut VacpolValue,
) -> i32 {
    guard(|| {
        let cfg = deref(field, "field")?.cfg;
        let w = deref(wall, "wall")?.wall;
        if out_x1.is_null() {
            return Err(Fail::Null("out_x1"));
        }
        if out_values.is_null() {
            return Err(Fail::Null("out_values"));
        }
        let grid = Grid {
            x_min,
            x_max,
            points,
            spacing: if log_spacing != 0 {
                Spacing::Log
            } else {
                Spacing::Linear
            },
            sides: Sides::Plus,
        };
        let rows = profile_rows(&vacpol::cli::ProfileRequest { cfg, wall: w, grid })
            .map_err(|p| p.error.with_context(&format!("x1 = {}", p.x1)))?;
        let xs = std::slice::from_raw_parts_mut(out_x1, points);
        let vs = std::slice::from_raw_parts_mut(out_values, points);
        for ((x, v), r) in xs.iter_mut().zip(vs.iter_mut()).zip(rows) {
            *x = r.x1;
            *v = VacpolValue {
                free_term: r.free,
                plane_term: r.plane,
                total: r.total,
            };
        }
        Ok(())
    })
}
