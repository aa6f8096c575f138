//! C interface to qwalk.
//!
//! Every fallible call returns a [`QwStatus`]; on failure the message is
//! kept per thread and read back with [`qw_last_error`]. Objects cross the
//! boundary as opaque handles created by `*_new`/`*_from_*` functions and
//! released with the matching `*_free`. Complex buffers are interleaved
//! `re, im` pairs of doubles.

use qwalk::engine::{make_packet, observables, step_momentum_kernel, FieldState, PacketParams, Projection};
use qwalk::walks::{omega, position_kernel, symbol_matrix, check_unitarity_conditions, TransitionKernel, WalkSpec};
use qwalk::{Error, WaveVector};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// Branch singularity, failed inversion or another numerical breakdown.
    Numeric = 3,
    /// Caller buffer too small; the required length is still written.
    BufferTooSmall = 4,
    Panic = 5,
}

/// A walk: family, dimension, chirality, branch and mass.
pub struct QwWalk(WalkSpec);

/// Position-space transition kernel.
pub struct QwKernel(TransitionKernel);

/// Spinor field on a periodic lattice.
pub struct QwState(FieldState);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let clean = msg.replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(clean).expect("nul bytes removed"));
}

fn status_of(e: &Error) -> QwStatus {
    match e {
        Error::BranchSingularity
        | Error::SingularPoint(_)
        | Error::OutOfImage { .. }
        | Error::RegionViolation { .. }
        | Error::OrbitEscape { .. } => QwStatus::Numeric,
        _ => QwStatus::InvalidArgument,
    }
}

/// Runs `f`, translating errors and panics into a status.
fn guard<F: FnOnce() -> Result<(), QwStatus>>(f: F) -> QwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QwStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            QwStatus::Panic
        }
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, QwStatus>;
}

impl<T> OrStatus<T> for qwalk::Result<T> {
    fn or_status(self) -> Result<T, QwStatus> {
        self.map_err(|e| {
            set_error(&e.to_string());
            status_of(&e)
        })
    }
}

fn null(what: &str) -> QwStatus {
    set_error(&format!("{what} is null"));
    QwStatus::NullPointer
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, QwStatus> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], QwStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, QwStatus> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(&format!("{what} is not valid UTF-8"));
        QwStatus::InvalidArgument
    })
}

unsafe fn put<T>(out: *mut T, v: T, what: &str) -> Result<(), QwStatus> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

/// Copies `values` as interleaved pairs into `buf`, always reporting the length.
unsafe fn put_complex(
    values: impl ExactSizeIterator<Item = (f64, f64)>,
    buf: *mut f64,
    cap: usize,
    needed: *mut usize,
) -> Result<(), QwStatus> {
    let n = 2 * values.len();
    if !needed.is_null() {
        needed.write(n);
    }
    if cap < n {
        set_error(&format!("buffer holds {cap} doubles, {n} needed"));
        return Err(QwStatus::BufferTooSmall);
    }
    if buf.is_null() {
        return Err(null("buffer"));
    }
    for (i, (re, im)) in values.enumerate() {
        buf.add(2 * i).write(re);
        buf.add(2 * i + 1).write(im);
    }
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread; valid until the next call
/// that fails on the same thread.
#[no_mangle]
pub extern "C" fn qw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a walk name such as `weyl3d+` or `dirac1d` and sets its mass.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qw_walk_new(name: *const c_char, mass: f64, out: *mut *mut QwWalk) -> QwStatus {
    guard(|| {
        let name = text(name, "name")?;
        let spec: WalkSpec = name.parse().or_status()?;
        let spec = if spec.family == qwalk::Family::Dirac || mass != 0.0 { spec.with_mass(mass).or_status()? } else { spec };
        put(out, Box::into_raw(Box::new(QwWalk(spec))), "out")
    })
}

/// # Safety
/// `walk` must come from [`qw_walk_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qw_walk_free(walk: *mut QwWalk) {
    if !walk.is_null() {
        drop(Box::from_raw(walk));
    }
}

/// Lattice dimension of the walk, 0 for a null handle.
///
/// # Safety
/// `walk` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qw_walk_dim(walk: *const QwWalk) -> usize {
    walk.as_ref().map_or(0, |w| w.0.dim)
}

/// Spinor components of the walk, 0 for a null handle.
///
/// # Safety
/// `walk` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qw_walk_components(walk: *const QwWalk) -> usize {
    walk.as_ref().map_or(0, |w| w.0.components())
}

/// Dispersion ω(k) for a Cartesian wave-vector of length `dim`.
///
/// # Safety
/// `k` must point at `len` doubles and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn qw_walk_omega(walk: *const QwWalk, k: *const f64, len: usize, out: *mut f64) -> QwStatus {
    guard(|| {
        let w = handle(walk, "walk")?;
        let k = WaveVector::new(slice(k, len, "k")?).or_status()?;
        put(out, omega(&k, &w.0).or_status()?, "out")
    })
}

/// Symbol U(k), row-major, into `buf` of `cap` doubles; `needed` receives
/// 2s² when non-null.
///
/// # Safety
/// `k` must point at `len` doubles and `buf` at `cap` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn qw_walk_symbol(
    walk: *const QwWalk,
    k: *const f64,
    len: usize,
    buf: *mut f64,
    cap: usize,
    needed: *mut usize,
) -> QwStatus {
    guard(|| {
        let w = handle(walk, "walk")?;
        let k = WaveVector::new(slice(k, len, "k")?).or_status()?;
        let u = symbol_matrix(&k, &w.0).or_status()?;
        let s = u.nrows();
        put_complex((0..s * s).map(|i| u[(i / s, i % s)]).map(|z| (z.re, z.im)), buf, cap, needed)
    })
}

/// Position kernel of a walk.
///
/// # Safety
/// `walk` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qw_kernel_from_walk(walk: *const QwWalk, out: *mut *mut QwKernel) -> QwStatus {
    guard(|| {
        let w = handle(walk, "walk")?;
        put(out, Box::into_raw(Box::new(QwKernel(position_kernel(&w.0)))), "out")
    })
}

/// Kernel from its JSON form, as written by `qwalk verify --emit-kernel`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qw_kernel_from_json(json: *const c_char, out: *mut *mut QwKernel) -> QwStatus {
    guard(|| {
        let v: serde_json::Value = serde_json::from_str(text(json, "json")?).map_err(|e| {
            set_error(&format!("kernel json: {e}"));
            QwStatus::InvalidArgument
        })?;
        let k = TransitionKernel::from_json(&v).or_status()?;
        put(out, Box::into_raw(Box::new(QwKernel(k))), "out")
    })
}

/// # Safety
/// `kernel` must come from a `qw_kernel_from_*` call and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qw_kernel_free(kernel: *mut QwKernel) {
    if !kernel.is_null() {
        drop(Box::from_raw(kernel));
    }
}

/// Number of displacements carrying a nonzero matrix; 0 for null.
///
/// # Safety
/// `kernel` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qw_kernel_len(kernel: *const QwKernel) -> usize {
    kernel.as_ref().map_or(0, |k| k.0.entries.len())
}

/// Largest residual over the bilinear unitarity conditions.
///
/// # Safety
/// `kernel` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qw_kernel_unitarity_residual(kernel: *const QwKernel, out: *mut f64) -> QwStatus {
    guard(|| {
        let k = handle(kernel, "kernel")?;
        put(out, check_unitarity_conditions(&k.0).max_residual, "out")
    })
}

/// Gaussian packet of spread `sigma` centred on the lattice, carrying
/// momentum `k0` and projected on the positive-frequency band fibre by fibre.
///
/// # Safety
/// `k0` must point at `len` doubles and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn qw_state_gaussian(
    walk: *const QwWalk,
    n: usize,
    k0: *const f64,
    len: usize,
    sigma: f64,
    out: *mut *mut QwState,
) -> QwStatus {
    guard(|| {
        let w = handle(walk, "walk")?;
        let k0 = WaveVector::new(slice(k0, len, "k0")?).or_status()?;
        let s = w.0.components();
        let mut spinor = vec![qwalk::linalg::c(0.0, 0.0); s];
        spinor[0] = qwalk::linalg::c(1.0, 0.0);
        let mut p = PacketParams::gaussian(k0, sigma, vec![(n / 2) as f64; w.0.dim], spinor);
        p.projection = Projection::PerFiber;
        let st = make_packet(&p, n, &w.0).or_status()?;
        put(out, Box::into_raw(Box::new(QwState(st))), "out")
    })
}

/// # Safety
/// `state` must come from a `qw_state_*` constructor and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qw_state_free(state: *mut QwState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Advances the state by `steps` applications of the kernel.
///
/// # Safety
/// Both handles must be live; `state` must not be aliased.
#[no_mangle]
pub unsafe extern "C" fn qw_state_step(state: *mut QwState, kernel: *const QwKernel, steps: u64) -> QwStatus {
    guard(|| {
        let k = handle(kernel, "kernel")?;
        let st = state.as_mut().ok_or_else(|| null("state"))?;
        st.0 = step_momentum_kernel(&st.0, &k.0, steps).or_status()?;
        Ok(())
    })
}

/// Squared norm Σ|ψ|².
///
/// # Safety
/// `state` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qw_state_norm_sqr(state: *const QwState, out: *mut f64) -> QwStatus {
    guard(|| put(out, handle(state, "state")?.0.norm_sqr(), "out"))
}

/// Cartesian mean position, three doubles (unused axes are zero).
///
/// # Safety
/// `state` must be live and `out` must hold three doubles.
#[no_mangle]
pub unsafe extern "C" fn qw_state_mean(state: *const QwState, out: *mut f64) -> QwStatus {
    guard(|| {
        let ob = observables(&handle(state, "state")?.0).or_status()?;
        if out.is_null() {
            return Err(null("out"));
        }
        ptr::copy_nonoverlapping(ob.position_mean.as_ptr(), out, 3);
        Ok(())
    })
}

/// Amplitudes in site-major order (components fastest).
///
/// # Safety
/// `buf` must hold `cap` writable doubles; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn qw_state_amplitudes(
    state: *const QwState,
    buf: *mut f64,
    cap: usize,
    needed: *mut usize,
) -> QwStatus {
    guard(|| {
        let st = handle(state, "state")?;
        put_complex(st.0.amplitudes().iter().map(|z| (z.re, z.im)), buf, cap, needed)
    })
}
