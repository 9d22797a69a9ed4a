//! C interface to `patrol-core`.
//!
//! Instances and solutions cross the boundary as opaque handles created from
//! JSON (same format as the `patrol` CLI) and released with the matching
//! `*_free` function. Every fallible call returns a [`PatrolStatus`]; on
//! failure, [`patrol_last_error`] describes what went wrong on the calling
//! thread. Strings returned to the caller are owned by it and must be released
//! with [`patrol_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use patrol_core::greedy::GreedyConfig;
use patrol_core::model::io::{instance_to_json, parse_instance, parse_solution, solution_to_json};
use patrol_core::oracle::exact_min_robots;
use patrol_core::{verify, Algorithm, Error, Instance, Rational, Solution};

/// Opaque instance handle.
pub struct PatrolInstance(Instance);

/// Opaque solution handle.
pub struct PatrolSolution(Solution);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatrolStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInstance = 4,
    InvalidConfig = 5,
    TooLarge = 6,
    Internal = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatrolAlgorithm {
    Approx = 0,
    Greedy = 1,
    OrienteeringGreedy = 2,
}

/// Tuning for the greedy solvers. `m_num / m_den` weights vertices already
/// on the walk being built and must lie in (0, 1].
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct PatrolGreedyConfig {
    pub m_num: i64,
    pub m_den: i64,
    pub restarts: usize,
    pub seed: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(PatrolStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) | Error::Json(_) | Error::NegativeTime(_) => PatrolStatus::Parse,
            Error::Config(_) => PatrolStatus::InvalidConfig,
            Error::InstanceTooLarge(_) => PatrolStatus::TooLarge,
            Error::Shape(_)
            | Error::EmptySolution
            | Error::VertexOutOfRange { .. }
            | Error::EmptyWalk
            | Error::BadOffset { .. } => PatrolStatus::InvalidInstance,
            _ => PatrolStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Runs `f`, recording any error or panic for [`patrol_last_error`].
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PatrolStatus {
    LAST_ERROR.with(|slot| slot.borrow_mut().take());
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PatrolStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            PatrolStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(PatrolStatus::NullArgument, format!("{what} is null"))
}

unsafe fn as_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    unsafe { p.as_ref() }.ok_or_else(|| null(what))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|e| Failure(PatrolStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    unsafe { out.write(value) };
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no interior nul").into_raw()
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn patrol_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn patrol_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Default greedy settings.
#[no_mangle]
pub extern "C" fn patrol_greedy_config_default() -> PatrolGreedyConfig {
    let d = GreedyConfig::default();
    PatrolGreedyConfig {
        m_num: *d.m.numer() as i64,
        m_den: *d.m.denom() as i64,
        restarts: d.restarts,
        seed: d.seed,
    }
}

/// Parses and validates an instance. Non-metric input is rejected with
/// `PATROL_STATUS_INVALID_INSTANCE`.
///
/// # Safety
/// `json` must be NULL or a NUL-terminated string; `out` must be NULL or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn patrol_instance_from_json(json: *const c_char, out: *mut *mut PatrolInstance) -> PatrolStatus {
    guard(|| {
        let text = unsafe { read_str(json, "json") }?;
        let inst = parse_instance(text)?;
        let violations = inst.validate();
        if let Some(v) = violations.first() {
            return Err(Failure(
                PatrolStatus::InvalidInstance,
                format!("{} metric violations, first: {v}", violations.len()),
            ));
        }
        let handle = Box::into_raw(Box::new(PatrolInstance(inst)));
        unsafe { write_out(out, handle, "out") }.inspect_err(|_| drop(unsafe { Box::from_raw(handle) }))
    })
}

/// # Safety
/// `inst` must be NULL or come from [`patrol_instance_from_json`] and not
/// have been freed.
#[no_mangle]
pub unsafe extern "C" fn patrol_instance_free(inst: *mut PatrolInstance) {
    if !inst.is_null() {
        drop(unsafe { Box::from_raw(inst) });
    }
}

/// Number of vertices, or 0 for NULL.
///
/// # Safety
/// `inst` must be NULL or a live instance handle.
#[no_mangle]
pub unsafe extern "C" fn patrol_instance_vertex_count(inst: *const PatrolInstance) -> usize {
    unsafe { inst.as_ref() }.map_or(0, |i| i.0.n())
}

/// Serialises an instance; release the result with [`patrol_string_free`].
///
/// # Safety
/// `inst` must be a live instance handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn patrol_instance_to_json(inst: *const PatrolInstance, out: *mut *mut c_char) -> PatrolStatus {
    guard(|| {
        let inst = unsafe { as_ref(inst, "inst") }?;
        let s = into_c_string(instance_to_json(&inst.0));
        unsafe { write_out(out, s, "out") }.inspect_err(|_| drop(unsafe { CString::from_raw(s) }))
    })
}

/// Runs a solver. `algorithm` is a [`PatrolAlgorithm`] value; `config` may
/// be NULL for defaults and is ignored by the approximation algorithm.
///
/// # Safety
/// `inst` must be a live instance handle, `config` NULL or readable, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn patrol_solve(
    inst: *const PatrolInstance,
    algorithm: u32,
    config: *const PatrolGreedyConfig,
    out: *mut *mut PatrolSolution,
) -> PatrolStatus {
    guard(|| {
        let inst = unsafe { as_ref(inst, "inst") }?;
        let cfg = match unsafe { config.as_ref() } {
            None => GreedyConfig::default(),
            Some(c) => {
                if c.m_den == 0 {
                    return Err(Failure(PatrolStatus::InvalidConfig, "m_den is zero".into()));
                }
                GreedyConfig {
                    m: Rational::new(c.m_num.into(), c.m_den.into()),
                    restarts: c.restarts,
                    seed: c.seed,
                }
            }
        };
        let algo = match algorithm {
            a if a == PatrolAlgorithm::Approx as u32 => Algorithm::Approx,
            a if a == PatrolAlgorithm::Greedy as u32 => Algorithm::Greedy,
            a if a == PatrolAlgorithm::OrienteeringGreedy as u32 => Algorithm::OGreedy,
            a => return Err(Failure(PatrolStatus::InvalidConfig, format!("unknown algorithm {a}"))),
        };
        let sol = algo.solve(&inst.0, &cfg)?;
        let handle = Box::into_raw(Box::new(PatrolSolution(sol)));
        unsafe { write_out(out, handle, "out") }.inspect_err(|_| drop(unsafe { Box::from_raw(handle) }))
    })
}

/// Parses a solution. Vertex indices are checked later, against an instance.
///
/// # Safety
/// `json` must be NULL or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn patrol_solution_from_json(json: *const c_char, out: *mut *mut PatrolSolution) -> PatrolStatus {
    guard(|| {
        let text = unsafe { read_str(json, "json") }?;
        let sol = parse_solution(text)?;
        let handle = Box::into_raw(Box::new(PatrolSolution(sol)));
        unsafe { write_out(out, handle, "out") }.inspect_err(|_| drop(unsafe { Box::from_raw(handle) }))
    })
}

/// # Safety
/// `sol` must be a live solution handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn patrol_solution_to_json(sol: *const PatrolSolution, out: *mut *mut c_char) -> PatrolStatus {
    guard(|| {
        let sol = unsafe { as_ref(sol, "sol") }?;
        let s = into_c_string(solution_to_json(&sol.0));
        unsafe { write_out(out, s, "out") }.inspect_err(|_| drop(unsafe { CString::from_raw(s) }))
    })
}

/// Number of robots (walks), or 0 for NULL.
///
/// # Safety
/// `sol` must be NULL or a live solution handle.
#[no_mangle]
pub unsafe extern "C" fn patrol_solution_robot_count(sol: *const PatrolSolution) -> usize {
    unsafe { sol.as_ref() }.map_or(0, |s| s.0.robots())
}

/// # Safety
/// `sol` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn patrol_solution_free(sol: *mut PatrolSolution) {
    if !sol.is_null() {
        drop(unsafe { Box::from_raw(sol) });
    }
}

/// Evaluates `sol` on `inst`. Writes the verdict to `feasible` and, when
/// `report` is not NULL, a JSON object with per-vertex `latency`,
/// `constraint` and `feasible` arrays plus the `overall` verdict.
///
/// # Safety
/// Handles must be live; `feasible` writable; `report` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn patrol_verify(
    inst: *const PatrolInstance,
    sol: *const PatrolSolution,
    feasible: *mut bool,
    report: *mut *mut c_char,
) -> PatrolStatus {
    guard(|| {
        let inst = unsafe { as_ref(inst, "inst") }?;
        let sol = unsafe { as_ref(sol, "sol") }?;
        let rep = verify(&sol.0, &inst.0)?;
        unsafe { write_out(feasible, rep.is_feasible(), "feasible") }?;
        if !report.is_null() {
            let json = serde_json::to_string(&rep).expect("report serializes");
            unsafe { report.write(into_c_string(json)) };
        }
        Ok(())
    })
}

/// Fewest robots for a tiny instance by exhaustive search over the time grid,
/// bounded by `horizon` steps. Fails with `PATROL_STATUS_TOO_LARGE` beyond the
/// search limits.
///
/// # Safety
/// `inst` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn patrol_exact_min_robots(
    inst: *const PatrolInstance,
    horizon: u32,
    out: *mut usize,
) -> PatrolStatus {
    guard(|| {
        let inst = unsafe { as_ref(inst, "inst") }?;
        let k = exact_min_robots(&inst.0, horizon)?;
        unsafe { write_out(out, k, "out") }
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn patrol_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
