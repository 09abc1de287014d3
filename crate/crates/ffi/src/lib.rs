//! C ABI for `cops-core`.
//!
//! Every fallible function returns a [`CopsStatus`] and writes its result
//! through an out pointer. On failure a message is available from
//! [`cops_last_error`] on the same thread. Handles are opaque and must be
//! released with the matching `*_free` function; strings returned by the
//! library are released with [`cops_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use cops_core::bounds::{self, BoundsError};
use cops_core::game::{
    self, GameError, GameState, Side, SolveLimits, SolveResult, DEFAULT_STATE_LIMIT,
};
use cops_core::generators;
use cops_core::guarding::{self, GuardConfig, GuardError, RandomWalk};
use cops_core::io::{self, ReadFileError};
use cops_core::{Graph, GraphError};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CopsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidGraph = 3,
    Io = 4,
    StateLimit = 5,
    CopLimit = 6,
    Disconnected = 7,
    NotIsometric = 8,
    Internal = 99,
}

/// Opaque graph handle.
pub struct CopsGraph(Graph);

/// Opaque handle to a solved game.
pub struct CopsSolveResult(SolveResult);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(CopsStatus, String);

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure(CopsStatus::InvalidGraph, e.to_string())
    }
}

impl From<GameError> for Failure {
    fn from(e: GameError) -> Self {
        let code = match e {
            GameError::StateLimit { .. } => CopsStatus::StateLimit,
            GameError::CopLimit(_) => CopsStatus::CopLimit,
            GameError::Disconnected => CopsStatus::Disconnected,
            GameError::Graph(_) => CopsStatus::InvalidGraph,
            _ => CopsStatus::InvalidArgument,
        };
        Failure(code, e.to_string())
    }
}

impl From<BoundsError> for Failure {
    fn from(e: BoundsError) -> Self {
        Failure(CopsStatus::InvalidArgument, e.to_string())
    }
}

impl From<GuardError> for Failure {
    fn from(e: GuardError) -> Self {
        let code = match e {
            GuardError::NotIsometric(_) => CopsStatus::NotIsometric,
            GuardError::Graph(_) => CopsStatus::InvalidGraph,
            GuardError::TooSmall => CopsStatus::InvalidArgument,
        };
        Failure(code, e.to_string())
    }
}

impl From<ReadFileError> for Failure {
    fn from(e: ReadFileError) -> Self {
        let code = match e {
            ReadFileError::Io { .. } => CopsStatus::Io,
            ReadFileError::Graph { .. } => CopsStatus::InvalidGraph,
        };
        Failure(code, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(CopsStatus::NullPointer, format!("{what} is null"))
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn run(f: impl FnOnce() -> Result<(), Failure>) -> CopsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            CopsStatus::Ok
        }
        Ok(Err(Failure(code, message))) => {
            set_error(&message);
            code
        }
        Err(_) => {
            set_error("internal panic");
            CopsStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(CopsStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn graph_arg<'a>(g: *const CopsGraph) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| null("graph"))
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_graph(out: *mut *mut CopsGraph, g: Graph) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(Box::into_raw(Box::new(CopsGraph(g))));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|e| Failure(CopsStatus::Internal, e.to_string()))?;
    out.write(c.into_raw());
    Ok(())
}

fn limits(state_limit: u64, max_k: usize) -> SolveLimits {
    SolveLimits {
        state_limit: if state_limit == 0 {
            DEFAULT_STATE_LIMIT
        } else {
            state_limit
        },
        max_k: (max_k > 0).then_some(max_k),
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into the library.
#[no_mangle]
pub extern "C" fn cops_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn cops_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Build a graph on `n` vertices from `edge_count` pairs stored flat in
/// `edges` (`2 * edge_count` entries).
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cops_graph_from_edges(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut CopsGraph,
) -> CopsStatus {
    run(|| {
        let len = edge_count
            .checked_mul(2)
            .ok_or_else(|| Failure(CopsStatus::InvalidArgument, "edge count overflows".into()))?;
        let flat = slice_arg(edges, len, "edges")?;
        let g = Graph::from_edges(n, flat.chunks_exact(2).map(|p| (p[0], p[1])))?;
        put_graph(out, g)
    })
}

/// Generate a named family, e.g. `"petersen"`, `"grid:4:4"`, `"gnp:30:0.2:7"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cops_graph_generate(
    spec: *const c_char,
    out: *mut *mut CopsGraph,
) -> CopsStatus {
    run(|| {
        let g = generators::gen_named(str_arg(spec, "spec")?)?;
        put_graph(out, g)
    })
}

/// Parse edge-list text: vertex count on the first line, then `u v` pairs.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cops_graph_parse(
    text: *const c_char,
    out: *mut *mut CopsGraph,
) -> CopsStatus {
    run(|| {
        let g = io::read_graph(str_arg(text, "text")?)?;
        put_graph(out, g)
    })
}

/// Read an edge-list file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cops_graph_read_file(
    path: *const c_char,
    out: *mut *mut CopsGraph,
) -> CopsStatus {
    run(|| {
        let g = io::read_graph_file(Path::new(str_arg(path, "path")?))?;
        put_graph(out, g)
    })
}

/// # Safety
/// `g` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cops_graph_free(g: *mut CopsGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn cops_graph_vertex_count(g: *const CopsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn cops_graph_edge_count(g: *const CopsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Edge-list text of the graph.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cops_graph_to_text(
    g: *const CopsGraph,
    out: *mut *mut c_char,
) -> CopsStatus {
    run(|| put_string(out, io::write_graph(graph_arg(g)?)))
}

/// Cop number, summed over components. `state_limit = 0` uses the default
/// limit; `max_k = 0` means no cap on the cop count.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cops_cop_number(
    g: *const CopsGraph,
    state_limit: u64,
    max_k: usize,
    out: *mut usize,
) -> CopsStatus {
    run(|| {
        let c = game::cop_number(graph_arg(g)?, &limits(state_limit, max_k))?;
        put(out, c)
    })
}

/// Solve the game with `k` cops on a connected graph.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cops_solve(
    g: *const CopsGraph,
    k: usize,
    state_limit: u64,
    out: *mut *mut CopsSolveResult,
) -> CopsStatus {
    run(|| {
        let res = game::solve(graph_arg(g)?, k, &limits(state_limit, 0))?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        out.write(Box::into_raw(Box::new(CopsSolveResult(res))));
        Ok(())
    })
}

/// # Safety
/// `r` must come from [`cops_solve`] and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cops_solve_result_free(r: *mut CopsSolveResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Whether the cops win; false for a null handle.
///
/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn cops_solve_result_cop_win(r: *const CopsSolveResult) -> bool {
    r.as_ref().is_some_and(|r| r.0.cop_win())
}

/// Game value from the best cop placement, or -1 when the robber wins.
///
/// # Safety
/// `r` must be a live result handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cops_solve_result_value(
    r: *const CopsSolveResult,
    out: *mut i64,
) -> CopsStatus {
    run(|| {
        let r = r.as_ref().ok_or_else(|| null("result"))?;
        put(out, r.0.capture_time_max().map_or(-1, i64::from))
    })
}

/// Capture time of one state, or -1 when the robber escapes forever.
///
/// # Safety
/// `r` must be a live result handle, `cops` must point to `k` values and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cops_solve_result_capture_time(
    r: *const CopsSolveResult,
    cops: *const usize,
    k: usize,
    robber: usize,
    robber_to_move: bool,
    out: *mut i64,
) -> CopsStatus {
    run(|| {
        let r = r.as_ref().ok_or_else(|| null("result"))?;
        let cops = slice_arg(cops, k, "cops")?.to_vec();
        let side = if robber_to_move {
            Side::Robber
        } else {
            Side::Cops
        };
        let t = r.0.capture_time(&GameState::new(cops, robber, side))?;
        put(out, t.map_or(-1, i64::from))
    })
}

/// Bound report as JSON. A negative `genus` means unknown.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cops_bounds_json(
    g: *const CopsGraph,
    genus: i64,
    out: *mut *mut c_char,
) -> CopsStatus {
    run(|| {
        let report = bounds::full_report(graph_arg(g)?, (genus >= 0).then_some(genus))?;
        let text = serde_json::to_string(&report)
            .map_err(|e| Failure(CopsStatus::Internal, e.to_string()))?;
        put_string(out, text)
    })
}

/// Run the shadow guard on `path` against a random-walk robber and return
/// the verdict as JSON.
///
/// # Safety
/// `g` must be a live graph handle, `path` must point to `path_len` values
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cops_guard_json(
    g: *const CopsGraph,
    path: *const usize,
    path_len: usize,
    trials: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> CopsStatus {
    run(|| {
        let cfg = GuardConfig {
            trials,
            seed,
            ..GuardConfig::default()
        };
        let verdict = guarding::verify_guard(
            graph_arg(g)?,
            slice_arg(path, path_len, "path")?,
            &mut RandomWalk,
            &cfg,
        )?;
        let text = serde_json::to_string(&verdict)
            .map_err(|e| Failure(CopsStatus::Internal, e.to_string()))?;
        put_string(out, text)
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cops_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
