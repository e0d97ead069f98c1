//! C ABI over `raagscope`.
//!
//! Graphs cross the boundary as opaque handles. Every entry point returns a
//! [`RaagStatus`]; results come back through out-pointers. Strings returned
//! by this library must be released with [`raag_string_free`], graphs with
//! [`raag_graph_free`]. Panics are caught and reported as `RAAG_PANIC`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use raagscope::graph::{emit_graph, parse_graph, EmitFormat, ParseFormat};
use raagscope::report::{Parameters, Report};
use raagscope::words::{Word, WordEngine};
use raagscope::{classify::classify_timed, ClassifyConfig, Graph, Verdict};

#[repr(C)]
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RaagStatus {
    RAAG_OK = 0,
    RAAG_NULL_POINTER = 1,
    RAAG_INVALID_UTF8 = 2,
    RAAG_PARSE_ERROR = 3,
    RAAG_WORD_ERROR = 4,
    RAAG_SOUNDNESS_ERROR = 5,
    RAAG_PANIC = 6,
}

#[repr(C)]
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RaagVerdict {
    RAAG_NO_SURFACE_SUBGROUP = 0,
    RAAG_HAS_SURFACE_SUBGROUP = 1,
    RAAG_UNKNOWN = 2,
}

/// Opaque graph handle.
pub struct RaagGraph {
    graph: Graph,
}

use RaagStatus::*;

fn guard(f: impl FnOnce() -> RaagStatus) -> RaagStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(RAAG_PANIC)
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, RaagStatus> {
    if s.is_null() {
        return Err(RAAG_NULL_POINTER);
    }
    CStr::from_ptr(s).to_str().map_err(|_| RAAG_INVALID_UTF8)
}

fn into_c(s: String) -> *mut c_char {
    // Rust strings produced here never hold NUL bytes.
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Parses graph6 or edgelist text (auto-detected) into a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn raag_graph_parse(text: *const c_char, out: *mut *mut RaagGraph) -> RaagStatus {
    guard(|| {
        if out.is_null() {
            return RAAG_NULL_POINTER;
        }
        *out = ptr::null_mut();
        let text = match read_str(text) {
            Ok(t) => t,
            Err(e) => return e,
        };
        let bytes = text.as_bytes();
        match parse_graph(bytes, ParseFormat::detect(bytes)) {
            Ok(graph) => {
                *out = Box::into_raw(Box::new(RaagGraph { graph }));
                RAAG_OK
            }
            Err(_) => RAAG_PARSE_ERROR,
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `g` must come from [`raag_graph_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn raag_graph_free(g: *mut RaagGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn raag_graph_vertex_count(g: *const RaagGraph, out: *mut usize) -> RaagStatus {
    guard(|| {
        if g.is_null() || out.is_null() {
            return RAAG_NULL_POINTER;
        }
        *out = (*g).graph.vertex_count();
        RAAG_OK
    })
}

/// Writes the graph6 encoding to `*out`.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn raag_graph_to_graph6(g: *const RaagGraph, out: *mut *mut c_char) -> RaagStatus {
    guard(|| {
        if g.is_null() || out.is_null() {
            return RAAG_NULL_POINTER;
        }
        *out = into_c(emit_graph(&(*g).graph, EmitFormat::Graph6).trim_end().to_string());
        RAAG_OK
    })
}

/// Classifies with the default settings and the given prover budget
/// (0 means the default). `json_out` may be null; otherwise it receives the
/// full JSON report.
///
/// # Safety
/// `g` must be a live handle, `verdict` a valid pointer, `json_out` null or valid.
#[no_mangle]
pub unsafe extern "C" fn raag_classify(
    g: *const RaagGraph,
    budget: usize,
    verdict: *mut RaagVerdict,
    json_out: *mut *mut c_char,
) -> RaagStatus {
    guard(|| {
        if g.is_null() || verdict.is_null() {
            return RAAG_NULL_POINTER;
        }
        if !json_out.is_null() {
            *json_out = ptr::null_mut();
        }
        let graph = &(*g).graph;
        let mut config = ClassifyConfig::default();
        if budget > 0 {
            config.prover.budget = budget;
        }
        let (v, timings) = match classify_timed(graph, &config) {
            Ok(r) => r,
            Err(_) => return RAAG_SOUNDNESS_ERROR,
        };
        *verdict = match &v {
            Verdict::NoSurfaceSubgroup(_) => RaagVerdict::RAAG_NO_SURFACE_SUBGROUP,
            Verdict::HasSurfaceSubgroup(_) => RaagVerdict::RAAG_HAS_SURFACE_SUBGROUP,
            Verdict::Unknown(_) => RaagVerdict::RAAG_UNKNOWN,
        };
        if !json_out.is_null() {
            let params = Parameters {
                budget: config.prover.budget,
                cocontract_depth: config.cocontract_depth,
                threads: 1,
                rule_order: config.prover.rule_order.iter().map(|k| k.tag().to_string()).collect(),
                catalog: None,
            };
            let report = Report::new(graph, params, v, timings);
            *json_out = into_c(serde_json::to_string(&report).expect("report serialises"));
        }
        RAAG_OK
    })
}

/// Decides whether `word` is trivial in the RAAG on `g`.
///
/// # Safety
/// `g` must be a live handle, `word` a NUL-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn raag_word_is_trivial(g: *const RaagGraph, word: *const c_char, out: *mut bool) -> RaagStatus {
    guard(|| {
        if g.is_null() || out.is_null() {
            return RAAG_NULL_POINTER;
        }
        let text = match read_str(word) {
            Ok(t) => t,
            Err(e) => return e,
        };
        let engine = WordEngine::new(&(*g).graph);
        match Word::parse(text).and_then(|w| engine.is_trivial(&w)) {
            Ok(t) => {
                *out = t;
                RAAG_OK
            }
            Err(_) => RAAG_WORD_ERROR,
        }
    })
}

/// Writes the normal form of `word` to `*out`.
///
/// # Safety
/// `g` must be a live handle, `word` a NUL-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn raag_word_normal_form(g: *const RaagGraph, word: *const c_char, out: *mut *mut c_char) -> RaagStatus {
    guard(|| {
        if g.is_null() || out.is_null() {
            return RAAG_NULL_POINTER;
        }
        *out = ptr::null_mut();
        let text = match read_str(word) {
            Ok(t) => t,
            Err(e) => return e,
        };
        let engine = WordEngine::new(&(*g).graph);
        match Word::parse(text).and_then(|w| engine.normal_form(&w)) {
            Ok(nf) => {
                *out = into_c(nf.to_string());
                RAAG_OK
            }
            Err(_) => RAAG_WORD_ERROR,
        }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn raag_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn raag_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
