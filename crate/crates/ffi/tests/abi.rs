use std::ffi::{CStr, CString};
use std::ptr;

use raagscope_ffi::*;
use RaagStatus::*;

fn parse(text: &str) -> *mut RaagGraph {
    let c = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { raag_graph_parse(c.as_ptr(), &mut g) }, RAAG_OK);
    assert!(!g.is_null());
    g
}

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { raag_string_free(s) };
    out
}

#[test]
fn graph6_round_trip() {
    // C5 in graph6.
    let g = parse("Dhc");
    let mut n = 0usize;
    assert_eq!(unsafe { raag_graph_vertex_count(g, &mut n) }, RAAG_OK);
    assert_eq!(n, 5);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { raag_graph_to_graph6(g, &mut s) }, RAAG_OK);
    assert_eq!(take(s), "Dhc");
    unsafe { raag_graph_free(g) };
}

#[test]
fn classify_cycles() {
    let c5 = parse("Dhc");
    let mut v = RaagVerdict::RAAG_UNKNOWN;
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { raag_classify(c5, 0, &mut v, &mut json) }, RAAG_OK);
    assert_eq!(v, RaagVerdict::RAAG_HAS_SURFACE_SUBGROUP);
    let report: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    assert_eq!(report["verdict"], "HasSurfaceSubgroup");
    assert_eq!(report["certificate"]["type"], "obstruction");
    unsafe { raag_graph_free(c5) };

    let c4 = parse("vertices: a b c d\na b\nb c\nc d\nd a\n");
    assert_eq!(unsafe { raag_classify(c4, 0, &mut v, ptr::null_mut()) }, RAAG_OK);
    assert_eq!(v, RaagVerdict::RAAG_NO_SURFACE_SUBGROUP);
    unsafe { raag_graph_free(c4) };
}

#[test]
fn words() {
    let g = parse("vertices: a b c\na b\n");
    let w = CString::new("a b a^-1 b^-1").unwrap();
    let mut t = false;
    assert_eq!(unsafe { raag_word_is_trivial(g, w.as_ptr(), &mut t) }, RAAG_OK);
    assert!(t);
    let w = CString::new("a c a^-1 c^-1").unwrap();
    assert_eq!(unsafe { raag_word_is_trivial(g, w.as_ptr(), &mut t) }, RAAG_OK);
    assert!(!t);
    let w = CString::new("b a c c^-1").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { raag_word_normal_form(g, w.as_ptr(), &mut s) }, RAAG_OK);
    assert_eq!(take(s), "a b");
    let bad = CString::new("z").unwrap();
    assert_eq!(unsafe { raag_word_is_trivial(g, bad.as_ptr(), &mut t) }, RAAG_WORD_ERROR);
    unsafe { raag_graph_free(g) };
}

#[test]
fn error_codes() {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { raag_graph_parse(ptr::null(), &mut g) }, RAAG_NULL_POINTER);
    let bad = CString::new("vertices: a\na b\n").unwrap();
    assert_eq!(unsafe { raag_graph_parse(bad.as_ptr(), &mut g) }, RAAG_PARSE_ERROR);
    assert!(g.is_null());
    let bytes = [0xffu8, 0xfe, 0];
    assert_eq!(unsafe { raag_graph_parse(bytes.as_ptr().cast(), &mut g) }, RAAG_INVALID_UTF8);
    let mut v = RaagVerdict::RAAG_UNKNOWN;
    assert_eq!(unsafe { raag_classify(ptr::null(), 0, &mut v, ptr::null_mut()) }, RAAG_NULL_POINTER);
    unsafe {
        raag_graph_free(ptr::null_mut());
        raag_string_free(ptr::null_mut());
    }
    let version = unsafe { CStr::from_ptr(raag_version()) }.to_str().unwrap();
    assert_eq!(version, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_entry_point() {
    let header = include_str!("../include/raagscope.h");
    for name in [
        "raag_graph_parse",
        "raag_graph_free",
        "raag_graph_vertex_count",
        "raag_graph_to_graph6",
        "raag_classify",
        "raag_word_is_trivial",
        "raag_word_normal_form",
        "raag_string_free",
        "raag_version",
        "RAAG_SOUNDNESS_ERROR",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
