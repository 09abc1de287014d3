use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use cops_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(cops_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn generate(spec: &str) -> *mut CopsGraph {
    let spec = CString::new(spec).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { cops_graph_generate(spec.as_ptr(), &mut g) },
        CopsStatus::Ok
    );
    g
}

fn take_string(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { cops_string_free(s) };
    out
}

#[test]
fn cop_numbers_through_the_abi() {
    for (spec, want) in [
        ("petersen", 3),
        ("cycle:4", 2),
        ("grid:3:3", 2),
        ("heawood", 3),
    ] {
        let g = generate(spec);
        let mut c = 0;
        assert_eq!(unsafe { cops_cop_number(g, 0, 0, &mut c) }, CopsStatus::Ok);
        assert_eq!(c, want, "{spec}");
        unsafe { cops_graph_free(g) };
    }
}

#[test]
fn solve_handle_accessors() {
    let g = generate("path:5");
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { cops_solve(g, 1, 0, &mut r) }, CopsStatus::Ok);
    assert!(unsafe { cops_solve_result_cop_win(r) });
    let mut value = 0i64;
    assert_eq!(
        unsafe { cops_solve_result_value(r, &mut value) },
        CopsStatus::Ok
    );
    assert_eq!(value, 2);
    let cops = [0usize];
    let mut t = 0i64;
    assert_eq!(
        unsafe { cops_solve_result_capture_time(r, cops.as_ptr(), 1, 4, false, &mut t) },
        CopsStatus::Ok
    );
    assert_eq!(t, 4);
    assert_eq!(
        unsafe { cops_solve_result_capture_time(r, cops.as_ptr(), 1, 0, true, &mut t) },
        CopsStatus::Ok
    );
    assert_eq!(t, 0);
    let wrong_k = [0usize, 1];
    assert_eq!(
        unsafe { cops_solve_result_capture_time(r, wrong_k.as_ptr(), 2, 0, true, &mut t) },
        CopsStatus::InvalidArgument
    );
    unsafe {
        cops_solve_result_free(r);
        cops_graph_free(g);
    }

    let c5 = generate("cycle:5");
    assert_eq!(unsafe { cops_solve(c5, 1, 0, &mut r) }, CopsStatus::Ok);
    assert_eq!(
        unsafe { cops_solve_result_value(r, &mut value) },
        CopsStatus::Ok
    );
    assert_eq!(value, -1);
    unsafe {
        cops_solve_result_free(r);
        cops_graph_free(c5);
    }
}

#[test]
fn error_codes_and_messages() {
    let mut g = ptr::null_mut();
    let bad = CString::new("nosuch:3").unwrap();
    assert_eq!(
        unsafe { cops_graph_generate(bad.as_ptr(), &mut g) },
        CopsStatus::InvalidGraph
    );
    assert!(!last_error().is_empty());
    assert!(g.is_null());

    assert_eq!(
        unsafe { cops_graph_generate(ptr::null(), &mut g) },
        CopsStatus::NullPointer
    );
    let mut c = 0;
    assert_eq!(
        unsafe { cops_cop_number(ptr::null(), 0, 0, &mut c) },
        CopsStatus::NullPointer
    );

    let loops = [0usize, 0];
    assert_eq!(
        unsafe { cops_graph_from_edges(2, loops.as_ptr(), 1, &mut g) },
        CopsStatus::InvalidGraph
    );

    let p = generate("petersen");
    assert_eq!(
        unsafe { cops_cop_number(p, 100, 0, &mut c) },
        CopsStatus::StateLimit
    );
    assert_eq!(
        unsafe { cops_cop_number(p, 0, 2, &mut c) },
        CopsStatus::CopLimit
    );
    assert_eq!(unsafe { cops_cop_number(p, 0, 0, &mut c) }, CopsStatus::Ok);
    assert!(last_error().is_empty());
    unsafe { cops_graph_free(p) };

    let two = [0usize, 1, 2, 3];
    assert_eq!(
        unsafe { cops_graph_from_edges(4, two.as_ptr(), 2, &mut g) },
        CopsStatus::Ok
    );
    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { cops_solve(g, 1, 0, &mut r) },
        CopsStatus::Disconnected
    );
    assert_eq!(unsafe { cops_cop_number(g, 0, 0, &mut c) }, CopsStatus::Ok);
    assert_eq!(c, 2);
    unsafe { cops_graph_free(g) };

    let missing = CString::new("/nonexistent/graph.edges").unwrap();
    assert_eq!(
        unsafe { cops_graph_read_file(missing.as_ptr(), &mut g) },
        CopsStatus::Io
    );
}

#[test]
fn text_round_trip_and_json() {
    let text = CString::new("# square\n4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { cops_graph_parse(text.as_ptr(), &mut g) },
        CopsStatus::Ok
    );
    assert_eq!(unsafe { cops_graph_edge_count(g) }, 4);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cops_graph_to_text(g, &mut s) }, CopsStatus::Ok);
    assert!(take_string(s).starts_with("4\n"));

    let path = [0usize, 1, 2];
    assert_eq!(
        unsafe { cops_guard_json(g, path.as_ptr(), 3, 50, 9, &mut s) },
        CopsStatus::Ok
    );
    let verdict: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(verdict["violations"], 0);
    assert_eq!(verdict["trials"], 50);

    assert_eq!(unsafe { cops_bounds_json(g, -1, &mut s) }, CopsStatus::Ok);
    let report: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(report["n"], 4);
    unsafe { cops_graph_free(g) };
}

#[test]
fn header_declares_every_export() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/cops.h")).unwrap();
    let source =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15);
    for name in exports {
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
}

/// Compiles the C smoke program against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    let Ok(exe) = std::env::current_exe() else {
        return;
    };
    // target/<profile>/deps/<test> -> target/<profile>
    let profile_dir = exe
        .parent()
        .and_then(|d| d.parent())
        .map(PathBuf::from)
        .unwrap();
    let lib = profile_dir.join("libcops_ffi.a");
    let compiler = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || Command::new(&compiler).arg("--version").output().is_err() {
        eprintln!(
            "skipping: no C compiler or static library at {}",
            lib.display()
        );
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let bin = dir.path().join("smoke");
    let manifest = env!("CARGO_MANIFEST_DIR");
    let status = Command::new(&compiler)
        .arg(format!("{manifest}/tests/c/smoke.c"))
        .arg(format!("-I{manifest}/include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
