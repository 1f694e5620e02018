use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use wsbridge_ffi::*;

fn owned(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { wsb_string_free(s) };
    text
}

fn last_code() -> Option<String> {
    let p = wsb_last_error_code();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string())
}

fn last_message() -> String {
    unsafe { CStr::from_ptr(wsb_last_error_message()) }
        .to_str()
        .unwrap()
        .to_string()
}

struct Handle(*mut WsbFrontend);

impl Handle {
    fn new() -> Self {
        Handle(wsb_frontend_new())
    }
}

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { wsb_frontend_free(self.0) };
    }
}

#[test]
fn parse_sexpr_and_json() {
    let fe = Handle::new();
    let src = CString::new("x = 1 + 2\n").unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { wsb_parse(fe.0, src.as_ptr(), WsbFormat::Sexpr, &mut out) };
    assert_eq!(st, WsbStatus::Ok);
    assert_eq!(owned(out), "(Module (Assign = x (Binary + 1 2)))");
    assert_eq!(last_code(), None);

    let st = unsafe { wsb_parse(fe.0, src.as_ptr(), WsbFormat::Json, &mut out) };
    assert_eq!(st, WsbStatus::Ok);
    assert!(owned(out).contains("\"type\": \"Assign\""));
}

#[test]
fn syntax_errors_carry_code_and_position() {
    let fe = Handle::new();
    let src = CString::new("  x = 1\n").unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { wsb_parse(fe.0, src.as_ptr(), WsbFormat::Json, &mut out) };
    assert_eq!(st, WsbStatus::SyntaxError);
    assert!(out.is_null());
    assert_eq!(last_code().as_deref(), Some("IndentMismatch"));
    assert!(last_message().starts_with("1:0: IndentMismatch"), "{}", last_message());
}

#[test]
fn check_reports_diagnostics() {
    let fe = Handle::new();
    let src = CString::new("y = a++\n").unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { wsb_check(fe.0, src.as_ptr(), &mut out) };
    assert_eq!(st, WsbStatus::Diagnostics);
    assert_eq!(owned(out), "1:4: WS001 suffix increment is not allowed\n");

    let clean = CString::new("y = a\n").unwrap();
    let st = unsafe { wsb_check(fe.0, clean.as_ptr(), &mut out) };
    assert_eq!(st, WsbStatus::Ok);
    assert_eq!(owned(out), "");
}

#[test]
fn render_and_tokens() {
    let fe = Handle::new();
    let src = CString::new("if a:\n    b = 1\n").unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { wsb_render(fe.0, src.as_ptr(), &mut out) };
    assert_eq!(st, WsbStatus::Ok);
    assert_eq!(owned(out), "if a:\u{2983}\nb=1\u{204F}\u{2984}\n");

    let st = unsafe { wsb_tokens(fe.0, src.as_ptr(), true, &mut out) };
    assert_eq!(st, WsbStatus::Ok);
    let dump = owned(out);
    assert!(dump.contains("BLOCK_START"));
    let st = unsafe { wsb_tokens(fe.0, src.as_ptr(), false, &mut out) };
    assert_eq!(st, WsbStatus::Ok);
    assert!(!owned(out).contains("BLOCK_START"));
}

#[test]
fn tab_stop() {
    let fe = Handle::new();
    let src = CString::new("if a:\n\tb\n").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { wsb_frontend_set_tab_stop(fe.0, 4) }, WsbStatus::Ok);
    unsafe { wsb_tokens(fe.0, src.as_ptr(), false, &mut out) };
    assert!(owned(out).contains("2:4 NAME \"b\""));
}

#[test]
fn composition_without_component() {
    let names = [CString::new("PyStatements").unwrap()];
    let ptrs: Vec<*const c_char> = names.iter().map(|n| n.as_ptr()).collect();
    let fe = unsafe { wsb_frontend_new_without(ptrs.as_ptr(), ptrs.len()) };
    assert!(!fe.is_null());
    let src = CString::new("for x in y:\n    pass\n").unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { wsb_parse(fe, src.as_ptr(), WsbFormat::Json, &mut out) };
    assert_eq!(st, WsbStatus::SyntaxError);
    assert_eq!(last_code().as_deref(), Some("NoStatementParser"));
    unsafe { wsb_frontend_free(fe) };

    let bogus = [CString::new("Nope").unwrap()];
    let ptrs: Vec<*const c_char> = bogus.iter().map(|n| n.as_ptr()).collect();
    let fe = unsafe { wsb_frontend_new_without(ptrs.as_ptr(), 1) };
    assert!(fe.is_null());
    assert_eq!(last_code().as_deref(), Some("CompositionConflict"));
}

#[test]
fn null_and_bad_arguments() {
    let fe = Handle::new();
    let mut out = ptr::null_mut();
    let st = unsafe { wsb_parse(fe.0, ptr::null(), WsbFormat::Json, &mut out) };
    assert_eq!(st, WsbStatus::NullArgument);
    let src = CString::new("x\n").unwrap();
    let st = unsafe { wsb_parse(ptr::null(), src.as_ptr(), WsbFormat::Json, &mut out) };
    assert_eq!(st, WsbStatus::NullArgument);
    let st = unsafe { wsb_render(fe.0, src.as_ptr(), ptr::null_mut()) };
    assert_eq!(st, WsbStatus::NullArgument);
    let bad = [0xffu8, 0];
    let st = unsafe { wsb_parse(fe.0, bad.as_ptr().cast(), WsbFormat::Json, &mut out) };
    assert_eq!(st, WsbStatus::InvalidUtf8);
    unsafe {
        wsb_string_free(ptr::null_mut());
        wsb_frontend_free(ptr::null_mut());
    }
    assert_eq!(unsafe { wsb_frontend_set_tab_stop(ptr::null_mut(), 4) }, WsbStatus::NullArgument);
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(wsb_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(crate_dir().join("include/wsbridge.h")).unwrap();
    for f in [
        "wsb_frontend_new(void)",
        "wsb_frontend_new_without",
        "wsb_frontend_set_tab_stop",
        "wsb_frontend_free",
        "wsb_parse",
        "wsb_check",
        "wsb_render",
        "wsb_tokens",
        "wsb_last_error_message",
        "wsb_last_error_code",
        "wsb_string_free",
        "wsb_version",
        "typedef struct WsbFrontend WsbFrontend",
        "WSB_STATUS_SYNTAX_ERROR = 3",
    ] {
        assert!(header.contains(f), "header lacks {f}");
    }
}

fn static_lib(profile_dir: &Path) -> Option<PathBuf> {
    let p = profile_dir.join("libwsbridge_ffi.a");
    p.exists().then_some(p)
}

/// Compiles and runs a small C program against the header and the static
/// library when a C compiler and the library are available.
#[test]
fn c_program_links_and_runs() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let Some(lib) = static_lib(profile_dir) else {
        eprintln!("static library not built; skipping C smoke test");
        return;
    };
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping C smoke test");
        return;
    }
    let out_exe = std::env::temp_dir().join(format!("wsbridge-smoke-{}", std::process::id()));
    let status = Command::new("cc")
        .arg(crate_dir().join("tests/smoke.c"))
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out_exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&out_exe).output().unwrap();
    let _ = std::fs::remove_file(&out_exe);
    assert!(run.status.success(), "smoke program exited with {:?}", run.status);
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
}
