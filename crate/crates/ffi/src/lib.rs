//! C interface to the wsbridge Mini-Python frontend.
//!
//! Frontends are opaque handles created with [`wsb_frontend_new`] and
//! released with [`wsb_frontend_free`]. Operations return a [`WsbStatus`]
//! and hand results back through an out-pointer as NUL-terminated UTF-8
//! strings that the caller releases with [`wsb_string_free`]. Details of the
//! most recent failure on the calling thread are available from
//! [`wsb_last_error_message`] and [`wsb_last_error_code`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use wsbridge::token::debug_dump;
use wsbridge::wellformed::check_wellformed;
use wsbridge::{Error, Frontend};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WsbStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Input was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Lexing, indentation or parsing failed.
    SyntaxError = 3,
    /// Parsing succeeded but post-parse checks reported problems.
    Diagnostics = 4,
    /// Grammar components could not be composed.
    CompositionError = 5,
    /// An internal panic was caught at the boundary.
    Panic = 6,
}

/// Output format for [`wsb_parse`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WsbFormat {
    Json = 0,
    Sexpr = 1,
}

/// Opaque frontend handle.
pub struct WsbFrontend {
    inner: Frontend,
}

struct LastError {
    code: CString,
    message: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<LastError>> = const { RefCell::new(None) };
}

fn c_string(s: String) -> CString {
    CString::new(s).unwrap_or_else(|e| {
        let mut bytes = e.into_vec();
        bytes.retain(|&b| b != 0);
        CString::new(bytes).expect("NULs removed")
    })
}

fn set_error(code: &str, message: String) {
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(LastError {
            code: c_string(code.to_string()),
            message: c_string(message),
        });
    });
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn syntax_error(e: &Error) -> WsbStatus {
    let message = match e.pos() {
        Some(p) => format!("{}:{}: {} {e}", p.line, p.column, e.code()),
        None => format!("{} {e}", e.code()),
    };
    set_error(e.code(), message);
    match e {
        Error::CompositionConflict(_) => WsbStatus::CompositionError,
        _ => WsbStatus::SyntaxError,
    }
}

/// Runs `f` with panics turned into [`WsbStatus::Panic`].
fn guarded(f: impl FnOnce() -> WsbStatus) -> WsbStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("Panic", "internal error".to_string());
            WsbStatus::Panic
        }
    }
}

/// # Safety
/// `ptr` must be null or point to a NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, WsbStatus> {
    if ptr.is_null() {
        set_error("NullArgument", "null string argument".to_string());
        return Err(WsbStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|e| {
        set_error("InvalidUtf8", e.to_string());
        WsbStatus::InvalidUtf8
    })
}

/// # Safety
/// `out` must be null or valid for a pointer write.
unsafe fn write_out(out: *mut *mut c_char, text: String) {
    *out = c_string(text).into_raw();
}

/// Common argument handling for the string-in, string-out calls.
///
/// # Safety
/// See the public functions.
unsafe fn with_source(
    fe: *const WsbFrontend,
    source: *const c_char,
    out: *mut *mut c_char,
    f: impl FnOnce(&Frontend, &str) -> Result<String, WsbStatus>,
) -> WsbStatus {
    guarded(|| {
        if fe.is_null() || out.is_null() {
            set_error("NullArgument", "null handle or output pointer".to_string());
            return WsbStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let src = match read_str(source) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match f(&(*fe).inner, src) {
            Ok(text) => {
                write_out(out, text);
                WsbStatus::Ok
            }
            Err(status) => status,
        }
    })
}

/// Creates a Mini-Python frontend. Never returns null.
#[no_mangle]
pub extern "C" fn wsb_frontend_new() -> *mut WsbFrontend {
    Box::into_raw(Box::new(WsbFrontend {
        inner: Frontend::minipython(),
    }))
}

/// Creates a Mini-Python frontend without the named grammar components
/// (for example `"PyStatements"`). Returns null on failure; see
/// [`wsb_last_error_message`].
///
/// # Safety
/// `names` must point to `count` NUL-terminated strings (it may be null when
/// `count` is 0).
#[no_mangle]
pub unsafe extern "C" fn wsb_frontend_new_without(
    names: *const *const c_char,
    count: usize,
) -> *mut WsbFrontend {
    let mut result = ptr::null_mut();
    guarded(|| {
        if names.is_null() && count > 0 {
            set_error("NullArgument", "null component list".to_string());
            return WsbStatus::NullArgument;
        }
        let mut excluded = Vec::with_capacity(count);
        for i in 0..count {
            match read_str(*names.add(i)) {
                Ok(s) => excluded.push(s),
                Err(status) => return status,
            }
        }
        match Frontend::minipython_without(&excluded) {
            Ok(inner) => {
                result = Box::into_raw(Box::new(WsbFrontend { inner }));
                WsbStatus::Ok
            }
            Err(e) => syntax_error(&e),
        }
    });
    result
}

/// Sets the tab stop used to compute indentation columns.
///
/// # Safety
/// `fe` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wsb_frontend_set_tab_stop(fe: *mut WsbFrontend, tab_stop: u32) -> WsbStatus {
    guarded(|| {
        if fe.is_null() {
            set_error("NullArgument", "null handle".to_string());
            return WsbStatus::NullArgument;
        }
        (*fe).inner.set_tab_stop(tab_stop);
        WsbStatus::Ok
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `fe` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wsb_frontend_free(fe: *mut WsbFrontend) {
    if !fe.is_null() {
        drop(Box::from_raw(fe));
    }
}

/// Parses `source` and writes the syntax tree to `*out`.
///
/// # Safety
/// `fe` must be a live handle, `source` a NUL-terminated string and `out`
/// valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn wsb_parse(
    fe: *const WsbFrontend,
    source: *const c_char,
    format: WsbFormat,
    out: *mut *mut c_char,
) -> WsbStatus {
    with_source(fe, source, out, |fe, src| {
        let m = fe.parse(src).map_err(|e| syntax_error(&e))?;
        Ok(match format {
            WsbFormat::Json => m.to_json(),
            WsbFormat::Sexpr => m.to_sexpr(),
        })
    })
}

/// Parses `source` and runs the post-parse checks. On
/// [`WsbStatus::Diagnostics`] `*out` holds one `line:col: CODE message` line
/// per diagnostic; on success it is an empty string.
///
/// # Safety
/// As for [`wsb_parse`].
#[no_mangle]
pub unsafe extern "C" fn wsb_check(
    fe: *const WsbFrontend,
    source: *const c_char,
    out: *mut *mut c_char,
) -> WsbStatus {
    let mut found = false;
    let status = with_source(fe, source, out, |fe, src| {
        let m = fe.parse(src).map_err(|e| syntax_error(&e))?;
        let diags = check_wellformed(&m);
        found = !diags.is_empty();
        Ok(diags.iter().map(|d| format!("{d}\n")).collect())
    });
    if status == WsbStatus::Ok && found {
        set_error("WS001", "post-parse checks reported diagnostics".to_string());
        WsbStatus::Diagnostics
    } else {
        status
    }
}

/// Renders `source` with explicit block and statement delimiters.
///
/// # Safety
/// As for [`wsb_parse`].
#[no_mangle]
pub unsafe extern "C" fn wsb_render(
    fe: *const WsbFrontend,
    source: *const c_char,
    out: *mut *mut c_char,
) -> WsbStatus {
    with_source(fe, source, out, |fe, src| {
        fe.render(src).map_err(|e| syntax_error(&e))
    })
}

/// Dumps tokens, one per line: the processed stream when `processed` is
/// true, the raw lexer output otherwise.
///
/// # Safety
/// As for [`wsb_parse`].
#[no_mangle]
pub unsafe extern "C" fn wsb_tokens(
    fe: *const WsbFrontend,
    source: *const c_char,
    processed: bool,
    out: *mut *mut c_char,
) -> WsbStatus {
    with_source(fe, source, out, |fe, src| {
        let tokens = if processed {
            fe.processed_tokens(src)
        } else {
            fe.raw_tokens(src)
        };
        tokens.map(|t| debug_dump(&t)).map_err(|e| syntax_error(&e))
    })
}

/// Message of the last failure on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn wsb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |e| e.message.as_ptr())
    })
}

/// Error code of the last failure on this thread (such as
/// `"IndentMismatch"`), or null.
#[no_mangle]
pub extern "C" fn wsb_last_error_code() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |e| e.code.as_ptr())
    })
}

/// Releases a string returned through an out-pointer. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wsb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn wsb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
