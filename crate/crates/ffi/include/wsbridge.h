#ifndef WSBRIDGE_H
#define WSBRIDGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum WsbStatus {
  WSB_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  WSB_STATUS_NULL_ARGUMENT = 1,
  /**
   * Input was not valid UTF-8.
   */
  WSB_STATUS_INVALID_UTF8 = 2,
  /**
   * Lexing, indentation or parsing failed.
   */
  WSB_STATUS_SYNTAX_ERROR = 3,
  /**
   * Parsing succeeded but post-parse checks reported problems.
   */
  WSB_STATUS_DIAGNOSTICS = 4,
  /**
   * Grammar components could not be composed.
   */
  WSB_STATUS_COMPOSITION_ERROR = 5,
  /**
   * An internal panic was caught at the boundary.
   */
  WSB_STATUS_PANIC = 6,
} WsbStatus;

/**
 * Output format for [`wsb_parse`].
 */
typedef enum WsbFormat {
  WSB_FORMAT_JSON = 0,
  WSB_FORMAT_SEXPR = 1,
} WsbFormat;

/**
 * Opaque frontend handle.
 */
typedef struct WsbFrontend WsbFrontend;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a Mini-Python frontend. Never returns null.
 */
struct WsbFrontend *wsb_frontend_new(void);

/**
 * Creates a Mini-Python frontend without the named grammar components
 * (for example `"PyStatements"`). Returns null on failure; see
 * [`wsb_last_error_message`].
 *
 * # Safety
 * `names` must point to `count` NUL-terminated strings (it may be null when
 * `count` is 0).
 */
struct WsbFrontend *wsb_frontend_new_without(const char *const *names, size_t count);

/**
 * Sets the tab stop used to compute indentation columns.
 *
 * # Safety
 * `fe` must be null or a live handle.
 */
enum WsbStatus wsb_frontend_set_tab_stop(struct WsbFrontend *fe, uint32_t tab_stop);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `fe` must be null or a handle not yet freed.
 */
void wsb_frontend_free(struct WsbFrontend *fe);

/**
 * Parses `source` and writes the syntax tree to `*out`.
 *
 * # Safety
 * `fe` must be a live handle, `source` a NUL-terminated string and `out`
 * valid for a pointer write.
 */
enum WsbStatus wsb_parse(const struct WsbFrontend *fe,
                         const char *source,
                         enum WsbFormat format,
                         char **out);

/**
 * Parses `source` and runs the post-parse checks. On
 * [`WsbStatus::Diagnostics`] `*out` holds one `line:col: CODE message` line
 * per diagnostic; on success it is an empty string.
 *
 * # Safety
 * As for [`wsb_parse`].
 */
enum WsbStatus wsb_check(const struct WsbFrontend *fe, const char *source, char **out);

/**
 * Renders `source` with explicit block and statement delimiters.
 *
 * # Safety
 * As for [`wsb_parse`].
 */
enum WsbStatus wsb_render(const struct WsbFrontend *fe, const char *source, char **out);

/**
 * Dumps tokens, one per line: the processed stream when `processed` is
 * true, the raw lexer output otherwise.
 *
 * # Safety
 * As for [`wsb_parse`].
 */
enum WsbStatus wsb_tokens(const struct WsbFrontend *fe,
                          const char *source,
                          bool processed,
                          char **out);

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next call into this library on the same thread.
 */
const char *wsb_last_error_message(void);

/**
 * Error code of the last failure on this thread (such as
 * `"IndentMismatch"`), or null.
 */
const char *wsb_last_error_code(void);

/**
 * Releases a string returned through an out-pointer. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void wsb_string_free(char *s);

/**
 * Library version, statically allocated.
 */
const char *wsb_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WSBRIDGE_H */
