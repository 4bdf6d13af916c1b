/* condlint: conditional anti-pattern analysis for Python source.
 *
 * C API over the analysis core. All objects are opaque handles created and
 * destroyed here; every function returns a cl_status unless noted. Strings
 * returned through out-parameters are owned by the handle they came from and
 * stay valid until that handle is destroyed, except those documented to
 * require cl_string_free. Handles must not be shared across threads without
 * external synchronization; distinct handles are independent.
 */

#ifndef CONDLINT_H
#define CONDLINT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CL_API __declspec(dllexport)
#elif defined(__GNUC__)
#define CL_API __attribute__((visibility("default")))
#else
#define CL_API
#endif

typedef enum cl_status {
  CL_OK = 0,
  CL_E_INVALID_ARG = 1,   /* null pointer, bad index, bad option value */
  CL_E_IO = 2,            /* unreadable file or directory */
  CL_E_PARSE = 3,         /* module has parse errors */
  CL_E_UNKNOWN_PATTERN = 4,
  CL_E_BAD_LAYOUT = 5,    /* malformed corpus layout pattern */
  CL_E_NO_MATCH = 6,      /* corpus layout matched no files */
  CL_E_UNKNOWN_FORMAT = 7,
  CL_E_INTERNAL = 8
} cl_status;

typedef struct cl_span {
  int32_t line_start; /* 1-based, inclusive */
  int32_t col_start;  /* 1-based byte column, inclusive */
  int32_t line_end;
  int32_t col_end;
} cl_span;

typedef struct cl_module cl_module;
typedef struct cl_result cl_result;
typedef struct cl_report cl_report;
typedef struct cl_corpus cl_corpus;

/* Library version string, e.g. "0.1.0". Static storage. */
CL_API const char* cl_version(void);

/* Message for the last error raised on this thread, or "" when none. */
CL_API const char* cl_last_error(void);

/* Frees a string returned by a *_render function. */
CL_API void cl_string_free(char* s);

/* ---- pattern registry ---- */

/* Number of known anti-pattern kinds. */
CL_API int32_t cl_pattern_count(void);
/* Stable identifier of the pattern at index (0 <= index < count). */
CL_API cl_status cl_pattern_id(int32_t index, const char** out_id);
/* Short human-readable description. */
CL_API cl_status cl_pattern_title(int32_t index, const char** out_title);
/* Validates a comma-separated id list. Returns CL_E_UNKNOWN_PATTERN and
 * reports the first unknown id via cl_last_error when invalid. */
CL_API cl_status cl_patterns_validate(const char* csv);

/* ---- single-module analysis ---- */

/* Parses source bytes. Always yields a module handle (even for invalid
 * source; inspect cl_module_error_count). path is used for reporting. */
CL_API cl_status cl_module_parse(const char* bytes, size_t len,
                                 const char* path, cl_module** out);
CL_API void cl_module_free(cl_module* m);

CL_API cl_status cl_module_lloc(const cl_module* m, int32_t* out);
CL_API cl_status cl_module_error_count(const cl_module* m, int32_t* out);
CL_API cl_status cl_module_error(const cl_module* m, int32_t index,
                                 const char** out_message, cl_span* out_span);

/* Runs the detectors. patterns_csv narrows the reported kinds (NULL or ""
 * keeps all); with_suggestions controls rewrite synthesis. Fails with
 * CL_E_PARSE when the module is invalid. */
CL_API cl_status cl_module_check(const cl_module* m, const char* patterns_csv,
                                 int with_suggestions, cl_result** out);
CL_API void cl_result_free(cl_result* r);

CL_API cl_status cl_result_count(const cl_result* r, int32_t* out);
CL_API cl_status cl_result_pattern(const cl_result* r, int32_t index,
                                   const char** out_id);
CL_API cl_status cl_result_span(const cl_result* r, int32_t index,
                                cl_span* out);
CL_API cl_status cl_result_message(const cl_result* r, int32_t index,
                                   const char** out);
CL_API cl_status cl_result_file(const cl_result* r, int32_t index,
                                const char** out);
/* Both out-params are set to NULL when the diagnostic has no rewrite. */
CL_API cl_status cl_result_suggestion(const cl_result* r, int32_t index,
                                      const char** out_replacement,
                                      const char** out_rationale);

/* ---- diagnostic reports ---- */

CL_API cl_status cl_report_new(cl_report** out);
CL_API void cl_report_free(cl_report* rep);
/* Copies every diagnostic of the result into the report. */
CL_API cl_status cl_report_add(cl_report* rep, const cl_result* r);
/* Renders "json", "csv", or "markdown" into *out (free with
 * cl_string_free). Diagnostics are sorted by file and position. */
CL_API cl_status cl_report_render(const cl_report* rep, const char* format,
                                  char** out);

/* ---- corpus analysis ---- */

typedef struct cl_corpus_options {
  const char* layout;   /* required, e.g. "{group}/{student}/*.py" */
  int32_t workers;      /* 0: choose automatically */
  int prevalence_by_submission; /* 0: by occurrence */
  const char* patterns_csv;     /* NULL or "": all patterns */
  int with_suggestions;
} cl_corpus_options;

/* Scans root, analyzes every matching file, and aggregates. Fails with
 * CL_E_IO when root is unreadable, CL_E_BAD_LAYOUT on a malformed layout,
 * CL_E_NO_MATCH when nothing matched. */
CL_API cl_status cl_corpus_run(const char* root,
                               const cl_corpus_options* options,
                               cl_corpus** out);
CL_API void cl_corpus_free(cl_corpus* c);

CL_API cl_status cl_corpus_file_counts(const cl_corpus* c, int64_t* total,
                                       int64_t* valid, int64_t* invalid);
CL_API cl_status cl_corpus_diagnostic_count(const cl_corpus* c, int64_t* out);
/* report: "summary", "prevalence", "students", "totals", "diagnostics",
 * "all" (every section; json/csv/markdown), or "stats" (csv only: the
 * lossless pattern-by-group table). Free *out with cl_string_free. */
CL_API cl_status cl_corpus_render(const cl_corpus* c, const char* report,
                                  const char* format, char** out);
/* Number of non-fatal notices (skipped files), and access to each. */
CL_API cl_status cl_corpus_notice_count(const cl_corpus* c, int32_t* out);
CL_API cl_status cl_corpus_notice(const cl_corpus* c, int32_t index,
                                  const char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CONDLINT_H */
