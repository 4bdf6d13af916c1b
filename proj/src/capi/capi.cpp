#include "condlint.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "core/analysis.hpp"
#include "core/corpus.hpp"
#include "core/parser.hpp"
#include "core/report.hpp"
#include "core/version.hpp"

using namespace condlint;

namespace {

thread_local std::string t_last_error;

cl_status fail(cl_status code, std::string message) {
  t_last_error = std::move(message);
  return code;
}

cl_span to_c(const Span& s) {
  return cl_span{s.line_start, s.col_start, s.line_end, s.col_end};
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

}  // namespace

struct cl_module {
  ParsedModule parsed;
};

struct cl_result {
  std::vector<Diagnostic> diagnostics;
};

struct cl_report {
  std::vector<Diagnostic> diagnostics;
};

struct cl_corpus {
  CorpusResult result;
};

extern "C" {

const char* cl_version(void) { return kVersion; }

const char* cl_last_error(void) { return t_last_error.c_str(); }

void cl_string_free(char* s) { delete[] s; }

int32_t cl_pattern_count(void) { return kPatternCount; }

cl_status cl_pattern_id(int32_t index, const char** out_id) {
  if (out_id == nullptr || index < 0 || index >= kPatternCount) {
    return fail(CL_E_INVALID_ARG, "pattern index out of range");
  }
  *out_id = pattern_id(static_cast<PatternKind>(index)).data();
  return CL_OK;
}

cl_status cl_pattern_title(int32_t index, const char** out_title) {
  if (out_title == nullptr || index < 0 || index >= kPatternCount) {
    return fail(CL_E_INVALID_ARG, "pattern index out of range");
  }
  *out_title = pattern_title(static_cast<PatternKind>(index)).data();
  return CL_OK;
}

cl_status cl_patterns_validate(const char* csv) {
  if (csv == nullptr) return fail(CL_E_INVALID_ARG, "csv is null");
  const PatternSelection sel = parse_pattern_list(csv);
  if (!sel.ok()) {
    return fail(CL_E_UNKNOWN_PATTERN,
                "unknown pattern id: " + sel.unknown.front());
  }
  return CL_OK;
}

cl_status cl_module_parse(const char* bytes, size_t len, const char* path,
                          cl_module** out) {
  if (bytes == nullptr || out == nullptr) {
    return fail(CL_E_INVALID_ARG, "null argument");
  }
  try {
    auto* m = new cl_module;
    m->parsed = parse_module(std::string_view(bytes, len),
                             path != nullptr ? path : "<buffer>");
    *out = m;
    return CL_OK;
  } catch (const std::exception& e) {
    return fail(CL_E_INTERNAL, e.what());
  }
}

void cl_module_free(cl_module* m) { delete m; }

cl_status cl_module_lloc(const cl_module* m, int32_t* out) {
  if (m == nullptr || out == nullptr) {
    return fail(CL_E_INVALID_ARG, "null argument");
  }
  *out = m->parsed.lloc;
  return CL_OK;
}

cl_status cl_module_error_count(const cl_module* m, int32_t* out) {
  if (m == nullptr || out == nullptr) {
    return fail(CL_E_INVALID_ARG, "null argument");
  }
  *out = static_cast<int32_t>(m->parsed.parse_errors.size());
  return CL_OK;
}

cl_status cl_module_error(const cl_module* m, int32_t index,
                          const char** out_message, cl_span* out_span) {
  if (m == nullptr || out_message == nullptr || out_span == nullptr ||
      index < 0 ||
      index >= static_cast<int32_t>(m->parsed.parse_errors.size())) {
    return fail(CL_E_INVALID_ARG, "error index out of range");
  }
  const ParseError& e = m->parsed.parse_errors[static_cast<std::size_t>(index)];
  *out_message = e.message.c_str();
  *out_span = to_c(e.span);
  return CL_OK;
}

cl_status cl_module_check(const cl_module* m, const char* patterns_csv,
                          int with_suggestions, cl_result** out) {
  if (m == nullptr || out == nullptr) {
    return fail(CL_E_INVALID_ARG, "null argument");
  }
  if (!m->parsed.valid()) {
    return fail(CL_E_PARSE, "module has parse errors: " + m->parsed.path());
  }
  CheckOptions options;
  options.suggestions = with_suggestions != 0;
  if (patterns_csv != nullptr && patterns_csv[0] != '\0') {
    const PatternSelection sel = parse_pattern_list(patterns_csv);
    if (!sel.ok()) {
      return fail(CL_E_UNKNOWN_PATTERN,
                  "unknown pattern id: " + sel.unknown.front());
    }
    if (!sel.kinds.empty()) options.only = sel.kinds;
  }
  try {
    // Re-running the detector on the retained module keeps the handle
    // self-contained; parsing dominates the cost anyway.
    FileCheck fc = check_source(m->parsed.source->text, m->parsed.path(),
                                options);
    auto* r = new cl_result;
    r->diagnostics = std::move(fc.diagnostics);
    *out = r;
    return CL_OK;
  } catch (const std::exception& e) {
    return fail(CL_E_INTERNAL, e.what());
  }
}

void cl_result_free(cl_result* r) { delete r; }

cl_status cl_result_count(const cl_result* r, int32_t* out) {
  if (r == nullptr || out == nullptr) {
    return fail(CL_E_INVALID_ARG, "null argument");
  }
  *out = static_cast<int32_t>(r->diagnostics.size());
  return CL_OK;
}

namespace {

const Diagnostic* result_at(const cl_result* r, int32_t index) {
  if (r == nullptr || index < 0 ||
      index >= static_cast<int32_t>(r->diagnostics.size())) {
    return nullptr;
  }
  return &r->diagnostics[static_cast<std::size_t>(index)];
}

}  // namespace

cl_status cl_result_pattern(const cl_result* r, int32_t index,
                            const char** out_id) {
  const Diagnostic* d = result_at(r, index);
  if (d == nullptr || out_id == nullptr) {
    return fail(CL_E_INVALID_ARG, "diagnostic index out of range");
  }
  *out_id = pattern_id(d->kind).data();
  return CL_OK;
}

cl_status cl_result_span(const cl_result* r, int32_t index, cl_span* out) {
  const Diagnostic* d = result_at(r, index);
  if (d == nullptr || out == nullptr) {
    return fail(CL_E_INVALID_ARG, "diagnostic index out of range");
  }
  *out = to_c(d->span);
  return CL_OK;
}

cl_status cl_result_message(const cl_result* r, int32_t index,
                            const char** out) {
  const Diagnostic* d = result_at(r, index);
  if (d == nullptr || out == nullptr) {
    return fail(CL_E_INVALID_ARG, "diagnostic index out of range");
  }
  *out = d->message.c_str();
  return CL_OK;
}

cl_status cl_result_file(const cl_result* r, int32_t index, const char** out) {
  const Diagnostic* d = result_at(r, index);
  if (d == nullptr || out == nullptr) {
    return fail(CL_E_INVALID_ARG, "diagnostic index out of range");
  }
  *out = d->file.c_str();
  return CL_OK;
}

cl_status cl_result_suggestion(const cl_result* r, int32_t index,
                               const char** out_replacement,
                               const char** out_rationale) {
  const Diagnostic* d = result_at(r, index);
  if (d == nullptr || out_replacement == nullptr || out_rationale == nullptr) {
    return fail(CL_E_INVALID_ARG, "diagnostic index out of range");
  }
  if (d->suggestion) {
    *out_replacement = d->suggestion->replacement_text.c_str();
    *out_rationale = d->suggestion->rationale.c_str();
  } else {
    *out_replacement = nullptr;
    *out_rationale = nullptr;
  }
  return CL_OK;
}

cl_status cl_report_new(cl_report** out) {
  if (out == nullptr) return fail(CL_E_INVALID_ARG, "null argument");
  *out = new cl_report;
  return CL_OK;
}

void cl_report_free(cl_report* rep) { delete rep; }

cl_status cl_report_add(cl_report* rep, const cl_result* r) {
  if (rep == nullptr || r == nullptr) {
    return fail(CL_E_INVALID_ARG, "null argument");
  }
  rep->diagnostics.insert(rep->diagnostics.end(), r->diagnostics.begin(),
                          r->diagnostics.end());
  return CL_OK;
}

cl_status cl_report_render(const cl_report* rep, const char* format,
                           char** out) {
  if (rep == nullptr || format == nullptr || out == nullptr) {
    return fail(CL_E_INVALID_ARG, "null argument");
  }
  const auto fmt = format_from_name(format);
  if (!fmt) {
    return fail(CL_E_UNKNOWN_FORMAT, std::string("unknown format: ") + format);
  }
  std::vector<Diagnostic> sorted = rep->diagnostics;
  std::sort(sorted.begin(), sorted.end(), diagnostic_less);
  *out = dup_string(emit_diagnostics(sorted, *fmt));
  return CL_OK;
}

cl_status cl_corpus_run(const char* root, const cl_corpus_options* options,
                        cl_corpus** out) {
  if (root == nullptr || options == nullptr || out == nullptr ||
      options->layout == nullptr) {
    return fail(CL_E_INVALID_ARG, "null argument");
  }
  LayoutPattern layout;
  try {
    layout = LayoutPattern::compile(options->layout);
  } catch (const std::exception& e) {
    return fail(CL_E_BAD_LAYOUT, e.what());
  }

  AnalyzeOptions opts;
  opts.workers = options->workers;
  opts.prevalence_by_submission = options->prevalence_by_submission != 0;
  opts.check.suggestions = options->with_suggestions != 0;
  if (options->patterns_csv != nullptr && options->patterns_csv[0] != '\0') {
    const PatternSelection sel = parse_pattern_list(options->patterns_csv);
    if (!sel.ok()) {
      return fail(CL_E_UNKNOWN_PATTERN,
                  "unknown pattern id: " + sel.unknown.front());
    }
    if (!sel.kinds.empty()) opts.check.only = sel.kinds;
  }

  try {
    ScanResult scan = scan_corpus(root, layout);
    if (scan.metas.empty()) {
      return fail(CL_E_NO_MATCH,
                  "no files matched layout '" + layout.pattern() +
                      "' under " + root);
    }
    auto* c = new cl_corpus;
    c->result = analyze_corpus(scan.metas, opts);
    c->result.notices.insert(c->result.notices.begin(), scan.notices.begin(),
                             scan.notices.end());
    *out = c;
    return CL_OK;
  } catch (const std::runtime_error& e) {
    return fail(CL_E_IO, e.what());
  } catch (const std::exception& e) {
    return fail(CL_E_INTERNAL, e.what());
  }
}

void cl_corpus_free(cl_corpus* c) { delete c; }

cl_status cl_corpus_file_counts(const cl_corpus* c, int64_t* total,
                                int64_t* valid, int64_t* invalid) {
  if (c == nullptr || total == nullptr || valid == nullptr ||
      invalid == nullptr) {
    return fail(CL_E_INVALID_ARG, "null argument");
  }
  *total = static_cast<int64_t>(c->result.files.size());
  *valid = c->result.valid_files;
  *invalid = c->result.invalid_files;
  return CL_OK;
}

cl_status cl_corpus_diagnostic_count(const cl_corpus* c, int64_t* out) {
  if (c == nullptr || out == nullptr) {
    return fail(CL_E_INVALID_ARG, "null argument");
  }
  *out = c->result.stats.total_diagnostics;
  return CL_OK;
}

cl_status cl_corpus_render(const cl_corpus* c, const char* report,
                           const char* format, char** out) {
  if (c == nullptr || report == nullptr || format == nullptr ||
      out == nullptr) {
    return fail(CL_E_INVALID_ARG, "null argument");
  }
  const std::string which = report;
  if (which == "stats") {
    if (std::string(format) != "csv") {
      return fail(CL_E_UNKNOWN_FORMAT, "the stats table is CSV only");
    }
    *out = dup_string(emit_stats_table(c->result.stats));
    return CL_OK;
  }
  const auto fmt = format_from_name(format);
  if (!fmt) {
    return fail(CL_E_UNKNOWN_FORMAT, std::string("unknown format: ") + format);
  }
  std::string text;
  if (which == "summary") {
    text = emit_summary(c->result, *fmt);
  } else if (which == "prevalence") {
    text = emit_prevalence_matrix(c->result.stats, *fmt);
  } else if (which == "students") {
    text = emit_student_matrix(c->result.stats, *fmt);
  } else if (which == "totals") {
    text = emit_totals_bar_data(c->result.stats, *fmt);
  } else if (which == "diagnostics") {
    text = emit_diagnostics(collect_corpus_diagnostics(c->result), *fmt);
  } else if (which == "all") {
    text = emit_corpus_report(c->result, *fmt);
  } else {
    return fail(CL_E_INVALID_ARG, "unknown report: " + which);
  }
  *out = dup_string(text);
  return CL_OK;
}

cl_status cl_corpus_notice_count(const cl_corpus* c, int32_t* out) {
  if (c == nullptr || out == nullptr) {
    return fail(CL_E_INVALID_ARG, "null argument");
  }
  *out = static_cast<int32_t>(c->result.notices.size());
  return CL_OK;
}

cl_status cl_corpus_notice(const cl_corpus* c, int32_t index,
                           const char** out) {
  if (c == nullptr || out == nullptr || index < 0 ||
      index >= static_cast<int32_t>(c->result.notices.size())) {
    return fail(CL_E_INVALID_ARG, "notice index out of range");
  }
  *out = c->result.notices[static_cast<std::size_t>(index)].c_str();
  return CL_OK;
}

}  // extern "C"
