#pragma once

#include <optional>
#include <string>
#include <tuple>

#include "core/patterns.hpp"
#include "core/span.hpp"

namespace condlint {

// A mechanical rewrite: replacement_text substitutes the source covered by
// the owning diagnostic's span, re-indented for the site.
struct RewriteSuggestion {
  std::string replacement_text;
  std::string rationale;
};

struct Diagnostic {
  std::string file;
  PatternKind kind = PatternKind::IfElseReturnBool;
  Span span;
  std::string message;
  std::optional<RewriteSuggestion> suggestion;
};

// Total order used everywhere diagnostics are emitted: position, then kind,
// then message (for the per-branch variants sharing a span).
inline bool diagnostic_less(const Diagnostic& a, const Diagnostic& b) {
  return std::tie(a.file, a.span.line_start, a.span.col_start, a.span.line_end,
                  a.span.col_end, a.kind, a.message) <
         std::tie(b.file, b.span.line_start, b.span.col_start, b.span.line_end,
                  b.span.col_end, b.kind, b.message);
}

}  // namespace condlint
