#pragma once

#include <algorithm>
#include <string>

namespace condlint {

// Source range in 1-based line/column coordinates, inclusive on both ends.
// Columns count bytes within the line.
struct Span {
  int line_start = 0;
  int col_start = 0;
  int line_end = 0;
  int col_end = 0;

  bool valid() const { return line_start > 0 && col_start > 0; }

  bool operator==(const Span&) const = default;

  static Span join(const Span& a, const Span& b) {
    Span s = a;
    if (b.line_start < s.line_start ||
        (b.line_start == s.line_start && b.col_start < s.col_start)) {
      s.line_start = b.line_start;
      s.col_start = b.col_start;
    }
    if (b.line_end > s.line_end ||
        (b.line_end == s.line_end && b.col_end > s.col_end)) {
      s.line_end = b.line_end;
      s.col_end = b.col_end;
    }
    return s;
  }

  std::string str() const {
    return std::to_string(line_start) + ":" + std::to_string(col_start) + "-" +
           std::to_string(line_end) + ":" + std::to_string(col_end);
  }
};

struct ParseError {
  Span span;
  std::string message;
};

}  // namespace condlint
