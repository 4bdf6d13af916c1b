#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "core/span.hpp"

namespace condlint {

// A source file after line-ending normalization, with the line index used to
// translate between spans and byte offsets. Owned by the ParsedModule so that
// spans stay resolvable for the lifetime of the IR.
struct SourceInfo {
  std::string path;
  std::string text;  // \r\n and \r normalized to \n
  std::vector<std::size_t> line_offsets;
  // Per physical line: true when the line starts a fresh logical line (not a
  // continuation and not inside a string literal). Filled in by the lexer.
  std::vector<std::uint8_t> logical_start;
  char indent_char = ' ';
  bool decode_ok = true;
  std::string decode_error;

  int line_count() const { return static_cast<int>(line_offsets.size()); }

  std::size_t offset_of(int line, int col) const;
  std::string_view line_text(int line) const;  // without trailing newline
  std::string slice(const Span& span) const;   // inclusive of both endpoints
  bool begins_logical_line(int line) const {
    return line >= 1 && line <= line_count() &&
           logical_start[static_cast<std::size_t>(line - 1)] != 0;
  }
};

// Decodes bytes as UTF-8 and normalizes line endings. On invalid UTF-8 the
// result has decode_ok=false and keeps whatever prefix decoded cleanly.
std::shared_ptr<SourceInfo> make_source(std::string_view bytes, std::string path);

}  // namespace condlint
