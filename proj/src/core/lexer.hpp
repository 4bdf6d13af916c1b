#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "core/source.hpp"
#include "core/token.hpp"

namespace condlint {

enum class LexMode {
  // Full tokenization with Indent/Dedent/Newline bookkeeping; indentation and
  // bracket errors are reported and stop the scan.
  Structured,
  // Plain token stream used for line counting and fingerprinting fragments of
  // unknown shape. Never fails: malformed input degrades to opaque tokens.
  Raw,
};

struct LexResult {
  std::vector<Token> tokens;  // always terminated by an End token
  std::vector<ParseError> errors;
  // Per physical line: line carries at least one non-comment token.
  std::vector<std::uint8_t> code_line;

  bool ok() const { return errors.empty(); }
};

// Tokenizes source text. In Structured mode the SourceInfo, when given, gets
// its logical_start flags and indent_char filled in as a side effect.
LexResult lex(std::string_view text, LexMode mode, SourceInfo* info = nullptr);

bool is_python_keyword(std::string_view word);

}  // namespace condlint
