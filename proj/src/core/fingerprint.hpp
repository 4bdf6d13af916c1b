#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "core/token.hpp"

namespace condlint {

// Canonical form of a token sequence: comments and blank lines are gone (the
// lexer never produces them), spacing collapses to single separators, block
// structure is kept as newlines plus two-space indentation, and any number of
// redundant outer parentheses is stripped. Equal fingerprints mean equal
// structure.
struct Fingerprint {
  std::string canon;

  bool operator==(const Fingerprint&) const = default;
  bool empty() const { return canon.empty(); }
};

// Builds the fingerprint of tokens[first..last] (inclusive, trimmed of any
// leading or trailing structural tokens by the caller).
Fingerprint fingerprint_tokens(const std::vector<Token>& tokens,
                               std::size_t first, std::size_t last);

// Fingerprints a standalone source fragment (an expression or a complete
// statement). Tolerant of malformed input.
Fingerprint fingerprint_text(std::string_view text);

}  // namespace condlint
