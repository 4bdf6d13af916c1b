#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/diagnostics.hpp"
#include "core/ir.hpp"

namespace condlint {

struct CheckOptions {
  // When set, only these kinds are reported. Filtering happens after
  // detection and rewriting, so the result is exactly the unrestricted
  // output minus other kinds.
  std::optional<std::vector<PatternKind>> only;
  bool suggestions = true;
};

struct FileCheck {
  ParsedModule module;
  std::vector<Diagnostic> diagnostics;  // sorted; empty when module invalid
};

// Parses and checks one buffer. Invalid modules come back with parse_errors
// set and no diagnostics.
FileCheck check_source(std::string_view bytes, std::string path,
                       const CheckOptions& options = {});

}  // namespace condlint
