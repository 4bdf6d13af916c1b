#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace condlint {

// The catalog of conditional anti-patterns the checker recognizes. Enumerator
// order is the canonical registry order.
enum class PatternKind : int {
  IfElseReturnBool,
  ConfusingElse,
  NestedIf,
  DuplicateIfElseStatement,
  IfReturnBool,
  EmptyIfBody,
  UnnecessaryElif,
  ElseIf,
  EmptyElseBody,
  UnnecessaryElse,
  SeveralDuplicateIfElseStatements,
  IfElseAssignReturn,
  DuplicateIfElseBody,
  IfElseAssignBool,
  IfElseAssignBoolReturn,
};

inline constexpr int kPatternCount = 15;

std::string_view pattern_id(PatternKind kind);     // stable snake_case id
std::string_view pattern_title(PatternKind kind);  // short human name
std::optional<PatternKind> pattern_from_id(std::string_view id);

const std::array<PatternKind, kPatternCount>& all_patterns();

// Splits a comma-separated id list; unknown ids are returned instead of a
// result so callers can report them.
struct PatternSelection {
  std::vector<PatternKind> kinds;
  std::vector<std::string> unknown;
  bool ok() const { return unknown.empty(); }
};
PatternSelection parse_pattern_list(std::string_view csv);

}  // namespace condlint
