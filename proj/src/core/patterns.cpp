#include "core/patterns.hpp"

namespace condlint {
namespace {

struct PatternInfo {
  PatternKind kind;
  std::string_view id;
  std::string_view title;
};

constexpr std::array<PatternInfo, kPatternCount> kPatterns = {{
    {PatternKind::IfElseReturnBool, "if_else_return_bool",
     "if/else returning opposite booleans"},
    {PatternKind::ConfusingElse, "confusing_else",
     "else wrapping another conditional"},
    {PatternKind::NestedIf, "nested_if", "if wrapping only another if"},
    {PatternKind::DuplicateIfElseStatement, "duplicate_if_else_statements",
     "same trailing statement in both branches"},
    {PatternKind::IfReturnBool, "if_return_bool",
     "if returning a boolean followed by the opposite return"},
    {PatternKind::EmptyIfBody, "empty_if_body", "branch body with no effect"},
    {PatternKind::UnnecessaryElif, "unnecessary_elif",
     "elif condition negates the if condition"},
    {PatternKind::ElseIf, "else_if", "else containing only an if"},
    {PatternKind::EmptyElseBody, "empty_else_body",
     "else body with no effect"},
    {PatternKind::UnnecessaryElse, "unnecessary_else",
     "one branch is the tail of the other"},
    {PatternKind::SeveralDuplicateIfElseStatements,
     "several_duplicate_if_else_statements",
     "same trailing statements in both branches"},
    {PatternKind::IfElseAssignReturn, "if_else_assign_return",
     "both branches assign a name that is then returned"},
    {PatternKind::DuplicateIfElseBody, "duplicate_if_else_body",
     "identical if and else bodies"},
    {PatternKind::IfElseAssignBool, "if_else_assign_bool",
     "branches assign opposite booleans"},
    {PatternKind::IfElseAssignBoolReturn, "if_else_assign_bool_return",
     "branches assign opposite booleans that are then returned"},
}};

}  // namespace

std::string_view pattern_id(PatternKind kind) {
  return kPatterns[static_cast<std::size_t>(kind)].id;
}

std::string_view pattern_title(PatternKind kind) {
  return kPatterns[static_cast<std::size_t>(kind)].title;
}

std::optional<PatternKind> pattern_from_id(std::string_view id) {
  for (const auto& p : kPatterns) {
    if (p.id == id) return p.kind;
  }
  return std::nullopt;
}

const std::array<PatternKind, kPatternCount>& all_patterns() {
  static const std::array<PatternKind, kPatternCount> kinds = [] {
    std::array<PatternKind, kPatternCount> out{};
    for (int i = 0; i < kPatternCount; ++i) out[i] = static_cast<PatternKind>(i);
    return out;
  }();
  return kinds;
}

PatternSelection parse_pattern_list(std::string_view csv) {
  PatternSelection sel;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t comma = csv.find(',', pos);
    if (comma == std::string_view::npos) comma = csv.size();
    std::string_view item = csv.substr(pos, comma - pos);
    while (!item.empty() && (item.front() == ' ' || item.front() == '\t'))
      item.remove_prefix(1);
    while (!item.empty() && (item.back() == ' ' || item.back() == '\t'))
      item.remove_suffix(1);
    if (!item.empty()) {
      if (auto kind = pattern_from_id(item)) {
        sel.kinds.push_back(*kind);
      } else {
        sel.unknown.emplace_back(item);
      }
    }
    pos = comma + 1;
  }
  return sel;
}

}  // namespace condlint
