#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "core/detect.hpp"

namespace condlint {

// Builds the mechanical rewrite for a detection when one exists. The
// empty-body kinds and the general assign+return kind are advice-only and
// yield nullopt; so do layouts a textual splice cannot handle safely.
std::optional<RewriteSuggestion> suggest_fix(const detect::Hit& hit,
                                             const ParsedModule& m);

// Replaces the text covered by span (inclusive) with replacement. Used by
// tests and by anyone applying suggestions programmatically.
std::string apply_replacement(const SourceInfo& src, const Span& span,
                              std::string_view replacement);

}  // namespace condlint
