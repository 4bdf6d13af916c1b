#pragma once

#include <string>
#include <string_view>

#include "core/ir.hpp"

namespace condlint {

// Parses Python 3 source at statement granularity. The grammar is the
// pre-3.10 statement set: match statements and other soft-keyword constructs
// come back as parse errors, which callers surface like any other invalid
// file. On the first error the module body is left empty and parse_errors
// carries the diagnosis; lloc is filled in regardless.
ParsedModule parse_module(std::string_view bytes, std::string path);

// Physical lines that carry at least one token outside comments. Never fails;
// undecodable or malformed tails are counted as far as they tokenize.
int count_lloc(std::string_view bytes);

// Parses a standalone expression fragment, mostly for tests and rewrite
// helpers.
Expr parse_expr_text(std::string_view text);

}  // namespace condlint
