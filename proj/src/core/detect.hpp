#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "core/diagnostics.hpp"
#include "core/ir.hpp"

namespace condlint::detect {

// Structural equality via fingerprints.
bool stmt_equal(const Stmt& a, const Stmt& b);

// True when one expression is a syntactic negation of the other: a not
// wrapper around an equal expression, the inverse comparison operator over
// equal operands, or opposite boolean literals. Symmetric; no boolean algebra
// beyond that.
bool negates(const Expr& a, const Expr& b);

// Length of the longest common suffix of two statement lists.
int common_suffix_len(const std::vector<Stmt>& a, const std::vector<Stmt>& b);

// True when every statement is pass or a self-assignment (x = x).
bool is_nonfunctional(const std::vector<Stmt>& body);

// A detection with the IR context the rewrite pass needs.
struct Hit {
  Diagnostic diag;
  const IfChain* chain = nullptr;
  const Stmt* next_stmt = nullptr;
};

// Individual rules, exposed for unit tests. next_stmt is the statement
// immediately following the chain in the same block, or null.
std::optional<Hit> rule_if_else_return_bool(const ParsedModule& m, const IfChain& c);
std::optional<Hit> rule_if_return_bool(const ParsedModule& m, const IfChain& c, const Stmt* next);
std::optional<Hit> rule_confusing_else(const ParsedModule& m, const IfChain& c);
std::optional<Hit> rule_else_if(const ParsedModule& m, const IfChain& c);
std::optional<Hit> rule_nested_if(const ParsedModule& m, const IfChain& c);
std::optional<Hit> rule_unnecessary_elif(const ParsedModule& m, const IfChain& c);
std::vector<Hit> rule_empty_if_body(const ParsedModule& m, const IfChain& c);
std::optional<Hit> rule_empty_else_body(const ParsedModule& m, const IfChain& c);
// The duplication family: DuplicateIfElseBody, UnnecessaryElse,
// SeveralDuplicateIfElseStatements, DuplicateIfElseStatement. At most one
// fires per chain.
std::optional<Hit> rule_duplication_family(const ParsedModule& m, const IfChain& c);
// The assignment family: IfElseAssignBoolReturn, IfElseAssignBool,
// IfElseAssignReturn. At most one fires per chain.
std::optional<Hit> rule_assign_family(const ParsedModule& m, const IfChain& c, const Stmt* next);

// Runs every rule over every chain in the module. Requires a valid module
// (throws std::invalid_argument otherwise). Hits come back in diagnostic
// order.
std::vector<Hit> run_rules(const ParsedModule& m);

// Diagnostics only, no rewrite context.
std::vector<Diagnostic> detect_all(const ParsedModule& m);

}  // namespace condlint::detect
