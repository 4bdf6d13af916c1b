#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/fingerprint.hpp"
#include "core/source.hpp"
#include "core/span.hpp"

namespace condlint {

// The IR is deliberately shallow: conditions are classified only as far as
// negation analysis needs, and statements only as far as the pattern rules
// need. Everything else is kept opaque with a fingerprint and a span.

enum class ExprKind { BoolLit, Name, Not, Compare, Opaque };

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge, Is, IsNot, In, NotIn };

std::string_view cmp_op_text(CmpOp op);

struct Expr {
  ExprKind kind = ExprKind::Opaque;
  Span span;       // full extent as written, including outer parentheses
  Span core_span;  // extent with outer parentheses stripped
  Fingerprint fp;  // canonical form, outer parentheses stripped
  bool bool_value = false;      // BoolLit
  // Opaque with a top-level comma or walrus: such text needs parentheses
  // before it can be spliced into a new position.
  bool opaque_risky = false;
  std::string name;             // Name
  std::unique_ptr<Expr> inner;  // Not operand
  CmpOp cmp_op = CmpOp::Eq;     // Compare
  Fingerprint lhs, rhs;         // Compare operand fingerprints
  Span lhs_span, rhs_span;      // operand extents, outer parens stripped
};

enum class StmtKind {
  Pass,
  Return,
  Assign,
  AugAssign,
  IfChainStmt,
  OpaqueCompound,
  OpaqueSimple,
};

struct Stmt;

struct Branch {
  Expr cond;
  std::vector<Stmt> body;
  Span span;        // keyword through last body statement
  Span kw_span;     // the 'if'/'elif' keyword itself
  Span colon_span;  // the ':' closing the header
  bool is_elif = false;
};

struct IfChain {
  std::vector<Branch> branches;
  std::optional<std::vector<Stmt>> else_body;
  Span span;
  std::optional<Span> else_span;     // 'else' keyword through last body stmt
  std::optional<Span> else_kw_span;  // the 'else' keyword itself
};

struct Stmt {
  StmtKind kind = StmtKind::OpaqueSimple;
  Span span;
  Fingerprint fp;
  // Return payload (empty for a bare return) and Assign/AugAssign value.
  std::optional<Expr> value;
  // Assign / AugAssign target. target_name is set when the target is a single
  // bare name.
  std::optional<std::string> target_name;
  Fingerprint target_fp;
  std::string aug_op;
  // IfChainStmt
  std::unique_ptr<IfChain> chain;
  // OpaqueCompound: fingerprint of the first clause header and the statement
  // lists of every clause body.
  Fingerprint header_fp;
  std::vector<std::vector<Stmt>> bodies;
};

struct ParsedModule {
  std::shared_ptr<const SourceInfo> source;
  std::vector<Stmt> body;
  int lloc = 0;
  std::vector<ParseError> parse_errors;

  const std::string& path() const { return source->path; }
  bool valid() const { return parse_errors.empty(); }
};

// Stable textual rendering of the IR, used by tests to pin determinism and by
// humans to debug the frontend.
std::string dump_ir(const ParsedModule& module);

}  // namespace condlint
