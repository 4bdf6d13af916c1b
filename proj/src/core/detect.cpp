#include "core/detect.hpp"

#include <algorithm>
#include <stdexcept>

namespace condlint::detect {
namespace {

bool single_return_bool(const std::vector<Stmt>& body, bool& value) {
  if (body.size() != 1) return false;
  const Stmt& s = body[0];
  if (s.kind != StmtKind::Return || !s.value) return false;
  if (s.value->kind != ExprKind::BoolLit) return false;
  value = s.value->bool_value;
  return true;
}

bool single_assign_to_name(const std::vector<Stmt>& body) {
  return body.size() == 1 && body[0].kind == StmtKind::Assign &&
         body[0].target_name.has_value();
}

// The chain is exactly `if <cond>:` with one branch and no else.
bool plain_if(const IfChain& c) {
  return c.branches.size() == 1 && !c.else_body;
}

// else body consisting of exactly one nested chain.
const IfChain* sole_else_chain(const IfChain& c) {
  if (!c.else_body || c.else_body->size() != 1) return nullptr;
  const Stmt& s = (*c.else_body)[0];
  return s.kind == StmtKind::IfChainStmt ? s.chain.get() : nullptr;
}

Hit make_hit(const ParsedModule& m, const IfChain& c, PatternKind kind,
             Span span, std::string message, const Stmt* next = nullptr) {
  Hit h;
  h.diag.file = m.path();
  h.diag.kind = kind;
  h.diag.span = span;
  h.diag.message = std::move(message);
  h.chain = &c;
  h.next_stmt = next;
  return h;
}

bool inverse_ops(CmpOp a, CmpOp b) {
  auto flip = [](CmpOp op) {
    switch (op) {
      case CmpOp::Eq: return CmpOp::Ne;
      case CmpOp::Ne: return CmpOp::Eq;
      case CmpOp::Lt: return CmpOp::Ge;
      case CmpOp::Ge: return CmpOp::Lt;
      case CmpOp::Gt: return CmpOp::Le;
      case CmpOp::Le: return CmpOp::Gt;
      case CmpOp::Is: return CmpOp::IsNot;
      case CmpOp::IsNot: return CmpOp::Is;
      case CmpOp::In: return CmpOp::NotIn;
      case CmpOp::NotIn: return CmpOp::In;
    }
    return op;
  };
  return flip(a) == b;
}

}  // namespace

bool stmt_equal(const Stmt& a, const Stmt& b) { return a.fp == b.fp; }

bool negates(const Expr& a, const Expr& b) {
  if (a.kind == ExprKind::Not && a.inner && a.inner->fp == b.fp) return true;
  if (b.kind == ExprKind::Not && b.inner && b.inner->fp == a.fp) return true;
  if (a.kind == ExprKind::Compare && b.kind == ExprKind::Compare) {
    return a.lhs == b.lhs && a.rhs == b.rhs && inverse_ops(a.cmp_op, b.cmp_op);
  }
  if (a.kind == ExprKind::BoolLit && b.kind == ExprKind::BoolLit) {
    return a.bool_value != b.bool_value;
  }
  return false;
}

int common_suffix_len(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
  int k = 0;
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  while (k < na && k < nb &&
         stmt_equal(a[static_cast<std::size_t>(na - 1 - k)],
                    b[static_cast<std::size_t>(nb - 1 - k)])) {
    ++k;
  }
  return k;
}

bool is_nonfunctional(const std::vector<Stmt>& body) {
  for (const Stmt& s : body) {
    if (s.kind == StmtKind::Pass) continue;
    if (s.kind == StmtKind::Assign && s.value &&
        s.target_fp == s.value->fp) {
      continue;
    }
    return false;
  }
  return true;
}

std::optional<Hit> rule_if_else_return_bool(const ParsedModule& m,
                                            const IfChain& c) {
  if (c.branches.size() != 1 || !c.else_body) return std::nullopt;
  bool v1 = false, v2 = false;
  if (!single_return_bool(c.branches[0].body, v1)) return std::nullopt;
  if (!single_return_bool(*c.else_body, v2)) return std::nullopt;
  if (v1 == v2) return std::nullopt;
  return make_hit(m, c, PatternKind::IfElseReturnBool, c.span,
                  "The if and else branches return opposite boolean literals; "
                  "return the condition instead.");
}

std::optional<Hit> rule_if_return_bool(const ParsedModule& m, const IfChain& c,
                                       const Stmt* next) {
  if (!plain_if(c) || next == nullptr) return std::nullopt;
  bool v1 = false;
  if (!single_return_bool(c.branches[0].body, v1)) return std::nullopt;
  if (next->kind != StmtKind::Return || !next->value ||
      next->value->kind != ExprKind::BoolLit) {
    return std::nullopt;
  }
  if (next->value->bool_value == v1) return std::nullopt;
  return make_hit(m, c, PatternKind::IfReturnBool,
                  Span::join(c.span, next->span),
                  "The if returns a boolean literal and the next statement "
                  "returns its opposite; return the condition instead.",
                  next);
}

std::optional<Hit> rule_confusing_else(const ParsedModule& m,
                                       const IfChain& c) {
  const IfChain* inner = sole_else_chain(c);
  if (inner == nullptr) return std::nullopt;
  if (inner->branches.size() < 2 && !inner->else_body) return std::nullopt;
  return make_hit(m, c, PatternKind::ConfusingElse, c.span,
                  "The else block holds a complete conditional; flatten it "
                  "into elif clauses.");
}

std::optional<Hit> rule_else_if(const ParsedModule& m, const IfChain& c) {
  const IfChain* inner = sole_else_chain(c);
  if (inner == nullptr) return std::nullopt;
  if (!plain_if(*inner)) return std::nullopt;
  return make_hit(m, c, PatternKind::ElseIf, c.span,
                  "The else block holds only an if; use elif.");
}

std::optional<Hit> rule_nested_if(const ParsedModule& m, const IfChain& c) {
  if (!plain_if(c)) return std::nullopt;
  const std::vector<Stmt>& body = c.branches[0].body;
  if (body.size() != 1 || body[0].kind != StmtKind::IfChainStmt) {
    return std::nullopt;
  }
  if (!plain_if(*body[0].chain)) return std::nullopt;
  return make_hit(m, c, PatternKind::NestedIf, c.span,
                  "The if body holds only another if; merge the conditions "
                  "with 'and'.");
}

std::optional<Hit> rule_unnecessary_elif(const ParsedModule& m,
                                         const IfChain& c) {
  if (c.branches.size() != 2 || c.else_body) return std::nullopt;
  if (!negates(c.branches[0].cond, c.branches[1].cond)) return std::nullopt;
  return make_hit(m, c, PatternKind::UnnecessaryElif, c.span,
                  "The elif condition is the negation of the if condition; "
                  "replace it with else.");
}

std::vector<Hit> rule_empty_if_body(const ParsedModule& m, const IfChain& c) {
  std::vector<Hit> hits;
  for (const Branch& br : c.branches) {
    if (is_nonfunctional(br.body)) {
      hits.push_back(make_hit(
          m, c, PatternKind::EmptyIfBody, c.span,
          "The branch at line " + std::to_string(br.kw_span.line_start) +
              " has no functional code; invert or drop the condition."));
    }
  }
  return hits;
}

std::optional<Hit> rule_empty_else_body(const ParsedModule& m,
                                        const IfChain& c) {
  if (!c.else_body || !is_nonfunctional(*c.else_body)) return std::nullopt;
  return make_hit(m, c, PatternKind::EmptyElseBody, c.span,
                  "The else body has no functional code; remove it.");
}

std::optional<Hit> rule_duplication_family(const ParsedModule& m,
                                           const IfChain& c) {
  if (c.branches.size() != 1 || !c.else_body) return std::nullopt;
  const std::vector<Stmt>& ib = c.branches[0].body;
  const std::vector<Stmt>& eb = *c.else_body;
  const int k = common_suffix_len(ib, eb);
  if (k == 0) return std::nullopt;
  const int n1 = static_cast<int>(ib.size());
  const int n2 = static_cast<int>(eb.size());

  if (k == n1 && k == n2) {
    return make_hit(m, c, PatternKind::DuplicateIfElseBody, c.span,
                    "The if and else bodies are identical; the conditional is "
                    "redundant.");
  }
  if (k == std::min(n1, n2) && n1 != n2) {
    return make_hit(m, c, PatternKind::UnnecessaryElse, c.span,
                    n1 > n2
                        ? "The else body repeats the tail of the if body; "
                          "hoist the shared code and drop the else."
                        : "The if body repeats the tail of the else body; "
                          "invert the condition and drop the else.");
  }
  if (k >= 2) {
    return make_hit(m, c, PatternKind::SeveralDuplicateIfElseStatements,
                    c.span,
                    "The last " + std::to_string(k) +
                        " statements of both branches are identical; move "
                        "them after the conditional.");
  }
  return make_hit(m, c, PatternKind::DuplicateIfElseStatement, c.span,
                  "The last statement of both branches is identical; move it "
                  "after the conditional.");
}

std::optional<Hit> rule_assign_family(const ParsedModule& m, const IfChain& c,
                                      const Stmt* next) {
  if (c.branches.size() != 1 || !c.else_body) return std::nullopt;
  if (!single_assign_to_name(c.branches[0].body) ||
      !single_assign_to_name(*c.else_body)) {
    return std::nullopt;
  }
  const Stmt& a1 = c.branches[0].body[0];
  const Stmt& a2 = (*c.else_body)[0];
  if (*a1.target_name != *a2.target_name) return std::nullopt;
  const std::string& name = *a1.target_name;

  const bool opposite_bools = a1.value && a2.value &&
                              a1.value->kind == ExprKind::BoolLit &&
                              a2.value->kind == ExprKind::BoolLit &&
                              a1.value->bool_value != a2.value->bool_value;
  const bool returned = next != nullptr && next->kind == StmtKind::Return &&
                        next->value && next->value->kind == ExprKind::Name &&
                        next->value->name == name;

  if (opposite_bools && returned) {
    return make_hit(m, c, PatternKind::IfElseAssignBoolReturn,
                    Span::join(c.span, next->span),
                    "Both branches assign opposite booleans to '" + name +
                        "' which is returned right after; return the "
                        "condition instead.",
                    next);
  }
  if (opposite_bools) {
    return make_hit(m, c, PatternKind::IfElseAssignBool, c.span,
                    "Both branches assign opposite booleans to '" + name +
                        "'; assign the condition instead.");
  }
  if (returned) {
    return make_hit(m, c, PatternKind::IfElseAssignReturn,
                    Span::join(c.span, next->span),
                    "Both branches assign '" + name +
                        "' which is returned right after; return the values "
                        "directly.",
                    next);
  }
  return std::nullopt;
}

namespace {

void walk(const ParsedModule& m, const std::vector<Stmt>& block,
          std::vector<Hit>& out) {
  for (std::size_t i = 0; i < block.size(); ++i) {
    const Stmt& s = block[i];
    if (s.kind == StmtKind::IfChainStmt) {
      const IfChain& c = *s.chain;
      const Stmt* next = i + 1 < block.size() ? &block[i + 1] : nullptr;

      if (auto h = rule_if_else_return_bool(m, c)) out.push_back(std::move(*h));
      if (auto h = rule_if_return_bool(m, c, next)) out.push_back(std::move(*h));
      if (auto h = rule_confusing_else(m, c)) out.push_back(std::move(*h));
      if (auto h = rule_else_if(m, c)) out.push_back(std::move(*h));
      if (auto h = rule_nested_if(m, c)) out.push_back(std::move(*h));
      if (auto h = rule_unnecessary_elif(m, c)) out.push_back(std::move(*h));
      for (auto& h : rule_empty_if_body(m, c)) out.push_back(std::move(h));
      if (auto h = rule_empty_else_body(m, c)) out.push_back(std::move(*h));
      if (auto h = rule_duplication_family(m, c)) out.push_back(std::move(*h));
      if (auto h = rule_assign_family(m, c, next)) out.push_back(std::move(*h));

      for (const Branch& br : c.branches) walk(m, br.body, out);
      if (c.else_body) walk(m, *c.else_body, out);
    } else if (s.kind == StmtKind::OpaqueCompound) {
      for (const auto& body : s.bodies) walk(m, body, out);
    }
  }
}

}  // namespace

std::vector<Hit> run_rules(const ParsedModule& m) {
  if (!m.valid()) {
    throw std::invalid_argument("module has parse errors: " + m.path());
  }
  std::vector<Hit> hits;
  walk(m, m.body, hits);
  std::stable_sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    return diagnostic_less(a.diag, b.diag);
  });
  return hits;
}

std::vector<Diagnostic> detect_all(const ParsedModule& m) {
  std::vector<Diagnostic> out;
  for (auto& h : run_rules(m)) out.push_back(std::move(h.diag));
  return out;
}

}  // namespace condlint::detect
