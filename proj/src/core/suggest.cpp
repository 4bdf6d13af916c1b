#include "core/suggest.hpp"

#include <algorithm>

namespace condlint {
namespace {

std::string_view inverse_cmp_text(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "!=";
    case CmpOp::Ne: return "==";
    case CmpOp::Lt: return ">=";
    case CmpOp::Le: return ">";
    case CmpOp::Gt: return "<=";
    case CmpOp::Ge: return "<";
    case CmpOp::Is: return "is not";
    case CmpOp::IsNot: return "is";
    case CmpOp::In: return "not in";
    case CmpOp::NotIn: return "in";
  }
  return "";
}

class Rewriter {
 public:
  Rewriter(const detect::Hit& hit, const ParsedModule& m)
      : hit_(hit), chain_(*hit.chain), m_(m), src_(*m.source) {}

  std::optional<RewriteSuggestion> build() {
    const int col = chain_.span.col_start;
    const std::string_view line = src_.line_text(chain_.span.line_start);
    if (static_cast<int>(line.size()) < col - 1) return std::nullopt;
    ind0_ = std::string(line.substr(0, static_cast<std::size_t>(col - 1)));
    if (ind0_.find_first_not_of(" \t") != std::string::npos) {
      return std::nullopt;
    }

    switch (hit_.diag.kind) {
      case PatternKind::IfElseReturnBool:
      case PatternKind::IfReturnBool:
        return return_bool();
      case PatternKind::IfElseAssignBool:
      case PatternKind::IfElseAssignBoolReturn:
        return assign_bool();
      case PatternKind::NestedIf:
        return nested_if();
      case PatternKind::ConfusingElse:
      case PatternKind::ElseIf:
        return flatten_else();
      case PatternKind::UnnecessaryElif:
        return unnecessary_elif();
      case PatternKind::DuplicateIfElseBody:
      case PatternKind::UnnecessaryElse:
      case PatternKind::SeveralDuplicateIfElseStatements:
      case PatternKind::DuplicateIfElseStatement:
        return duplication();
      default:
        return std::nullopt;
    }
  }

 private:
  std::string indent_to(int col) const {
    return std::string(static_cast<std::size_t>(col > 0 ? col - 1 : 0),
                       src_.indent_char);
  }

  // Shifts every logical line after the first by delta columns. Lines inside
  // string literals or bracket continuations are left alone.
  std::string reindent(std::string_view text, int first_line,
                       int delta) const {
    if (delta == 0) return std::string(text);
    std::string out;
    out.reserve(text.size());
    int line = first_line;
    std::size_t pos = 0;
    bool at_first = true;
    while (pos <= text.size()) {
      std::size_t eol = text.find('\n', pos);
      const bool last = eol == std::string_view::npos;
      if (last) eol = text.size();
      std::string_view chunk = text.substr(pos, eol - pos);
      if (!at_first && src_.begins_logical_line(line)) {
        if (delta > 0) {
          if (!chunk.empty()) {
            out.append(static_cast<std::size_t>(delta), src_.indent_char);
          }
        } else {
          std::size_t strip = 0;
          while (strip < chunk.size() &&
                 strip < static_cast<std::size_t>(-delta) &&
                 (chunk[strip] == ' ' || chunk[strip] == '\t')) {
            ++strip;
          }
          chunk.remove_prefix(strip);
        }
      }
      out.append(chunk);
      if (last) break;
      out.push_back('\n');
      pos = eol + 1;
      ++line;
      at_first = false;
    }
    return out;
  }

  std::string slice_stmts(const Stmt& first, const Stmt& last) const {
    return src_.slice(Span::join(first.span, last.span));
  }

  // The statements rendered with full leading indentation, shifted so the
  // first lands at target_col.
  std::string block_lines(const Stmt& first, const Stmt& last,
                          int target_col) const {
    const std::string text = slice_stmts(first, last);
    const int delta = target_col - first.span.col_start;
    return indent_to(target_col) +
           reindent(text, first.span.line_start, delta);
  }

  std::string cond_text(const Expr& e) const {
    std::string body = src_.slice(e.core_span);
    if (e.kind == ExprKind::Opaque && e.opaque_risky) {
      return "(" + body + ")";
    }
    return body;
  }

  std::string neg_text(const Expr& e) const {
    switch (e.kind) {
      case ExprKind::BoolLit:
        return e.bool_value ? "False" : "True";
      case ExprKind::Name:
        return "not " + e.name;
      case ExprKind::Not:
        return src_.slice(e.inner->span);
      case ExprKind::Compare:
        return src_.slice(e.lhs_span) + " " +
               std::string(inverse_cmp_text(e.cmp_op)) + " " +
               src_.slice(e.rhs_span);
      case ExprKind::Opaque:
        return "not (" + src_.slice(e.core_span) + ")";
    }
    return "";
  }

  // Operand form safe on either side of a surrounding 'and'.
  std::string and_operand(const Expr& e) const {
    if (e.kind == ExprKind::Opaque) {
      return "(" + src_.slice(e.core_span) + ")";
    }
    return src_.slice(e.core_span);
  }

  std::optional<RewriteSuggestion> return_bool() const {
    const Branch& br = chain_.branches[0];
    const bool if_value = br.body[0].value->bool_value;
    const Expr& cond = br.cond;
    return RewriteSuggestion{
        "return " + (if_value ? cond_text(cond) : neg_text(cond)),
        "Returns the condition directly instead of branching on it."};
  }

  std::optional<RewriteSuggestion> assign_bool() const {
    const Stmt& a1 = chain_.branches[0].body[0];
    const std::string& name = *a1.target_name;
    const bool if_value = a1.value->bool_value;
    const Expr& cond = chain_.branches[0].cond;
    std::string text =
        name + " = " + (if_value ? cond_text(cond) : neg_text(cond));
    if (hit_.diag.kind == PatternKind::IfElseAssignBoolReturn) {
      text += "\n" + ind0_ + "return " + name;
    }
    return RewriteSuggestion{std::move(text),
                             "Assigns the condition directly instead of "
                             "branching on it."};
  }

  std::optional<RewriteSuggestion> nested_if() const {
    std::vector<const Expr*> conds;
    const IfChain* cur = &chain_;
    conds.push_back(&cur->branches[0].cond);
    const std::vector<Stmt>* body = &cur->branches[0].body;
    while (body->size() == 1 && (*body)[0].kind == StmtKind::IfChainStmt) {
      const IfChain& inner = *(*body)[0].chain;
      if (inner.branches.size() != 1 || inner.else_body) break;
      conds.push_back(&inner.branches[0].cond);
      body = &inner.branches[0].body;
    }
    if (conds.size() < 2 || body->empty()) return std::nullopt;

    std::string header = "if ";
    for (std::size_t i = 0; i < conds.size(); ++i) {
      if (i) header += " and ";
      header += and_operand(*conds[i]);
    }
    header += ":";
    const int target_col = chain_.branches[0].body[0].span.col_start;
    return RewriteSuggestion{
        header + "\n" + block_lines(body->front(), body->back(), target_col),
        "Merges the nested conditions into a single if."};
  }

  std::optional<RewriteSuggestion> flatten_else() const {
    const Branch& last_br = chain_.branches.back();
    if (last_br.body.empty()) return std::nullopt;
    std::string out = src_.slice(Span::join(chain_.branches[0].kw_span,
                                            last_br.body.back().span));
    const IfChain* cur = &chain_;
    while (true) {
      const std::vector<Stmt>& eb = *cur->else_body;
      const Stmt& inner_stmt = eb[0];
      const IfChain& inner = *inner_stmt.chain;
      const int delta = chain_.span.col_start - inner_stmt.span.col_start;
      for (std::size_t j = 0; j < inner.branches.size(); ++j) {
        const Branch& br = inner.branches[j];
        std::string cl = src_.slice(br.span);
        if (j == 0) cl = "elif" + cl.substr(2);
        out += "\n" + ind0_ + reindent(cl, br.span.line_start, delta);
      }
      if (!inner.else_body) break;
      if (inner.else_body->size() == 1 &&
          (*inner.else_body)[0].kind == StmtKind::IfChainStmt) {
        cur = &inner;
        continue;
      }
      std::string et = src_.slice(*inner.else_span);
      out += "\n" + ind0_ + reindent(et, inner.else_span->line_start, delta);
      break;
    }
    return RewriteSuggestion{std::move(out),
                             "Flattens the nested conditional into elif "
                             "clauses."};
  }

  std::optional<RewriteSuggestion> unnecessary_elif() const {
    const Branch& b2 = chain_.branches[1];
    const std::string whole = src_.slice(chain_.span);
    const std::size_t base =
        src_.offset_of(chain_.span.line_start, chain_.span.col_start);
    const std::size_t kw =
        src_.offset_of(b2.kw_span.line_start, b2.kw_span.col_start) - base;
    const std::size_t colon =
        src_.offset_of(b2.colon_span.line_start, b2.colon_span.col_start) -
        base;
    if (kw >= whole.size() || colon > whole.size() || colon < kw) {
      return std::nullopt;
    }
    return RewriteSuggestion{
        whole.substr(0, kw) + "else" + whole.substr(colon),
        "Replaces the complementary elif with a plain else."};
  }

  std::optional<RewriteSuggestion> duplication() const {
    const std::vector<Stmt>& ib = chain_.branches[0].body;
    const std::vector<Stmt>& eb = *chain_.else_body;
    const int k = detect::common_suffix_len(ib, eb);
    const int n1 = static_cast<int>(ib.size());
    const int n2 = static_cast<int>(eb.size());
    const int chain_col = chain_.span.col_start;

    switch (hit_.diag.kind) {
      case PatternKind::DuplicateIfElseBody: {
        const std::string text = slice_stmts(ib.front(), ib.back());
        return RewriteSuggestion{
            reindent(text, ib.front().span.line_start,
                     chain_col - ib.front().span.col_start),
            "Keeps one copy of the duplicated body and drops the "
            "conditional."};
      }
      case PatternKind::UnnecessaryElse: {
        if (n1 > n2) {
          const Stmt& kept_end = ib[static_cast<std::size_t>(n1 - k - 1)];
          std::string kept = src_.slice(
              Span::join(chain_.branches[0].kw_span, kept_end.span));
          std::string hoist = block_lines(
              ib[static_cast<std::size_t>(n1 - k)], ib.back(), chain_col);
          return RewriteSuggestion{kept + "\n" + hoist,
                                   "Hoists the shared tail out of the "
                                   "conditional and drops the else."};
        }
        const Expr& cond = chain_.branches[0].cond;
        const Stmt& uniq_last = eb[static_cast<std::size_t>(n2 - k - 1)];
        std::string text = "if " + neg_text(cond) + ":\n";
        text += block_lines(eb.front(), uniq_last,
                            eb.front().span.col_start);
        text += "\n" + block_lines(ib.front(), ib.back(), chain_col);
        return RewriteSuggestion{std::move(text),
                                 "Inverts the condition and hoists the "
                                 "shared tail out of the conditional."};
      }
      case PatternKind::SeveralDuplicateIfElseStatements:
      case PatternKind::DuplicateIfElseStatement: {
        const Stmt& kept_if_end = ib[static_cast<std::size_t>(n1 - k - 1)];
        const Stmt& kept_else_end = eb[static_cast<std::size_t>(n2 - k - 1)];
        std::string part_a = src_.slice(
            Span::join(chain_.branches[0].kw_span, kept_if_end.span));
        std::string part_b = src_.slice(
            Span::join(*chain_.else_kw_span, kept_else_end.span));
        std::string hoist = block_lines(
            ib[static_cast<std::size_t>(n1 - k)], ib.back(), chain_col);
        return RewriteSuggestion{
            part_a + "\n" + ind0_ + part_b + "\n" + hoist,
            "Moves the duplicated tail after the conditional."};
      }
      default:
        return std::nullopt;
    }
  }

  const detect::Hit& hit_;
  const IfChain& chain_;
  const ParsedModule& m_;
  const SourceInfo& src_;
  std::string ind0_;
};

}  // namespace

std::optional<RewriteSuggestion> suggest_fix(const detect::Hit& hit,
                                             const ParsedModule& m) {
  if (hit.chain == nullptr || !m.valid()) return std::nullopt;
  switch (hit.diag.kind) {
    case PatternKind::EmptyIfBody:
    case PatternKind::EmptyElseBody:
    case PatternKind::IfElseAssignReturn:
      return std::nullopt;
    default:
      break;
  }
  return Rewriter(hit, m).build();
}

std::string apply_replacement(const SourceInfo& src, const Span& span,
                              std::string_view replacement) {
  const std::size_t begin = src.offset_of(span.line_start, span.col_start);
  std::size_t end = src.offset_of(span.line_end, span.col_end) + 1;
  if (end > src.text.size()) end = src.text.size();
  std::string out = src.text.substr(0, begin);
  out += replacement;
  out += src.text.substr(end);
  return out;
}

}  // namespace condlint
