#include "core/parser.hpp"

#include <unordered_set>

#include "core/lexer.hpp"

namespace condlint {
namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

const std::unordered_set<std::string_view> kAugOps = {
    "+=", "-=", "*=", "/=", "//=", "%=", "@=",
    "**=", ">>=", "<<=", "&=", "|=", "^="};

bool is_open(const Token& t) {
  return t.kind == TokenKind::Op &&
         (t.text == "(" || t.text == "[" || t.text == "{");
}
bool is_close(const Token& t) {
  return t.kind == TokenKind::Op &&
         (t.text == ")" || t.text == "]" || t.text == "}");
}

Span span_of_range(const std::vector<Token>& toks, std::size_t a,
                   std::size_t b) {
  if (a >= b) return {};
  return Span::join(toks[a].span(), toks[b - 1].span());
}

// Strips matched outer parentheses from [a, b).
void strip_outer_parens(const std::vector<Token>& toks, std::size_t& a,
                        std::size_t& b) {
  while (b - a >= 2 && toks[a].is_op("(")) {
    int depth = 0;
    std::size_t close = npos;
    for (std::size_t k = a; k < b; ++k) {
      if (is_open(toks[k])) ++depth;
      else if (is_close(toks[k]) && --depth == 0) {
        close = k;
        break;
      }
    }
    if (close != b - 1) return;
    ++a;
    --b;
  }
}

struct TopScan {
  bool blocked = false;   // and/or/ternary/lambda/comma/walrus/unary not
  bool risky = false;     // top-level comma or walrus: needs parens when moved
  std::vector<std::pair<std::size_t, CmpOp>> cmps;  // position, operator
  std::vector<std::size_t> cmp_width;
};

// Scans [a, b) at bracket depth zero for the features the shallow expression
// grammar cares about.
TopScan scan_top(const std::vector<Token>& toks, std::size_t a, std::size_t b) {
  TopScan r;
  int depth = 0;
  for (std::size_t k = a; k < b; ++k) {
    const Token& t = toks[k];
    if (is_open(t)) {
      ++depth;
      continue;
    }
    if (is_close(t)) {
      --depth;
      continue;
    }
    if (depth != 0) continue;
    if (t.kind == TokenKind::Keyword) {
      if (t.text == "and" || t.text == "or" || t.text == "if" ||
          t.text == "else" || t.text == "lambda") {
        r.blocked = true;
      } else if (t.text == "is") {
        if (k + 1 < b && toks[k + 1].is_kw("not")) {
          r.cmps.emplace_back(k, CmpOp::IsNot);
          r.cmp_width.push_back(2);
          ++k;
        } else {
          r.cmps.emplace_back(k, CmpOp::Is);
          r.cmp_width.push_back(1);
        }
      } else if (t.text == "in") {
        r.cmps.emplace_back(k, CmpOp::In);
        r.cmp_width.push_back(1);
      } else if (t.text == "not") {
        if (k + 1 < b && toks[k + 1].is_kw("in")) {
          r.cmps.emplace_back(k, CmpOp::NotIn);
          r.cmp_width.push_back(2);
          ++k;
        } else {
          // A unary not in binary position; nothing the shallow grammar can
          // do with it.
          r.blocked = true;
        }
      }
      continue;
    }
    if (t.kind == TokenKind::Op) {
      if (t.text == ",") {
        r.blocked = true;
        r.risky = true;
      } else if (t.text == ":=") {
        r.blocked = true;
        r.risky = true;
      } else if (t.text == "==") {
        r.cmps.emplace_back(k, CmpOp::Eq);
        r.cmp_width.push_back(1);
      } else if (t.text == "!=") {
        r.cmps.emplace_back(k, CmpOp::Ne);
        r.cmp_width.push_back(1);
      } else if (t.text == "<") {
        r.cmps.emplace_back(k, CmpOp::Lt);
        r.cmp_width.push_back(1);
      } else if (t.text == "<=") {
        r.cmps.emplace_back(k, CmpOp::Le);
        r.cmp_width.push_back(1);
      } else if (t.text == ">") {
        r.cmps.emplace_back(k, CmpOp::Gt);
        r.cmp_width.push_back(1);
      } else if (t.text == ">=") {
        r.cmps.emplace_back(k, CmpOp::Ge);
        r.cmp_width.push_back(1);
      }
    }
  }
  return r;
}

Expr parse_expr_tokens(const std::vector<Token>& toks, std::size_t a,
                       std::size_t b) {
  Expr e;
  e.span = span_of_range(toks, a, b);
  std::size_t ca = a, cb = b;
  strip_outer_parens(toks, ca, cb);
  e.core_span = span_of_range(toks, ca, cb);
  if (ca >= cb) {
    e.fp = Fingerprint{};
    return e;
  }
  e.fp = fingerprint_tokens(toks, ca, cb - 1);

  if (cb - ca == 1) {
    const Token& t = toks[ca];
    if (t.is_kw("True") || t.is_kw("False")) {
      e.kind = ExprKind::BoolLit;
      e.bool_value = t.text == "True";
    } else if (t.kind == TokenKind::Name) {
      e.kind = ExprKind::Name;
      e.name = std::string(t.text);
    }
    return e;
  }

  if (toks[ca].is_kw("not")) {
    const TopScan rest = scan_top(toks, ca + 1, cb);
    // `not` binds looser than comparisons but tighter than and/or and the
    // ternary, so the operand reading is only sound when none of those appear
    // at the top level of the remainder.
    bool rest_blocked = rest.blocked;
    if (!rest_blocked && toks[ca + 1].is_kw("not")) {
      // `not not x` recurses cleanly.
    }
    if (!rest_blocked) {
      e.kind = ExprKind::Not;
      e.inner = std::make_unique<Expr>(parse_expr_tokens(toks, ca + 1, cb));
      return e;
    }
    e.opaque_risky = rest.risky;
    return e;
  }

  const TopScan top = scan_top(toks, ca, cb);
  if (top.blocked) {
    e.opaque_risky = top.risky;
    return e;
  }
  if (top.cmps.size() == 1) {
    const std::size_t pos = top.cmps[0].first;
    const std::size_t width = top.cmp_width[0];
    if (pos > ca && pos + width < cb) {
      e.kind = ExprKind::Compare;
      e.cmp_op = top.cmps[0].second;
      std::size_t la = ca, lb = pos;
      std::size_t ra = pos + width, rb = cb;
      e.lhs = fingerprint_tokens(toks, la, lb - 1);
      e.rhs = fingerprint_tokens(toks, ra, rb - 1);
      strip_outer_parens(toks, la, lb);
      strip_outer_parens(toks, ra, rb);
      e.lhs_span = span_of_range(toks, la, lb);
      e.rhs_span = span_of_range(toks, ra, rb);
      return e;
    }
  }
  return e;
}

class Parser {
 public:
  Parser(const std::vector<Token>& toks, ParsedModule& m)
      : toks_(toks), m_(m) {}

  void run() {
    parse_statements(m_.body);
    if (!failed_ && !cur().is(TokenKind::End)) {
      error(cur(), "unexpected token");
    }
    if (failed_) m_.body.clear();
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  const Token& tok(std::size_t k) const { return toks_[k]; }

  void consume() {
    if (!cur().structural()) last_real_ = i_;
    if (i_ + 1 < toks_.size()) ++i_;
  }

  void error(const Token& at, std::string msg) {
    if (!failed_) {
      m_.parse_errors.push_back(ParseError{at.span(), std::move(msg)});
      failed_ = true;
    }
  }

  bool is_compound_kw(const Token& t) const {
    if (t.kind != TokenKind::Keyword) return false;
    return t.text == "if" || t.text == "for" || t.text == "while" ||
           t.text == "try" || t.text == "with" || t.text == "def" ||
           t.text == "class" || t.text == "async" || t.text == "elif" ||
           t.text == "else" || t.text == "except" || t.text == "finally";
  }

  std::size_t find_header_colon(std::size_t from) const {
    int depth = 0;
    int lambdas = 0;
    for (std::size_t k = from; k < toks_.size(); ++k) {
      const Token& t = toks_[k];
      if (t.structural()) return npos;
      if (is_open(t)) {
        ++depth;
      } else if (is_close(t)) {
        --depth;
      } else if (depth == 0) {
        if (t.is_kw("lambda")) {
          ++lambdas;
        } else if (t.is_op(":")) {
          if (lambdas > 0) {
            --lambdas;
          } else {
            return k;
          }
        }
      }
    }
    return npos;
  }

  std::size_t find_simple_end(std::size_t from) const {
    int depth = 0;
    for (std::size_t k = from; k < toks_.size(); ++k) {
      const Token& t = toks_[k];
      if (t.is(TokenKind::Newline) || t.is(TokenKind::End)) return k;
      if (is_open(t)) ++depth;
      else if (is_close(t)) --depth;
      else if (depth == 0 && t.is_op(";")) return k;
    }
    return toks_.size() - 1;
  }

  void parse_statements(std::vector<Stmt>& out) {
    while (!failed_) {
      const Token& t = cur();
      if (t.is(TokenKind::Dedent) || t.is(TokenKind::End)) return;
      if (t.is(TokenKind::Indent)) {
        error(t, "unexpected indent");
        return;
      }
      parse_statement(out);
    }
  }

  void parse_statement(std::vector<Stmt>& out) {
    const Token& t = cur();
    if (t.kind == TokenKind::Keyword) {
      if (t.text == "if") {
        out.push_back(parse_if_chain());
        return;
      }
      if (t.text == "elif") {
        error(t, "elif clause without a matching if");
        return;
      }
      if (t.text == "else") {
        error(t, "else clause without a matching statement");
        return;
      }
      if (t.text == "except" || t.text == "finally") {
        error(t, std::string(t.text) + " clause without a matching try");
        return;
      }
      if (t.text == "for" || t.text == "while" || t.text == "try" ||
          t.text == "with" || t.text == "def" || t.text == "class" ||
          t.text == "async") {
        out.push_back(parse_opaque_compound());
        return;
      }
    }
    parse_simple_line(out);
  }

  // One physical (logical) line of simple statements, split on semicolons.
  void parse_simple_line(std::vector<Stmt>& out) {
    while (!failed_) {
      const std::size_t a = i_;
      const std::size_t end = find_simple_end(a);
      if (end == a) {
        // Empty slot: `;;` or a line starting with ';'.
        error(cur(), "unexpected ';'");
        return;
      }
      out.push_back(build_simple(a, end));
      i_ = end;
      last_real_ = end - 1;
      if (cur().is_op(";")) {
        consume();
        if (cur().is(TokenKind::Newline)) {
          consume();
          return;
        }
        if (cur().is(TokenKind::End)) return;
        continue;
      }
      if (cur().is(TokenKind::Newline)) consume();
      return;
    }
  }

  Stmt build_simple(std::size_t a, std::size_t b) {
    Stmt s;
    s.span = span_of_range(toks_, a, b);
    s.fp = fingerprint_tokens(toks_, a, b - 1);
    const Token& first = tok(a);

    if (b - a == 1 && first.is_kw("pass")) {
      s.kind = StmtKind::Pass;
      return s;
    }
    if (first.is_kw("return")) {
      s.kind = StmtKind::Return;
      if (b - a > 1) s.value = parse_expr_tokens(toks_, a + 1, b);
      return s;
    }
    if (first.kind == TokenKind::Keyword && !first.is_kw("not") &&
        !first.is_kw("True") && !first.is_kw("False") &&
        !first.is_kw("lambda") && !first.is_kw("await")) {
      // del / global / import / assert / raise / yield / break / continue...
      s.kind = StmtKind::OpaqueSimple;
      return s;
    }

    int depth = 0;
    int lambdas = 0;
    bool top_colon = false;
    std::size_t first_eq = npos;
    int eq_count = 0;
    std::size_t aug_pos = npos;
    for (std::size_t k = a; k < b; ++k) {
      const Token& t = tok(k);
      if (is_open(t)) {
        ++depth;
        continue;
      }
      if (is_close(t)) {
        --depth;
        continue;
      }
      if (depth != 0) continue;
      if (t.is_kw("lambda")) {
        ++lambdas;
        continue;
      }
      if (t.kind != TokenKind::Op) continue;
      if (t.text == ":") {
        if (lambdas > 0) {
          --lambdas;
        } else {
          top_colon = true;
        }
      } else if (t.text == "=" && lambdas == 0) {
        if (first_eq == npos) first_eq = k;
        ++eq_count;
      } else if (kAugOps.count(t.text) && lambdas == 0 && aug_pos == npos) {
        aug_pos = k;
      }
    }

    s.kind = StmtKind::OpaqueSimple;
    if (top_colon) return s;  // annotated assignment stays opaque
    if (aug_pos != npos && (first_eq == npos || aug_pos < first_eq)) {
      if (aug_pos == a || aug_pos + 1 == b) return s;
      s.kind = StmtKind::AugAssign;
      s.aug_op = std::string(tok(aug_pos).text);
      fill_target(s, a, aug_pos);
      s.value = parse_expr_tokens(toks_, aug_pos + 1, b);
      return s;
    }
    if (first_eq != npos) {
      if (eq_count > 1) return s;  // chained assignment stays opaque
      if (first_eq == a || first_eq + 1 == b) return s;
      s.kind = StmtKind::Assign;
      fill_target(s, a, first_eq);
      s.value = parse_expr_tokens(toks_, first_eq + 1, b);
      return s;
    }
    return s;
  }

  void fill_target(Stmt& s, std::size_t a, std::size_t b) {
    s.target_fp = fingerprint_tokens(toks_, a, b - 1);
    if (b - a == 1 && tok(a).kind == TokenKind::Name) {
      s.target_name = std::string(tok(a).text);
    }
  }

  // Parses the suite after a header colon: either an indented block or an
  // inline list of simple statements.
  std::vector<Stmt> parse_suite() {
    std::vector<Stmt> body;
    if (failed_) return body;
    if (cur().is(TokenKind::Newline)) {
      consume();
      if (!cur().is(TokenKind::Indent)) {
        error(cur(), "expected an indented block");
        return body;
      }
      consume();
      parse_statements(body);
      if (failed_) return body;
      if (cur().is(TokenKind::Dedent)) {
        consume();
      } else if (!cur().is(TokenKind::End)) {
        error(cur(), "expected dedent");
      }
      if (body.empty()) error(cur(), "expected an indented block");
      return body;
    }
    // Inline suite.
    while (!failed_) {
      if (is_compound_kw(cur())) {
        error(cur(), "inline compound statements are not supported");
        return body;
      }
      if (cur().is(TokenKind::Newline) || cur().is(TokenKind::End)) {
        if (body.empty()) error(cur(), "expected a statement after ':'");
        if (cur().is(TokenKind::Newline)) consume();
        return body;
      }
      const std::size_t a = i_;
      const std::size_t end = find_simple_end(a);
      if (end == a) {
        error(cur(), "unexpected ';'");
        return body;
      }
      body.push_back(build_simple(a, end));
      i_ = end;
      last_real_ = end - 1;
      if (cur().is_op(";")) consume();
    }
    return body;
  }

  Branch parse_branch(bool is_elif) {
    Branch br;
    br.is_elif = is_elif;
    br.kw_span = cur().span();
    consume();  // if / elif
    const std::size_t cond_first = i_;
    const std::size_t colon = find_header_colon(cond_first);
    if (colon == npos) {
      error(cur(), "expected ':'");
      return br;
    }
    if (colon == cond_first) {
      error(cur(), "expected an expression");
      return br;
    }
    br.cond = parse_expr_tokens(toks_, cond_first, colon);
    while (i_ < colon) consume();
    br.colon_span = cur().span();
    consume();  // ':'
    br.body = parse_suite();
    if (!failed_ && !br.body.empty()) {
      br.span = Span::join(br.kw_span, br.body.back().span);
    }
    return br;
  }

  Stmt parse_if_chain() {
    const std::size_t first_tok = i_;
    auto chain = std::make_unique<IfChain>();
    chain->branches.push_back(parse_branch(false));
    while (!failed_ && cur().is_kw("elif")) {
      chain->branches.push_back(parse_branch(true));
    }
    if (!failed_ && cur().is_kw("else")) {
      chain->else_kw_span = cur().span();
      consume();
      if (!cur().is_op(":")) {
        error(cur(), "expected ':'");
      } else {
        consume();
        chain->else_body = parse_suite();
        if (!failed_) {
          chain->else_span = Span::join(*chain->else_kw_span,
                                        chain->else_body->back().span);
        }
      }
    }
    Stmt s;
    s.kind = StmtKind::IfChainStmt;
    if (!failed_) {
      chain->span = chain->branches.front().span;
      for (const auto& br : chain->branches) {
        chain->span = Span::join(chain->span, br.span);
      }
      if (chain->else_span) {
        chain->span = Span::join(chain->span, *chain->else_span);
      }
      s.span = chain->span;
      s.fp = fingerprint_tokens(toks_, first_tok, last_real_);
    }
    s.chain = std::move(chain);
    return s;
  }

  // Any non-if compound statement: clause headers stay opaque, bodies are
  // parsed recursively so nested chains are still visited.
  Stmt parse_opaque_compound() {
    const std::size_t first_tok = i_;
    Stmt s;
    s.kind = StmtKind::OpaqueCompound;
    const Token& kw = cur();
    const std::string head(kw.text);
    const Span head_span = kw.span();

    if (head == "async") {
      const Token& nxt = tok(i_ + 1);
      if (!(nxt.is_kw("def") || nxt.is_kw("for") || nxt.is_kw("with"))) {
        error(nxt, "invalid syntax after 'async'");
        return s;
      }
    }

    auto parse_clause = [&](bool record_header) {
      const std::size_t kw_tok = i_;
      consume();  // clause keyword
      const std::size_t colon = find_header_colon(i_);
      if (colon == npos) {
        error(cur(), "expected ':'");
        return;
      }
      while (i_ < colon) consume();
      if (record_header) {
        s.header_fp = fingerprint_tokens(toks_, kw_tok, colon);
      }
      consume();  // ':'
      s.bodies.push_back(parse_suite());
    };

    parse_clause(true);
    if (failed_) return s;

    const std::string real_head =
        head == "async" ? std::string(tok(first_tok + 1).text) : head;
    if (real_head == "for" || real_head == "while") {
      if (cur().is_kw("else")) parse_clause(false);
    } else if (real_head == "try") {
      while (!failed_ && (cur().is_kw("except") || cur().is_kw("else") ||
                          cur().is_kw("finally"))) {
        parse_clause(false);
      }
    }
    if (failed_) return s;

    Span end = head_span;
    for (const auto& body : s.bodies) {
      if (!body.empty()) end = Span::join(end, body.back().span);
    }
    s.span = Span::join(head_span, end);
    s.fp = fingerprint_tokens(toks_, first_tok, last_real_);
    return s;
  }

  const std::vector<Token>& toks_;
  ParsedModule& m_;
  std::size_t i_ = 0;
  std::size_t last_real_ = 0;
  bool failed_ = false;
};

}  // namespace

ParsedModule parse_module(std::string_view bytes, std::string path) {
  auto src = make_source(bytes, std::move(path));
  ParsedModule m;
  m.source = src;

  {
    const LexResult raw = lex(src->text, LexMode::Raw);
    int lloc = 0;
    for (auto b : raw.code_line) lloc += b != 0;
    m.lloc = lloc;
  }

  if (!src->decode_ok) {
    const int last = src->line_count();
    m.parse_errors.push_back(
        ParseError{Span{last, 1, last, 1}, src->decode_error});
    return m;
  }

  LexResult lexed = lex(src->text, LexMode::Structured, src.get());
  if (!lexed.ok()) {
    m.parse_errors.push_back(lexed.errors.front());
    return m;
  }
  Parser(lexed.tokens, m).run();
  return m;
}

int count_lloc(std::string_view bytes) {
  auto src = make_source(bytes, "");
  const LexResult raw = lex(src->text, LexMode::Raw);
  int lloc = 0;
  for (auto b : raw.code_line) lloc += b != 0;
  return lloc;
}

Expr parse_expr_text(std::string_view text) {
  auto src = make_source(text, "");
  LexResult lexed = lex(src->text, LexMode::Structured);
  if (!lexed.ok()) lexed = lex(src->text, LexMode::Raw);
  const auto& toks = lexed.tokens;
  std::size_t first = 0;
  std::size_t last = toks.size();
  while (first < last && toks[first].structural()) ++first;
  while (last > first && toks[last - 1].structural()) --last;
  if (first >= last) return Expr{};
  return parse_expr_tokens(toks, first, last);
}

}  // namespace condlint
