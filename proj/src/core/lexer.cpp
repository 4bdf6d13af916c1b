#include "core/lexer.hpp"

#include <array>
#include <cctype>
#include <unordered_set>

namespace condlint {
namespace {

const std::unordered_set<std::string_view> kKeywords = {
    "False",  "None",   "True",  "and",    "as",     "assert", "async",
    "await",  "break",  "class", "continue", "def",  "del",    "elif",
    "else",   "except", "finally", "for",  "from",   "global", "if",
    "import", "in",     "is",    "lambda", "nonlocal", "not",  "or",
    "pass",   "raise",  "return", "try",  "while",  "with",   "yield",
};

constexpr std::array<std::string_view, 5> kOps3 = {"**=", "//=", ">>=", "<<=",
                                                   "..."};
constexpr std::array<std::string_view, 19> kOps2 = {
    "**", "//", ">>", "<<", "<=", ">=", "==", "!=", "->", "+=",
    "-=", "*=", "/=", "%=", "@=", "&=", "|=", "^=", ":="};
constexpr std::string_view kOps1 = "+-*/%@&|^~<>=()[]{},:.;";

bool is_name_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c >= 0x80;
}
bool is_name_cont(unsigned char c) {
  return std::isalnum(c) || c == '_' || c >= 0x80;
}
bool is_string_prefix(std::string_view word) {
  if (word.empty() || word.size() > 2) return false;
  for (char c : word) {
    switch (std::tolower(static_cast<unsigned char>(c))) {
      case 'r':
      case 'b':
      case 'u':
      case 'f':
        break;
      default:
        return false;
    }
  }
  return true;
}

class Lexer {
 public:
  Lexer(std::string_view text, LexMode mode, SourceInfo* info)
      : src_(text), mode_(mode), info_(info) {
    int lines = 1;
    for (char c : text)
      if (c == '\n') ++lines;
    if (!text.empty() && text.back() == '\n') --lines;
    if (lines < 1) lines = 1;
    out_.code_line.assign(static_cast<std::size_t>(lines), 0);
    if (info_) {
      info_->logical_start.assign(static_cast<std::size_t>(lines), 0);
    }
  }

  LexResult run() {
    indents_.push_back(0);
    while (!done_) {
      if (at_line_start_) {
        begin_line();
        if (done_) break;
        continue;
      }
      scan_item();
    }
    finish();
    return std::move(out_);
  }

 private:
  bool structured() const { return mode_ == LexMode::Structured; }
  bool eof() const { return pos_ >= src_.size(); }
  char cur() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  char peek(std::size_t k = 1) const {
    return pos_ + k < src_.size() ? src_[pos_ + k] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void error(Span span, std::string msg) {
    if (structured()) {
      out_.errors.push_back(ParseError{span, std::move(msg)});
      done_ = true;
    }
  }

  void emit(TokenKind kind, std::size_t begin, int bline, int bcol) {
    Token t;
    t.kind = kind;
    t.text = src_.substr(begin, pos_ - begin);
    t.line = bline;
    t.col = bcol;
    t.end_line = line_;
    t.end_col = col_ > 1 ? col_ - 1 : 1;
    if (kind != TokenKind::Newline && kind != TokenKind::Indent &&
        kind != TokenKind::Dedent) {
      mark_code(t.line, t.end_line);
    }
    out_.tokens.push_back(t);
  }

  void emit_marker(TokenKind kind) {
    Token t;
    t.kind = kind;
    t.line = line_;
    t.col = col_;
    t.end_line = line_;
    t.end_col = col_;
    out_.tokens.push_back(t);
  }

  void mark_code(int first, int last) {
    for (int l = first; l <= last; ++l) {
      const auto i = static_cast<std::size_t>(l - 1);
      if (i < out_.code_line.size()) out_.code_line[i] = 1;
    }
  }

  void mark_logical_start() {
    if (!info_) return;
    const auto i = static_cast<std::size_t>(line_ - 1);
    if (i < info_->logical_start.size()) info_->logical_start[i] = 1;
  }

  // Handles the start of a physical line: indentation when we are at a fresh
  // logical line, plain whitespace skipping inside continuations.
  void begin_line() {
    at_line_start_ = false;
    const bool fresh = depth_ == 0 && !after_backslash_;
    after_backslash_ = false;

    if (!fresh) {
      while (!eof() && (cur() == ' ' || cur() == '\t' || cur() == '\f'))
        advance();
      return;
    }

    mark_logical_start();
    const int bline = line_;
    int width = 0;
    char seen = '\0';
    bool mixed = false;
    while (!eof()) {
      const char c = cur();
      if (c == ' ' || c == '\t') {
        if (seen == '\0') {
          seen = c;
        } else if (seen != c) {
          mixed = true;
        }
        ++width;
        advance();
      } else if (c == '\f') {
        advance();
      } else {
        break;
      }
    }

    if (eof()) {
      done_ = true;
      return;
    }
    if (cur() == '#') {
      skip_comment();
      return;
    }
    if (cur() == '\n') {
      advance();
      at_line_start_ = true;
      return;
    }

    if (!structured()) return;

    if (mixed) {
      error(Span{bline, 1, bline, width},
            "inconsistent use of tabs and spaces in indentation");
      return;
    }
    if (seen != '\0') {
      if (!indent_char_set_) {
        indent_char_ = seen;
        indent_char_set_ = true;
        if (info_) info_->indent_char = seen;
      } else if (seen != indent_char_) {
        error(Span{bline, 1, bline, width},
              "inconsistent use of tabs and spaces in indentation");
        return;
      }
    }

    if (width > indents_.back()) {
      indents_.push_back(width);
      emit_marker(TokenKind::Indent);
    } else {
      while (width < indents_.back()) {
        indents_.pop_back();
        emit_marker(TokenKind::Dedent);
      }
      if (width != indents_.back()) {
        error(Span{bline, 1, bline, width > 0 ? width : 1},
              "unindent does not match any outer indentation level");
      }
    }
  }

  void skip_comment() {
    while (!eof() && cur() != '\n') advance();
  }

  void scan_item() {
    if (eof()) {
      done_ = true;
      return;
    }
    const char c = cur();
    if (c == '\n') {
      if (depth_ == 0) {
        if (tokens_on_line_ && structured()) emit_marker(TokenKind::Newline);
        tokens_on_line_ = false;
      }
      advance();
      at_line_start_ = true;
      return;
    }
    if (c == ' ' || c == '\t' || c == '\f') {
      advance();
      return;
    }
    if (c == '#') {
      skip_comment();
      return;
    }
    if (c == '\\') {
      if (peek() == '\n') {
        advance();
        advance();
        after_backslash_ = true;
        at_line_start_ = true;
        return;
      }
      if (pos_ + 1 >= src_.size()) {
        error(Span{line_, col_, line_, col_}, "unexpected end of file after line continuation");
        done_ = true;
        return;
      }
      error(Span{line_, col_, line_, col_},
            "unexpected character after line continuation character");
      if (!structured()) advance();
      return;
    }
    if (c == '\0') {
      error(Span{line_, col_, line_, col_},
            "source code cannot contain null bytes");
      if (!structured()) advance();
      return;
    }

    const std::size_t begin = pos_;
    const int bline = line_, bcol = col_;

    if (is_name_start(static_cast<unsigned char>(c))) {
      scan_name(begin, bline, bcol);
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '.' && std::isdigit(static_cast<unsigned char>(peek())))) {
      scan_number(begin, bline, bcol);
    } else if (c == '\'' || c == '"') {
      scan_string(begin, bline, bcol);
    } else {
      scan_op(begin, bline, bcol);
    }
    tokens_on_line_ = true;
  }

  void scan_name(std::size_t begin, int bline, int bcol) {
    while (!eof() && is_name_cont(static_cast<unsigned char>(cur()))) advance();
    const std::string_view word = src_.substr(begin, pos_ - begin);
    if ((cur() == '\'' || cur() == '"') && is_string_prefix(word)) {
      scan_string(begin, bline, bcol);
      return;
    }
    emit(kKeywords.count(word) ? TokenKind::Keyword : TokenKind::Name, begin,
         bline, bcol);
  }

  void scan_number(std::size_t begin, int bline, int bcol) {
    if (cur() == '0' && (peek() == 'x' || peek() == 'X' || peek() == 'o' ||
                         peek() == 'O' || peek() == 'b' || peek() == 'B')) {
      advance();
      advance();
      while (!eof() && (std::isalnum(static_cast<unsigned char>(cur())) ||
                        cur() == '_'))
        advance();
      emit(TokenKind::Number, begin, bline, bcol);
      return;
    }
    auto digits = [&] {
      while (!eof() && (std::isdigit(static_cast<unsigned char>(cur())) ||
                        cur() == '_'))
        advance();
    };
    digits();
    if (cur() == '.') {
      advance();
      digits();
    }
    if ((cur() == 'e' || cur() == 'E') &&
        (std::isdigit(static_cast<unsigned char>(peek())) ||
         ((peek() == '+' || peek() == '-') &&
          std::isdigit(static_cast<unsigned char>(peek(2)))))) {
      advance();
      if (cur() == '+' || cur() == '-') advance();
      digits();
    }
    if (cur() == 'j' || cur() == 'J') advance();
    emit(TokenKind::Number, begin, bline, bcol);
  }

  void scan_string(std::size_t begin, int bline, int bcol) {
    const char quote = cur();
    bool triple = false;
    advance();
    if (cur() == quote && peek() == quote) {
      triple = true;
      advance();
      advance();
    } else if (cur() == quote) {
      // Empty short string.
      advance();
      emit(TokenKind::String, begin, bline, bcol);
      return;
    }
    while (!eof()) {
      const char c = cur();
      if (c == '\\') {
        advance();
        if (!eof()) advance();
        continue;
      }
      if (c == quote) {
        if (!triple) {
          advance();
          emit(TokenKind::String, begin, bline, bcol);
          return;
        }
        if (peek() == quote && peek(2) == quote) {
          advance();
          advance();
          advance();
          emit(TokenKind::String, begin, bline, bcol);
          return;
        }
        advance();
        continue;
      }
      if (c == '\n' && !triple) {
        error(Span{bline, bcol, line_, col_},
              "unterminated string literal");
        emit(TokenKind::String, begin, bline, bcol);
        return;
      }
      advance();
    }
    error(Span{bline, bcol, line_, col_}, "unterminated string literal");
    emit(TokenKind::String, begin, bline, bcol);
  }

  void scan_op(std::size_t begin, int bline, int bcol) {
    const std::string_view rest = src_.substr(pos_);
    std::string_view matched;
    for (auto op : kOps3) {
      if (rest.starts_with(op)) {
        matched = op;
        break;
      }
    }
    if (matched.empty()) {
      for (auto op : kOps2) {
        if (rest.starts_with(op)) {
          matched = op;
          break;
        }
      }
    }
    if (matched.empty() && kOps1.find(rest[0]) != std::string_view::npos) {
      matched = rest.substr(0, 1);
    }
    if (matched.empty()) {
      error(Span{bline, bcol, bline, bcol}, "invalid character in source");
      if (!structured()) advance();
      return;
    }
    const char c0 = matched[0];
    if (matched.size() == 1) {
      if (c0 == '(' || c0 == '[' || c0 == '{') {
        ++depth_;
      } else if (c0 == ')' || c0 == ']' || c0 == '}') {
        if (depth_ == 0) {
          error(Span{bline, bcol, bline, bcol},
                std::string("unmatched '") + c0 + "'");
          if (!structured()) advance();
          return;
        }
        --depth_;
      }
    }
    for (std::size_t i = 0; i < matched.size(); ++i) advance();
    emit(TokenKind::Op, begin, bline, bcol);
  }

  void finish() {
    if (structured()) {
      if (!out_.errors.empty()) {
        emit_marker(TokenKind::End);
        return;
      }
      if (depth_ > 0) {
        out_.errors.push_back(ParseError{Span{line_, col_, line_, col_},
                                         "unexpected end of file: bracket was never closed"});
        emit_marker(TokenKind::End);
        return;
      }
      if (tokens_on_line_) emit_marker(TokenKind::Newline);
      while (indents_.size() > 1) {
        indents_.pop_back();
        emit_marker(TokenKind::Dedent);
      }
    }
    emit_marker(TokenKind::End);
  }

  std::string_view src_;
  LexMode mode_;
  SourceInfo* info_;
  LexResult out_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  int depth_ = 0;
  std::vector<int> indents_;
  bool at_line_start_ = true;
  bool after_backslash_ = false;
  bool tokens_on_line_ = false;
  bool done_ = false;
  char indent_char_ = ' ';
  bool indent_char_set_ = false;
};

}  // namespace

LexResult lex(std::string_view text, LexMode mode, SourceInfo* info) {
  return Lexer(text, mode, info).run();
}

bool is_python_keyword(std::string_view word) {
  return kKeywords.count(word) > 0;
}

}  // namespace condlint
