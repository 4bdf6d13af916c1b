#pragma once

#include <string_view>

#include "core/span.hpp"

namespace condlint {

enum class TokenKind {
  Name,
  Keyword,
  Number,
  String,
  Op,
  Newline,  // end of a logical line
  Indent,
  Dedent,
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string_view text;
  int line = 0;
  int col = 0;
  int end_line = 0;
  int end_col = 0;

  bool is(TokenKind k) const { return kind == k; }
  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_kw(std::string_view t) const { return kind == TokenKind::Keyword && text == t; }
  bool is_op(std::string_view t) const { return kind == TokenKind::Op && text == t; }
  bool structural() const {
    return kind == TokenKind::Newline || kind == TokenKind::Indent ||
           kind == TokenKind::Dedent || kind == TokenKind::End;
  }

  Span span() const { return Span{line, col, end_line, end_col}; }
};

}  // namespace condlint
