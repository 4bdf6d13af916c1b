#include "core/fingerprint.hpp"

#include "core/lexer.hpp"

namespace condlint {
namespace {

// Index of the closer matching an opener at i, or npos when it is not closed
// within [i..last].
std::size_t matching_close(const std::vector<Token>& toks, std::size_t i,
                           std::size_t last) {
  int depth = 0;
  for (std::size_t k = i; k <= last; ++k) {
    const Token& t = toks[k];
    if (t.kind != TokenKind::Op) continue;
    if (t.text == "(" || t.text == "[" || t.text == "{") {
      ++depth;
    } else if (t.text == ")" || t.text == "]" || t.text == "}") {
      if (--depth == 0) return k;
    }
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace

Fingerprint fingerprint_tokens(const std::vector<Token>& tokens,
                               std::size_t first, std::size_t last) {
  if (first > last || last >= tokens.size()) return {};

  while (last - first >= 1 && tokens[first].is_op("(") &&
         matching_close(tokens, first, last) == last) {
    ++first;
    --last;
    if (first > last) return {};
  }

  std::string out;
  int level = 0;
  bool line_open = false;
  for (std::size_t i = first; i <= last; ++i) {
    const Token& t = tokens[i];
    switch (t.kind) {
      case TokenKind::Newline:
        out.push_back('\n');
        line_open = false;
        continue;
      case TokenKind::Indent:
        ++level;
        continue;
      case TokenKind::Dedent:
        if (level > 0) --level;
        continue;
      case TokenKind::End:
        continue;
      default:
        break;
    }
    if (!line_open) {
      if (!out.empty()) out.append(static_cast<std::size_t>(level) * 2, ' ');
      line_open = true;
    } else {
      out.push_back(' ');
    }
    out.append(t.text);
  }
  return Fingerprint{std::move(out)};
}

Fingerprint fingerprint_text(std::string_view text) {
  LexResult lexed = lex(text, LexMode::Structured);
  if (!lexed.ok()) lexed = lex(text, LexMode::Raw);
  const auto& toks = lexed.tokens;
  std::size_t first = 0;
  std::size_t last = toks.size();  // one past; adjust below
  while (first < toks.size() && toks[first].structural()) ++first;
  while (last > first && toks[last - 1].structural()) --last;
  if (last == first) return {};
  return fingerprint_tokens(toks, first, last - 1);
}

}  // namespace condlint
