#include "core/source.hpp"

namespace condlint {
namespace {

// Validates UTF-8 and reports the byte offset of the first bad sequence.
bool utf8_valid(std::string_view s, std::size_t& bad_at) {
  std::size_t i = 0;
  const auto n = s.size();
  while (i < n) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    std::size_t need;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0 && c >= 0xC2) {
      need = 1;
    } else if ((c & 0xF0) == 0xE0) {
      need = 2;
    } else if ((c & 0xF8) == 0xF0 && c <= 0xF4) {
      need = 3;
    } else {
      bad_at = i;
      return false;
    }
    for (std::size_t k = 1; k <= need; ++k) {
      if (i + k >= n || (static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) {
        bad_at = i;
        return false;
      }
    }
    i += need + 1;
  }
  return true;
}

}  // namespace

std::size_t SourceInfo::offset_of(int line, int col) const {
  const auto li = static_cast<std::size_t>(line - 1);
  if (li >= line_offsets.size()) return text.size();
  return line_offsets[li] + static_cast<std::size_t>(col - 1);
}

std::string_view SourceInfo::line_text(int line) const {
  const auto li = static_cast<std::size_t>(line - 1);
  if (li >= line_offsets.size()) return {};
  const std::size_t begin = line_offsets[li];
  std::size_t end = li + 1 < line_offsets.size() ? line_offsets[li + 1] : text.size();
  if (end > begin && text[end - 1] == '\n') --end;
  return std::string_view(text).substr(begin, end - begin);
}

std::string SourceInfo::slice(const Span& span) const {
  if (!span.valid()) return {};
  const std::size_t begin = offset_of(span.line_start, span.col_start);
  std::size_t end = offset_of(span.line_end, span.col_end) + 1;
  if (begin >= text.size()) return {};
  if (end > text.size()) end = text.size();
  if (end <= begin) return {};
  return text.substr(begin, end - begin);
}

std::shared_ptr<SourceInfo> make_source(std::string_view bytes, std::string path) {
  auto src = std::make_shared<SourceInfo>();
  src->path = std::move(path);

  std::size_t bad_at = 0;
  if (!utf8_valid(bytes, bad_at)) {
    src->decode_ok = false;
    src->decode_error =
        "invalid UTF-8 at byte offset " + std::to_string(bad_at);
    bytes = bytes.substr(0, bad_at);
  }

  src->text.reserve(bytes.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    const char c = bytes[i];
    if (c == '\r') {
      src->text.push_back('\n');
      if (i + 1 < bytes.size() && bytes[i + 1] == '\n') ++i;
    } else {
      src->text.push_back(c);
    }
  }

  src->line_offsets.push_back(0);
  for (std::size_t i = 0; i < src->text.size(); ++i) {
    if (src->text[i] == '\n' && i + 1 < src->text.size()) {
      src->line_offsets.push_back(i + 1);
    }
  }
  // A trailing newline still belongs to the last indexed line; an empty file
  // keeps its single empty line so spans never go out of range.
  src->logical_start.assign(src->line_offsets.size(), 0);
  return src;
}

}  // namespace condlint
