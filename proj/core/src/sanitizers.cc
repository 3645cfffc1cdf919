#include "assistkit/sanitizers.h"

namespace assistkit {

namespace {

bool IsQuote(char c) { return kEscapableQuotes.find(c) != std::string_view::npos; }
bool IsEscapable(char c) { return c == '\\' || IsQuote(c); }

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

template <typename Emit>
void ScanString(std::string_view input, Emit&& emit) {
  std::size_t i = 0;
  const std::size_t n = input.size();
  while (i < n) {
    char c = input[i];
    if (c == '\\') {
      // Look ahead one character: an existing escape pair is kept verbatim.
      if (i + 1 < n && IsEscapable(input[i + 1])) {
        emit(c, i);
        emit(input[i + 1], i + 1);
        i += 2;
        continue;
      }
      emit('\\', i);
      emit('\\', i);
      ++i;
      continue;
    }
    if (IsQuote(c)) emit('\\', i);
    emit(c, i);
    ++i;
  }
}

}  // namespace

std::string SanitizeString(std::string_view input) {
  std::string out;
  out.reserve(2 * input.size());  // worst case: every character escaped
  ScanString(input, [&out](char c, std::size_t) { out += c; });
  return out;
}

std::string SanitizeStringTraced(std::string_view input, std::vector<std::size_t>& origins) {
  std::string out;
  origins.clear();
  ScanString(input, [&](char c, std::size_t from) {
    out += c;
    origins.push_back(from);
  });
  return out;
}

bool IsNumeral(std::string_view s) {
  std::size_t i = 0;
  const std::size_t n = s.size();
  while (i < n && IsSpace(s[i])) ++i;
  if (i < n && s[i] == '-') ++i;
  std::size_t digits = i;
  while (i < n && IsDigit(s[i])) ++i;
  if (i == digits) return false;
  if (i < n && s[i] == '.') {
    ++i;
    std::size_t frac = i;
    while (i < n && IsDigit(s[i])) ++i;
    if (i == frac) return false;
  }
  while (i < n && IsSpace(s[i])) ++i;
  return i == n;
}

std::string SanitizeNumeric(std::string_view input) {
  return IsNumeral(input) ? std::string(input) : std::string("null");
}

}  // namespace assistkit
