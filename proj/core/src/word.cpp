#include "fractree/word.hpp"

#include <algorithm>

#include "fractree/error.hpp"

namespace fractree {

namespace {

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
  return -1;
}

char digit_char(Symbol s) {
  return s < 10 ? static_cast<char>('0' + s) : static_cast<char>('a' + (s - 10));
}

}  // namespace

Word parse_word(std::string_view text, std::uint32_t alphabet_size) {
  if (alphabet_size > kMaxTextAlphabet) {
    raise(Errc::InvalidFormat,
          "textual words support alphabets of size at most 36, got " +
              std::to_string(alphabet_size));
  }
  Word word;
  word.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const int value = digit_value(text[i]);
    if (value < 0) {
      raise(Errc::InvalidFormat, "character '" + std::string(1, text[i]) +
                                     "' at position " + std::to_string(i) +
                                     " is not a symbol digit");
    }
    if (static_cast<std::uint32_t>(value) >= alphabet_size) {
      raise(Errc::SymbolOutOfRange,
            "symbol " + std::to_string(value) + " at position " +
                std::to_string(i) + " exceeds alphabet size " +
                std::to_string(alphabet_size));
    }
    word.push_back(static_cast<Symbol>(value));
  }
  return word;
}

std::string format_word(const Word& word) {
  std::string text;
  text.reserve(word.size());
  for (const Symbol s : word) {
    if (s >= kMaxTextAlphabet) {
      raise(Errc::InvalidFormat,
            "symbol " + std::to_string(s) + " has no digit representation");
    }
    text.push_back(digit_char(s));
  }
  return text;
}

bool is_prefix_of(const Word& prefix, const Word& word) {
  return prefix.size() <= word.size() &&
         std::equal(prefix.begin(), prefix.end(), word.begin());
}

std::size_t common_prefix_length(const Word& a, const Word& b) {
  const std::size_t limit = std::min(a.size(), b.size());
  std::size_t j = 0;
  while (j < limit && a[j] == b[j]) ++j;
  return j;
}

bool length_lex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace fractree
