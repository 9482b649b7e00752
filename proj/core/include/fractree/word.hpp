#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fractree {

// Strings over a finite alphabet are stored as arrays of small integer
// symbols. Textual I/O maps symbol i to the digit '0'..'9','a'..'z',
// which covers alphabets of size up to 36.
using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

inline constexpr std::uint32_t kMaxTextAlphabet = 36;

// Parses a digit string into a word, checking every symbol against
// alphabet_size. Throws SymbolOutOfRange / InvalidFormat.
Word parse_word(std::string_view text, std::uint32_t alphabet_size);

// Inverse of parse_word. Requires every symbol < kMaxTextAlphabet.
std::string format_word(const Word& word);

// True iff `prefix` is an initial segment of `word` (improper allowed).
bool is_prefix_of(const Word& prefix, const Word& word);

std::size_t common_prefix_length(const Word& a, const Word& b);

// Length-lexicographic order: shorter first, ties broken lexicographically.
bool length_lex_less(const Word& a, const Word& b);

}  // namespace fractree
