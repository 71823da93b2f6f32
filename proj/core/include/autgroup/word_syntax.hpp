#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace autgroup {

/// Names accepted for the letters of a word, plus formal inversion.
struct WordSyntax {
  std::vector<std::pair<std::string, std::uint32_t>> names;
  std::function<std::uint32_t(std::uint32_t)> inverse;
};

/// Parses words such as "a b c", "abab", "(ab)^16", "b a b a^-1" or
/// "(b a b A)^8". Letters are matched greedily by longest name; whitespace,
/// '.', ',' , '`' and U+00B7 separate tokens and "⁻¹" is read as "^-1".
/// Throws UnknownLetter or ParseError.
std::vector<std::uint32_t> parse_word(std::string_view text, const WordSyntax& syntax);

}  // namespace autgroup
