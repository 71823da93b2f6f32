#include "autgroup/word_syntax.hpp"

#include <algorithm>
#include <cctype>

#include "autgroup/errors.hpp"

namespace autgroup {

namespace {

std::string normalize(std::string_view text) {
  static constexpr std::string_view kSuperInverse = "\xE2\x81\xBB\xC2\xB9";  // ⁻¹
  static constexpr std::string_view kMiddleDot = "\xC2\xB7";
  std::string result;
  for (std::size_t i = 0; i < text.size();) {
    if (text.substr(i, kSuperInverse.size()) == kSuperInverse) {
      result += "^-1";
      i += kSuperInverse.size();
    } else if (text.substr(i, kMiddleDot.size()) == kMiddleDot) {
      result += ' ';
      i += kMiddleDot.size();
    } else {
      result += text[i++];
    }
  }
  return result;
}

class Parser {
 public:
  Parser(std::string text, const WordSyntax& syntax) : text_(std::move(text)), syntax_(syntax) {}

  std::vector<std::uint32_t> parse() {
    auto word = sequence();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return word;
  }

 private:
  static bool separator(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '.' || c == ',' || c == '`';
  }

  void skip() {
    while (pos_ < text_.size() && separator(text_[pos_])) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("word syntax at offset " + std::to_string(pos_) + ": " + what);
  }

  std::vector<std::uint32_t> sequence() {
    std::vector<std::uint32_t> word;
    for (;;) {
      skip();
      if (pos_ == text_.size() || text_[pos_] == ')') return word;
      auto item = atom();
      item = power(std::move(item));
      word.insert(word.end(), item.begin(), item.end());
    }
  }

  std::vector<std::uint32_t> atom() {
    if (text_[pos_] == '(') {
      ++pos_;
      auto inner = sequence();
      if (pos_ == text_.size() || text_[pos_] != ')') fail("missing ')'");
      ++pos_;
      return inner;
    }
    std::size_t best_len = 0;
    std::uint32_t best = 0;
    for (const auto& [name, letter] : syntax_.names) {
      if (name.size() > best_len && text_.compare(pos_, name.size(), name) == 0) {
        best_len = name.size();
        best = letter;
      }
    }
    if (best_len == 0) {
      std::size_t end = pos_ + 1;
      while (end < text_.size() && !separator(text_[end]) && text_[end] != '(' &&
             text_[end] != ')' && text_[end] != '^')
        ++end;
      throw UnknownLetter(text_.substr(pos_, end - pos_));
    }
    pos_ += best_len;
    return {best};
  }

  std::vector<std::uint32_t> power(std::vector<std::uint32_t> base) {
    if (pos_ == text_.size() || text_[pos_] != '^') return base;
    ++pos_;
    bool negative = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    if (pos_ == text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected exponent");
    }
    std::size_t exponent = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      exponent = exponent * 10 + static_cast<std::size_t>(text_[pos_++] - '0');
      if (exponent > (std::size_t{1} << 26)) fail("exponent too large");
    }
    if (negative) {
      if (!syntax_.inverse) fail("inverses are not available");
      std::reverse(base.begin(), base.end());
      for (auto& letter : base) letter = syntax_.inverse(letter);
    }
    std::vector<std::uint32_t> result;
    result.reserve(base.size() * exponent);
    for (std::size_t i = 0; i < exponent; ++i) result.insert(result.end(), base.begin(), base.end());
    return result;
  }

  std::string text_;
  const WordSyntax& syntax_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint32_t> parse_word(std::string_view text, const WordSyntax& syntax) {
  return Parser(normalize(text), syntax).parse();
}

}  // namespace autgroup
