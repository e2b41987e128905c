#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sierpinski/errors.hpp"

namespace sierpinski {

/// Dense index of a word: base-ℓ value, most significant digit first.
using Code = std::uint64_t;

/// Largest base whose digits have a one-character spelling (0-9, a-z).
inline constexpr int kMaxBase = 36;

inline char digit_char(int d) {
  return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + (d - 10));
}

inline int char_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
  return -1;
}

/// base^exp, throwing SizeCapExceeded instead of wrapping around.
inline Code checked_pow(int base, int exp) {
  Code result = 1;
  for (int i = 0; i < exp; ++i) {
    if (result > std::numeric_limits<Code>::max() / static_cast<Code>(base)) {
      throw SizeCapExceeded("base^" + std::to_string(exp) + " does not fit in 64 bits");
    }
    result *= static_cast<Code>(base);
  }
  return result;
}

/// A word u = <u_0 u_1 ... u_{m-1}> over the alphabet {0, ..., ℓ-1}.
///
/// Words of equal length compare lexicographically, which coincides with the
/// numeric order of their codes. All tie-breaking in the library is
/// "smallest word first" and relies on this.
class VertexWord {
 public:
  VertexWord() = default;
  explicit VertexWord(std::vector<std::uint8_t> digits) : digits_(std::move(digits)) {}
  VertexWord(std::initializer_list<int> digits) {
    digits_.reserve(digits.size());
    for (int d : digits) digits_.push_back(static_cast<std::uint8_t>(d));
  }

  /// Parses a digit string such as "013". Digits must be < base.
  static VertexWord parse(std::string_view text, int base) {
    if (text.empty()) throw InvalidInput("empty vertex word");
    std::vector<std::uint8_t> digits;
    digits.reserve(text.size());
    for (char c : text) {
      const int d = char_digit(c);
      if (d < 0 || d >= base) {
        throw InvalidInput("digit '" + std::string(1, c) + "' out of range for base " +
                           std::to_string(base) + " in word '" + std::string(text) + "'");
      }
      digits.push_back(static_cast<std::uint8_t>(d));
    }
    return VertexWord(std::move(digits));
  }

  static VertexWord constant(int digit, int length) {
    return VertexWord(std::vector<std::uint8_t>(static_cast<std::size_t>(length),
                                                static_cast<std::uint8_t>(digit)));
  }

  static VertexWord decode(Code code, int length, int base) {
    std::vector<std::uint8_t> digits(static_cast<std::size_t>(length));
    for (int i = length - 1; i >= 0; --i) {
      digits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(code % static_cast<Code>(base));
      code /= static_cast<Code>(base);
    }
    return VertexWord(std::move(digits));
  }

  [[nodiscard]] Code encode(int base) const {
    Code code = 0;
    for (auto d : digits_) code = code * static_cast<Code>(base) + d;
    return code;
  }

  [[nodiscard]] std::size_t size() const { return digits_.size(); }
  [[nodiscard]] bool empty() const { return digits_.empty(); }
  [[nodiscard]] int operator[](std::size_t i) const { return digits_[i]; }
  [[nodiscard]] std::span<const std::uint8_t> digits() const { return digits_; }

  [[nodiscard]] VertexWord prefix(std::size_t length) const {
    return VertexWord(std::vector<std::uint8_t>(digits_.begin(),
                                                digits_.begin() + static_cast<std::ptrdiff_t>(length)));
  }

  [[nodiscard]] VertexWord suffix_from(std::size_t start) const {
    return VertexWord(std::vector<std::uint8_t>(digits_.begin() + static_cast<std::ptrdiff_t>(start),
                                                digits_.end()));
  }

  [[nodiscard]] VertexWord appended(int digit) const {
    auto digits = digits_;
    digits.push_back(static_cast<std::uint8_t>(digit));
    return VertexWord(std::move(digits));
  }

  [[nodiscard]] VertexWord concat(const VertexWord& tail) const {
    auto digits = digits_;
    digits.insert(digits.end(), tail.digits_.begin(), tail.digits_.end());
    return VertexWord(std::move(digits));
  }

  /// True for the extreme vertices <ii...i>.
  [[nodiscard]] bool is_constant() const {
    for (auto d : digits_) {
      if (d != digits_.front()) return false;
    }
    return true;
  }

  [[nodiscard]] std::string str() const {
    std::string s;
    s.reserve(digits_.size());
    for (auto d : digits_) s.push_back(digit_char(d));
    return s;
  }

  auto operator<=>(const VertexWord&) const = default;
  bool operator==(const VertexWord&) const = default;

 private:
  std::vector<std::uint8_t> digits_;
};

/// Digit at position `pos` (0 = most significant) of a length-`length` code.
inline int code_digit(Code code, int pos, int length, Code base) {
  for (int i = length - 1; i > pos; --i) code /= base;
  return static_cast<int>(code % base);
}

}  // namespace sierpinski
