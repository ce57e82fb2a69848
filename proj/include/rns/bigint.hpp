#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "rns/error.hpp"

namespace rns {

using BigInt = boost::multiprecision::cpp_int;
using Word = std::uint64_t;

// Parses a non-empty string of decimal digits. No sign, no whitespace.
inline BigInt parse_decimal(std::string_view text) {
  if (text.empty()) throw Error(ErrorKind::ParseError, "empty integer literal");
  BigInt value = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '9')
      throw Error(ErrorKind::ParseError, "invalid digit in '" + std::string(text) + "'", i);
    value *= 10;
    value += static_cast<unsigned>(c - '0');
  }
  return value;
}

inline std::string to_decimal(const BigInt& value) { return value.str(); }

// Remainder of a non-negative big integer by a word-size modulus.
inline Word mod_word(const BigInt& value, Word m) {
  return static_cast<Word>(value % m);
}

}  // namespace rns
