#pragma once

#include <cstdint>
#include <optional>

#include "rns/bigint.hpp"

namespace rns::word {

using DoubleWord = unsigned __int128;

inline Word add_mod(Word a, Word b, Word m) {
  const Word s = a + b;
  // Overflow of the 64-bit sum or s >= m both mean one subtraction.
  return (s < a || s >= m) ? s - m : s;
}

inline Word sub_mod(Word a, Word b, Word m) { return a >= b ? a - b : a + (m - b); }

inline Word mul_mod(Word a, Word b, Word m) {
  return static_cast<Word>(static_cast<DoubleWord>(a) * b % m);
}

inline Word gcd(Word a, Word b) {
  while (b != 0) {
    const Word t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Inverse of a modulo m, or nullopt when gcd(a, m) != 1. Requires m >= 2.
inline std::optional<Word> inverse_mod(Word a, Word m) {
  // Extended Euclid on signed 128-bit values so intermediates never overflow.
  __int128 old_r = static_cast<__int128>(a % m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    const __int128 next_r = old_r - q * r;
    old_r = r;
    r = next_r;
    const __int128 next_s = old_s - q * s;
    old_s = s;
    s = next_s;
  }
  if (old_r != 1) return std::nullopt;
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<Word>(inv);
}

}  // namespace rns::word
