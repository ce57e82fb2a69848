#pragma once

#include <bit>
#include <cmath>
#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "rns/bigint.hpp"
#include "rns/error.hpp"
#include "rns/moduli.hpp"
#include "rns/rns_int.hpp"
#include "rns/word.hpp"

namespace rns {

/// Digits d_0..d_{R-1} of u = d_0 + d_1 m_1 + d_2 m_1 m_2 + ..., 0 <= d_k < m_{k+1}.
struct MixedRadixDigits {
  ModulusSet moduli;
  std::vector<Word> digits;
};

/// Garner's mixed-radix conversion. Uses only word-size modular arithmetic
/// and the m_i^{-1} mod m_j table cached on the modulus set.
inline MixedRadixDigits garner(const RnsInt& a) {
  const ModulusSet& ms = a.moduli();
  const std::size_t r = ms.size();
  std::vector<Word> digits(r);
  for (std::size_t k = 0; k < r; ++k) {
    const Word mk = ms[k];
    Word t = a[k];
    for (std::size_t i = 0; i < k; ++i)
      t = word::mul_mod(word::sub_mod(t, digits[i] % mk, mk), ms.garner_inverse(i, k), mk);
    digits[k] = t;
  }
  return {ms, std::move(digits)};
}

/// Horner evaluation of the mixed-radix identity; the only big-integer step.
inline BigInt mixed_radix_to_int(const MixedRadixDigits& d) {
  const std::size_t r = d.digits.size();
  BigInt value = 0;
  for (std::size_t k = r; k-- > 0;) {
    if (k + 1 < r) value *= d.moduli[k];
    value += d.digits[k];
  }
  return value;
}

/// The unique integer in [0, M) with the given residues.
inline BigInt reconstruct(const RnsInt& a) { return mixed_radix_to_int(garner(a)); }

/// Orders by represented integer: mixed-radix digits compared most significant first.
inline std::strong_ordering compare(const RnsInt& a, const RnsInt& b) {
  require_same_moduli(a.moduli(), b.moduli());
  const auto da = garner(a), db = garner(b);
  for (std::size_t k = da.digits.size(); k-- > 0;) {
    if (auto c = da.digits[k] <=> db.digits[k]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

/// Widest fixed-point accumulator reconstruct_float will use.
inline constexpr unsigned kMaxReadoutBits = 4096;

/// u/M as the dyadic fraction numerator / 2^scale_bits, plus a float estimate of u.
///
/// The fraction is within 2^-guaranteed_bits of u/M measured mod 1.
struct FractionalReadout {
  BigInt numerator;
  unsigned scale_bits = 0;
  unsigned guaranteed_bits = 0;
  double fraction = 0.0;
  double approx_value = 0.0;
};

namespace detail {

inline unsigned ceil_log2(std::size_t n) {
  return n <= 1 ? 0u : static_cast<unsigned>(std::bit_width(n - 1));
}

// Accumulates round(x / m * 2^(64 * limbs.size())) into `limbs` (little-endian) mod 2^W.
inline void accumulate_fraction(std::span<Word> limbs, Word x, Word m) {
  const std::size_t n = limbs.size();
  std::vector<Word> quotient(n);
  Word rem = x;
  for (std::size_t i = n; i-- > 0;) {
    const word::DoubleWord num = static_cast<word::DoubleWord>(rem) << 64;
    quotient[i] = static_cast<Word>(num / m);
    rem = static_cast<Word>(num % m);
  }
  // Round half up: rem / m >= 1/2.
  Word carry = (rem >= m - rem) ? 1 : 0;
  for (std::size_t i = 0; i < n; ++i) {
    const word::DoubleWord s = static_cast<word::DoubleWord>(limbs[i]) + quotient[i] + carry;
    limbs[i] = static_cast<Word>(s);
    carry = static_cast<Word>(s >> 64);
  }
}

}  // namespace detail

/// Computes u/M = (sum_j c_j u_j / m_j) mod 1 without reconstructing u.
///
/// Accumulator width W = precision_bits + ceil(log2 R) + 8 guard bits,
/// rounded up to whole 64-bit limbs. Throws PrecisionUnattainable when W
/// would exceed kMaxReadoutBits, OutOfRange when precision_bits < 1.
inline FractionalReadout reconstruct_float(const RnsInt& a, unsigned precision_bits) {
  if (precision_bits < 1) throw Error(ErrorKind::OutOfRange, "precision_bits must be at least 1");
  const ModulusSet& ms = a.moduli();
  const unsigned log_terms = detail::ceil_log2(ms.size());
  const unsigned needed = precision_bits + log_terms + 8;
  if (needed > kMaxReadoutBits)
    throw Error(ErrorKind::PrecisionUnattainable,
                std::to_string(precision_bits) + " bits need a " + std::to_string(needed) +
                    "-bit accumulator; limit is " + std::to_string(kMaxReadoutBits));
  const std::size_t limb_count = (needed + 63) / 64;
  const unsigned width = static_cast<unsigned>(limb_count * 64);

  std::vector<Word> limbs(limb_count, 0);
  for (std::size_t j = 0; j < ms.size(); ++j) {
    const Word x = word::mul_mod(ms.crt_coefficient(j), a[j], ms[j]);
    if (x != 0) detail::accumulate_fraction(limbs, x, ms[j]);
  }

  FractionalReadout out;
  out.scale_bits = width;
  // Each term is off by at most 2^-(W+1), so R terms stay within 2^-(W - ceil(log2 R)).
  out.guaranteed_bits = width - log_terms;
  out.numerator = 0;
  for (std::size_t i = limb_count; i-- > 0;) {
    out.numerator <<= 64;
    out.numerator += limbs[i];
  }
  out.fraction = std::ldexp(static_cast<double>(limbs.back()), -64);
  out.approx_value = out.fraction * ms.capacity().convert_to<double>();
  return out;
}

}  // namespace rns
