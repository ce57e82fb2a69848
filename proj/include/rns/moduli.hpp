#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rns/bigint.hpp"
#include "rns/error.hpp"
#include "rns/word.hpp"

namespace rns {

/// An ordered, non-empty list of pairwise-coprime word-size moduli.
///
/// Immutable after construction and cheap to copy (shared state). Position j
/// of every residue vector and every mixed-radix digit refers to moduli()[j].
/// The tables needed by reconstruction are built once, at construction, so
/// concurrent readers never race on them.
class ModulusSet {
 public:
  /// Validates `moduli` and builds the set. Throws Error with kind Empty,
  /// TooSmall (index in first()) or NotCoprime (index pair in first()/second()).
  static ModulusSet validate(std::span<const Word> moduli) {
    if (moduli.empty()) throw Error(ErrorKind::Empty, "modulus list is empty");
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      if (moduli[i] < 2)
        throw Error(ErrorKind::TooSmall,
                    "modulus " + std::to_string(moduli[i]) + " at position " + std::to_string(i) +
                        " is below 2",
                    i);
    }
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      for (std::size_t j = i + 1; j < moduli.size(); ++j) {
        if (word::gcd(moduli[i], moduli[j]) != 1)
          throw Error(ErrorKind::NotCoprime,
                      "moduli " + std::to_string(moduli[i]) + " and " + std::to_string(moduli[j]) +
                          " (positions " + std::to_string(i) + ", " + std::to_string(j) +
                          ") share a factor",
                      i, j);
      }
    }
    return ModulusSet(std::make_shared<const Data>(moduli));
  }

  static ModulusSet validate(std::initializer_list<Word> moduli) {
    return validate(std::span<const Word>(moduli.begin(), moduli.size()));
  }

  std::span<const Word> moduli() const noexcept { return data_->moduli; }
  std::size_t size() const noexcept { return data_->moduli.size(); }
  Word operator[](std::size_t j) const { return data_->moduli[j]; }
  Word max_modulus() const noexcept { return data_->max_modulus; }

  /// Dynamic range M, the product of all moduli.
  const BigInt& capacity() const noexcept { return data_->capacity; }

  /// m_i^{-1} mod m_j, defined for i < j.
  Word garner_inverse(std::size_t i, std::size_t j) const {
    return data_->garner_inverse[i * size() + j];
  }

  /// c_j = (M / m_j)^{-1} mod m_j.
  Word crt_coefficient(std::size_t j) const { return data_->crt_coefficient[j]; }

  friend bool operator==(const ModulusSet& a, const ModulusSet& b) {
    return a.data_ == b.data_ || a.data_->moduli == b.data_->moduli;
  }

 private:
  struct Data {
    explicit Data(std::span<const Word> ms) : moduli(ms.begin(), ms.end()) {
      const std::size_t r = moduli.size();
      capacity = 1;
      max_modulus = 0;
      for (Word m : moduli) {
        capacity *= m;
        max_modulus = std::max(max_modulus, m);
      }
      garner_inverse.assign(r * r, 0);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j)
          garner_inverse[i * r + j] = *word::inverse_mod(moduli[i], moduli[j]);
      crt_coefficient.resize(r);
      for (std::size_t j = 0; j < r; ++j) {
        Word cofactor = 1 % moduli[j];
        for (std::size_t i = 0; i < r; ++i)
          if (i != j) cofactor = word::mul_mod(cofactor, moduli[i] % moduli[j], moduli[j]);
        crt_coefficient[j] = *word::inverse_mod(cofactor, moduli[j]);
      }
    }

    std::vector<Word> moduli;
    BigInt capacity;
    Word max_modulus;
    std::vector<Word> garner_inverse;  // row-major R x R, upper triangle used
    std::vector<Word> crt_coefficient;
  };

  explicit ModulusSet(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

/// Product of all moduli. Same value as ModulusSet::capacity(), recomputed.
inline BigInt capacity(const ModulusSet& ms) {
  BigInt product = 1;
  for (Word m : ms.moduli()) product *= m;
  return product;
}

/// Smallest prefix of 2, 3, 5, 7, ... whose product reaches `min_capacity`.
inline ModulusSet select_primes(const BigInt& min_capacity) {
  if (min_capacity < 2)
    throw Error(ErrorKind::TooSmall, "minimum capacity must be at least 2");
  std::vector<Word> primes;
  BigInt product = 1;
  for (Word candidate = 2; product < min_capacity; ++candidate) {
    bool is_prime = true;
    for (Word p : primes) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        is_prime = false;
        break;
      }
    }
    if (!is_prime) continue;
    primes.push_back(candidate);
    product *= candidate;
  }
  return ModulusSet::validate(primes);
}

/// Parses "3,4,7" into a validated set. Throws ParseError on malformed text.
inline ModulusSet parse_moduli(std::string_view text) {
  std::vector<Word> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    const BigInt value = parse_decimal(text.substr(start, end - start));
    if (value > std::numeric_limits<Word>::max())
      throw Error(ErrorKind::ParseError, "modulus exceeds 64 bits", start);
    values.push_back(static_cast<Word>(value));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return ModulusSet::validate(values);
}

}  // namespace rns
