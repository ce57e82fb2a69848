#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rns/bigint.hpp"
#include "rns/moduli.hpp"
#include "rns/word.hpp"

namespace rns {

/// Random pairwise-coprime set with 2 <= R moduli drawn from [2, max_modulus]
/// and capacity at most `max_capacity`. Deterministic for a given engine state.
template <typename Engine>
ModulusSet random_modulus_set(Engine& rng, std::uint64_t max_capacity, Word max_modulus = 64) {
  std::uniform_int_distribution<Word> pick(2, max_modulus);
  for (;;) {
    std::vector<Word> moduli;
    std::uint64_t product = 1;
    for (int attempt = 0; attempt < 64; ++attempt) {
      const Word m = pick(rng);
      if (product > max_capacity / m) continue;
      bool coprime = true;
      for (Word other : moduli) coprime = coprime && word::gcd(m, other) == 1;
      if (!coprime) continue;
      moduli.push_back(m);
      product *= m;
    }
    if (moduli.size() >= 2) return ModulusSet::validate(moduli);
  }
}

/// The `count` largest primes below `limit`, in decreasing order.
inline ModulusSet primes_below(Word limit, std::size_t count) {
  auto is_prime = [](Word n) {
    if (n < 2) return false;
    // Deterministic Miller-Rabin for 64-bit inputs.
    for (Word p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
      if (n % p == 0) return n == p;
    Word d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
      d >>= 1;
      ++s;
    }
    auto pow_mod = [n](Word b, Word e) {
      Word r = 1;
      for (b %= n; e != 0; e >>= 1, b = word::mul_mod(b, b, n))
        if (e & 1) r = word::mul_mod(r, b, n);
      return r;
    };
    for (Word a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
      Word x = pow_mod(a, d);
      if (x == 1 || x == n - 1) continue;
      bool composite = true;
      for (int i = 1; i < s && composite; ++i) {
        x = word::mul_mod(x, x, n);
        composite = x != n - 1;
      }
      if (composite) return false;
    }
    return true;
  };
  std::vector<Word> primes;
  for (Word n = limit - 1; primes.size() < count && n >= 2; --n)
    if (is_prime(n)) primes.push_back(n);
  return ModulusSet::validate(primes);
}

/// Uniform integer in [0, bound).
template <typename Engine>
BigInt random_below(Engine& rng, const BigInt& bound) {
  const std::size_t bits = msb(bound) + 1;
  for (;;) {
    BigInt value = 0;
    for (std::size_t have = 0; have < bits; have += 64) {
      value <<= 64;
      value += static_cast<Word>(rng());
    }
    value >>= (((bits + 63) / 64) * 64 - bits);
    if (value < bound) return value;
  }
}

}  // namespace rns
