#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rns/bigint.hpp"
#include "rns/error.hpp"
#include "rns/moduli.hpp"
#include "rns/word.hpp"

namespace rns {

/// A residue vector (u_1 mod m_1, ..., u_R mod m_R) over a fixed ModulusSet.
///
/// Represents exactly one integer in [0, M). Arithmetic is carry-free and
/// wraps modulo M; each channel is computed independently of the others.
class RnsInt {
 public:
  /// Builds from explicit residues. Throws BadResidue (channel in first())
  /// if a residue is not below its modulus, or if the lengths differ.
  RnsInt(ModulusSet ms, std::vector<Word> residues)
      : moduli_(std::move(ms)), residues_(std::move(residues)) {
    if (residues_.size() != moduli_.size())
      throw Error(ErrorKind::BadResidue,
                  "expected " + std::to_string(moduli_.size()) + " residues, got " +
                      std::to_string(residues_.size()));
    for (std::size_t j = 0; j < residues_.size(); ++j) {
      if (residues_[j] >= moduli_[j])
        throw Error(ErrorKind::BadResidue,
                    "residue " + std::to_string(residues_[j]) + " not below modulus " +
                        std::to_string(moduli_[j]),
                    j);
    }
  }

  const ModulusSet& moduli() const noexcept { return moduli_; }
  std::span<const Word> residues() const noexcept { return residues_; }
  Word operator[](std::size_t j) const { return residues_[j]; }
  std::size_t size() const noexcept { return residues_.size(); }

 private:
  struct Unchecked {};
  RnsInt(Unchecked, ModulusSet ms, std::vector<Word> residues)
      : moduli_(std::move(ms)), residues_(std::move(residues)) {}

  template <typename Op>
  friend RnsInt channelwise(const RnsInt& a, const RnsInt& b, Op op);
  friend RnsInt encode(const BigInt& n, const ModulusSet& ms);

  ModulusSet moduli_;
  std::vector<Word> residues_;
};

inline void require_same_moduli(const ModulusSet& a, const ModulusSet& b) {
  if (!(a == b)) throw Error(ErrorKind::ModulusMismatch, "operands use different modulus sets");
}

/// residues[j] = n mod m_j. Since every m_j divides M this equals (n mod M) mod m_j.
inline RnsInt encode(const BigInt& n, const ModulusSet& ms) {
  std::vector<Word> residues(ms.size());
  for (std::size_t j = 0; j < ms.size(); ++j) residues[j] = mod_word(n, ms[j]);
  return RnsInt(RnsInt::Unchecked{}, ms, std::move(residues));
}

template <typename Op>
RnsInt channelwise(const RnsInt& a, const RnsInt& b, Op op) {
  require_same_moduli(a.moduli(), b.moduli());
  std::vector<Word> out(a.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = op(a[j], b[j], a.moduli()[j]);
  return RnsInt(RnsInt::Unchecked{}, a.moduli(), std::move(out));
}

inline RnsInt add(const RnsInt& a, const RnsInt& b) { return channelwise(a, b, word::add_mod); }

/// Wrapping difference; the result is the non-negative representative mod M.
inline RnsInt sub(const RnsInt& a, const RnsInt& b) { return channelwise(a, b, word::sub_mod); }

inline RnsInt mul(const RnsInt& a, const RnsInt& b) { return channelwise(a, b, word::mul_mod); }

/// True iff the represented integer is 0 (mod M).
inline bool is_zero(const RnsInt& a) {
  for (Word r : a.residues())
    if (r != 0) return false;
  return true;
}

/// Componentwise equality; throws ModulusMismatch across different sets.
inline bool equals(const RnsInt& a, const RnsInt& b) {
  require_same_moduli(a.moduli(), b.moduli());
  return std::equal(a.residues().begin(), a.residues().end(), b.residues().begin());
}

inline RnsInt operator+(const RnsInt& a, const RnsInt& b) { return add(a, b); }
inline RnsInt operator-(const RnsInt& a, const RnsInt& b) { return sub(a, b); }
inline RnsInt operator*(const RnsInt& a, const RnsInt& b) { return mul(a, b); }
inline bool operator==(const RnsInt& a, const RnsInt& b) { return equals(a, b); }

}  // namespace rns
