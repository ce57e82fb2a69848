// Recovers a 500-bit product from a short noisy window of its pulse train,
// without ever observing the (astronomically distant) strongest pulse.
#include <iostream>
#include <random>

#include "rns/rns.hpp"

int main() {
  const auto ms = rns::primes_below(1440, 50);
  std::mt19937_64 rng(7);
  const auto a = rns::encode(rns::random_below(rng, ms.capacity()), ms);
  const auto b = rns::encode(rns::random_below(rng, ms.capacity()), ms);
  const auto product = a * b;

  // 16 samples per residue class of the largest modulus.
  const std::uint64_t len = 16 * ms.max_modulus();
  const auto noisy = rns::add_noise(rns::superpose(product, {0, len}), 0.3, 11);
  const auto decoded = rns::decode_window(noisy, ms);

  std::cout << "capacity bits: " << msb(ms.capacity()) + 1 << '\n'
            << "window length: " << len << '\n'
            << "decoded == product: " << (decoded.value == rns::reconstruct(product) ? "yes" : "no")
            << '\n'
            << "ambiguous: " << (decoded.ambiguous ? "yes" : "no") << '\n';
}
