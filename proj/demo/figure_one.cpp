// Prints the superposed pulse train for u = 42 over moduli (3, 4, 7), one
// row per time step, then decodes it back from the strongest pulse.
#include <iostream>

#include "rns/rns.hpp"

int main() {
  const auto ms = rns::ModulusSet::validate({3, 4, 7});
  const auto u = rns::encode(42, ms);
  const auto signal = rns::superpose(u, {0, 84});

  rns::render(std::cout, signal, rns::ExportFormat::Ascii);
  std::cout << "peak at t = " << rns::peak_decode(signal, ms).value << '\n';
}
