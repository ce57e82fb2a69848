#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "rns/rns.hpp"

namespace rns::cli {

namespace detail {

struct Check {
  std::string name;
  std::function<std::string()> run;  // empty string on success, else the failure detail
};

inline std::string check_figure_one() {
  const auto ms = ModulusSet::validate({3, 4, 7});
  const auto s = superpose(encode(42, ms), {0, 84});
  std::map<std::uint32_t, int> histogram;
  for (const Pulse& p : s.pulses()) ++histogram[p.height];
  if (histogram != std::map<std::uint32_t, int>{{1, 36}, {2, 11}, {3, 1}})
    return "height histogram differs from {3:1, 2:11, 1:36}";
  if (s.height_at(42) != 3) return "height at t=42 is not 3";
  return {};
}

inline std::string check_pairwise_periods() {
  const auto ms = ModulusSet::validate({3, 4, 7});
  const auto classes = coincidence_classes(encode(42, ms), {0, 84}, 2);
  std::vector<std::uint64_t> periods;
  for (const auto& c : classes) {
    std::uint64_t g = 0;
    for (std::size_t i = 0; i < c.offsets.size(); ++i) {
      const std::uint64_t next = i + 1 < c.offsets.size() ? c.offsets[i + 1] : c.offsets[0] + 84;
      g = std::gcd(g, next - c.offsets[i]);
    }
    periods.push_back(g);
  }
  if (periods != std::vector<std::uint64_t>{12, 21, 28}) return "height-2 periods are not 12, 21, 28";
  return {};
}

inline std::string check_symmetry() {
  std::mt19937_64 rng(2024);
  for (int instance = 0; instance < 50; ++instance) {
    const auto ms = random_modulus_set(rng, 10000);
    const auto period = static_cast<std::uint64_t>(ms.capacity());
    const auto u = std::uniform_int_distribution<std::uint64_t>(0, period - 1)(rng);
    const auto h = superpose(encode(u, ms), {0, period}).dense();
    for (std::uint64_t t = 0; t < period; ++t)
      if (h[(2 * u + period - t) % period] != h[t])
        return "asymmetric about u=" + std::to_string(u) + " for moduli " +
               std::to_string(ms[0]) + ",...";
  }
  return {};
}

inline std::string check_decoders() {
  const auto ms = ModulusSet::validate({3, 4, 7});
  const auto tmpl = superpose(encode(0, ms), {0, 84});
  for (std::uint64_t u = 0; u < 84; ++u) {
    const auto s = superpose(encode(u, ms), {0, 84});
    if (peak_decode(s, ms).value != u) return "peak_decode failed at u=" + std::to_string(u);
    const auto w = add_noise(s, 0.0, 0);
    const auto d = decode_window(w, ms);
    if (d.ambiguous || d.value != u) return "decode_window failed at u=" + std::to_string(u);
    const auto x = cross_correlate_shift(w, tmpl);
    if (x.best_shifts != std::vector<std::uint64_t>{u})
      return "cross_correlate_shift failed at u=" + std::to_string(u);
  }
  return {};
}

inline std::string check_round_trip() {
  for (const auto& moduli : std::vector<std::vector<Word>>{{3, 4, 7}, {5, 7, 9, 11}, {2, 3, 5, 7, 11}}) {
    const auto ms = ModulusSet::validate(moduli);
    const auto period = static_cast<std::uint64_t>(ms.capacity());
    for (std::uint64_t u = 0; u < period; ++u)
      if (reconstruct(encode(u, ms)) != u) return "round trip failed at u=" + std::to_string(u);
  }
  return {};
}

inline std::string check_fraction() {
  const auto ms = ModulusSet::validate({3, 4, 7});
  const auto f = reconstruct_float(encode(42, ms), 20);
  if (f.numerator != (BigInt(1) << (f.scale_bits - 1))) return "fraction for u=42 is not 1/2";
  return {};
}

}  // namespace detail

/// Prints one PASS/FAIL line per check; stops at the first failure.
inline bool run_selftest(std::ostream& out) {
  const std::vector<detail::Check> checks = {
      {"figure1-histogram", detail::check_figure_one},
      {"figure1-pairwise-periods", detail::check_pairwise_periods},
      {"symmetry-50-random", detail::check_symmetry},
      {"decoders-exhaustive-3-4-7", detail::check_decoders},
      {"round-trip-exhaustive", detail::check_round_trip},
      {"fraction-one-half", detail::check_fraction},
  };
  for (const auto& check : checks) {
    std::string failure;
    try {
      failure = check.run();
    } catch (const std::exception& e) {
      failure = e.what();
    }
    if (!failure.empty()) {
      out << "FAIL " << check.name << ": " << failure << '\n';
      return false;
    }
    out << "PASS " << check.name << '\n';
  }
  return true;
}

}  // namespace rns::cli
