#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rns/bigint.hpp"
#include "rns/error.hpp"
#include "rns/moduli.hpp"
#include "rns/reconstruct.hpp"
#include "rns/rns_int.hpp"
#include "rns/signal.hpp"

namespace rns {

/// Default tie tolerance on normalized matched-filter scores.
inline constexpr double kTieTolerance = 1e-9;

enum class DecodeMethod { Peak, MatchedFilter };

inline const char* to_string(DecodeMethod m) {
  return m == DecodeMethod::Peak ? "peak" : "matched_filter";
}

struct DecodeResult {
  BigInt value;
  RnsInt residues;
  std::vector<double> channel_margins;  // best minus second-best score, per modulus
  bool ambiguous = false;
  DecodeMethod method = DecodeMethod::MatchedFilter;
};

/// Reads the unique height-R pulse of a noiseless full-period signal.
///
/// The signal must span exactly one period [t0, t0 + M); the returned value
/// is the peak time mod M. Every channel margin is (peak height) - (second
/// highest height). Throws NotFullPeriod or NoUniquePeak.
inline DecodeResult peak_decode(const PulseSignal& s, const ModulusSet& ms) {
  if (BigInt(s.range().length) != ms.capacity())
    throw Error(ErrorKind::NotFullPeriod,
                "signal spans " + std::to_string(s.range().length) + " units, period is " +
                    ms.capacity().str());
  std::uint32_t best = 0, second = 0;
  std::size_t best_count = 0;
  std::uint64_t best_offset = 0;
  for (const Pulse& p : s.pulses()) {
    if (p.height > best) {
      second = best;
      best = p.height;
      best_count = 1;
      best_offset = p.offset;
    } else if (p.height == best) {
      ++best_count;
    } else {
      second = std::max(second, p.height);
    }
  }
  if (best_count != 1)
    throw Error(ErrorKind::NoUniquePeak,
                std::to_string(best_count) + " positions attain the maximum height");
  const BigInt value = (s.range().begin + best_offset) % ms.capacity();
  return {value, encode(value, ms),
          std::vector<double>(ms.size(), static_cast<double>(best - second)), false,
          DecodeMethod::Peak};
}

/// Per-class sums of window samples for one modulus, in absolute time.
struct ChannelScores {
  std::vector<double> raw;            // sum of samples at t = r (mod m)
  std::vector<std::uint64_t> counts;  // number of window positions in class r

  double normalized(std::size_t r) const { return raw[r] / static_cast<double>(counts[r]); }
};

inline ChannelScores channel_scores(const NoisyWindow& w, Word m) {
  ChannelScores out{std::vector<double>(m, 0.0), std::vector<std::uint64_t>(m, 0)};
  Word r = mod_word(w.range.begin, m);
  for (double x : w.samples) {
    out.raw[r] += x;
    ++out.counts[r];
    if (++r == m) r = 0;
  }
  return out;
}

struct MatchedFilterResult {
  RnsInt residues;
  std::vector<double> margins;
  std::vector<bool> tied;  // best and second-best within tolerance
  bool ambiguous = false;
};

/// Estimates each residue as the class with the highest mean sample.
///
/// Requires window length >= largest modulus so every class is observed;
/// throws WindowTooShort otherwise. Ties within `tolerance` are flagged,
/// never broken silently (the reported residue is then the lowest tied class).
inline MatchedFilterResult matched_filter_residues(const NoisyWindow& w, const ModulusSet& ms,
                                                   double tolerance = kTieTolerance) {
  if (w.samples.size() != w.range.length)
    throw Error(ErrorKind::OutOfRange, "window sample count does not match its range");
  if (w.range.length < ms.max_modulus())
    throw Error(ErrorKind::WindowTooShort,
                "window of " + std::to_string(w.range.length) + " samples is shorter than modulus " +
                    std::to_string(ms.max_modulus()));
  std::vector<Word> residues(ms.size());
  std::vector<double> margins(ms.size());
  std::vector<bool> tied(ms.size(), false);
  bool ambiguous = false;
  for (std::size_t j = 0; j < ms.size(); ++j) {
    const ChannelScores scores = channel_scores(w, ms[j]);
    std::size_t best = 0;
    for (std::size_t r = 1; r < ms[j]; ++r)
      if (scores.normalized(r) > scores.normalized(best)) best = r;
    double runner_up = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < ms[j]; ++r)
      if (r != best) runner_up = std::max(runner_up, scores.normalized(r));
    residues[j] = best;
    margins[j] = scores.normalized(best) - runner_up;
    tied[j] = margins[j] <= tolerance;
    ambiguous = ambiguous || tied[j];
  }
  return {RnsInt(ms, std::move(residues)), std::move(margins), std::move(tied), ambiguous};
}

/// Matched-filter residues followed by Garner reconstruction.
///
/// The window's absolute start time must be known; scoring is done in
/// absolute time so any offset works, including windows that never see the peak.
inline DecodeResult decode_window(const NoisyWindow& w, const ModulusSet& ms,
                                  double tolerance = kTieTolerance) {
  MatchedFilterResult mf = matched_filter_residues(w, ms, tolerance);
  BigInt value = reconstruct(mf.residues);
  return {std::move(value), std::move(mf.residues), std::move(mf.margins), mf.ambiguous,
          DecodeMethod::MatchedFilter};
}

struct ShiftSearch {
  std::vector<std::uint64_t> best_shifts;  // every shift attaining the maximum
  std::vector<double> profile;             // correlation for each shift in [0, period)
};

/// Exhaustive cyclic cross-correlation of a window against the u = 0 pattern.
///
/// profile[s] = sum_k w[k] * template[(t0 + k - s) mod P], P = template length.
/// Theta(P * L); intended as a brute-force oracle for small periods.
inline ShiftSearch cross_correlate_shift(const NoisyWindow& w, const PulseSignal& tmpl,
                                         double tolerance = kTieTolerance) {
  if (tmpl.range().begin != 0)
    throw Error(ErrorKind::OutOfRange, "template must start at t = 0");
  const std::uint64_t period = tmpl.range().length;
  if (period == 0) throw Error(ErrorKind::OutOfRange, "empty template");
  if (w.range.length > period)
    throw Error(ErrorKind::OutOfRange, "window longer than one template period");
  const auto pattern = tmpl.dense();
  const std::uint64_t phase = static_cast<std::uint64_t>(w.range.begin % period);

  ShiftSearch out;
  out.profile.assign(period, 0.0);
  for (std::uint64_t s = 0; s < period; ++s) {
    // Template index of the first sample: (phase - s) mod P.
    std::uint64_t idx = phase >= s ? phase - s : phase + (period - s);
    double acc = 0.0;
    for (double x : w.samples) {
      acc += x * pattern[idx];
      if (++idx == period) idx = 0;
    }
    out.profile[s] = acc;
  }
  const double best = *std::max_element(out.profile.begin(), out.profile.end());
  const double slack = tolerance * std::max(1.0, std::abs(best));
  for (std::uint64_t s = 0; s < period; ++s)
    if (out.profile[s] >= best - slack) out.best_shifts.push_back(s);
  return out;
}

}  // namespace rns
