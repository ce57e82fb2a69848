#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iterator>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rns/bigint.hpp"
#include "rns/error.hpp"
#include "rns/moduli.hpp"
#include "rns/rns_int.hpp"

namespace rns {

/// Half-open interval [begin, begin + length) on the integer time axis.
struct TimeRange {
  BigInt begin = 0;
  std::uint64_t length = 0;

  BigInt end() const { return begin + length; }
};

struct Pulse {
  std::uint64_t offset;  // relative to the signal's range begin
  std::uint32_t height;

  friend bool operator==(const Pulse&, const Pulse&) = default;
};

/// Noiseless superposed readout: sparse pulses over a time range.
///
/// Pulses are sorted by offset, unique, inside the range, with heights in
/// [1, channel_count].
class PulseSignal {
 public:
  PulseSignal(TimeRange range, std::size_t channel_count, std::vector<Pulse> pulses)
      : range_(std::move(range)), channels_(channel_count), pulses_(std::move(pulses)) {
    for (std::size_t i = 0; i < pulses_.size(); ++i) {
      const Pulse& p = pulses_[i];
      if (p.offset >= range_.length)
        throw Error(ErrorKind::OutOfRange, "pulse outside signal range", i);
      if (p.height < 1 || p.height > channels_)
        throw Error(ErrorKind::OutOfRange, "pulse height outside [1, R]", i);
      if (i > 0 && pulses_[i - 1].offset >= p.offset)
        throw Error(ErrorKind::OutOfRange, "pulses not strictly increasing", i);
    }
  }

  const TimeRange& range() const noexcept { return range_; }
  std::size_t channel_count() const noexcept { return channels_; }
  const std::vector<Pulse>& pulses() const noexcept { return pulses_; }

  std::uint32_t height_at(std::uint64_t offset) const {
    auto it = std::lower_bound(pulses_.begin(), pulses_.end(), offset,
                               [](const Pulse& p, std::uint64_t o) { return p.offset < o; });
    return (it != pulses_.end() && it->offset == offset) ? it->height : 0;
  }

  /// One height per integer time in the range, zeros included.
  std::vector<std::uint32_t> dense() const {
    std::vector<std::uint32_t> out(range_.length, 0);
    for (const Pulse& p : pulses_) out[p.offset] = p.height;
    return out;
  }

  /// Sum of all pulse heights.
  std::uint64_t mass() const {
    std::uint64_t total = 0;
    for (const Pulse& p : pulses_) total += p.height;
    return total;
  }

 private:
  TimeRange range_;
  std::size_t channels_;
  std::vector<Pulse> pulses_;
};

/// Dense real-valued window, one sample per integer time in the range.
struct NoisyWindow {
  TimeRange range;
  std::vector<double> samples;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
};

/// First offset t - begin >= 0 with t congruent to r mod m.
inline std::uint64_t first_phase_offset(const BigInt& begin, Word m, Word r) {
  const Word phase = mod_word(begin, m);
  return r >= phase ? r - phase : r + (m - phase);
}

/// Offsets of the unit pulses t = r (mod m) inside `range`.
inline void require_nonnegative(const TimeRange& range) {
  if (range.begin < 0) throw Error(ErrorKind::OutOfRange, "time axis starts at 0");
}

inline std::vector<std::uint64_t> channel_train(Word m, Word r, const TimeRange& range) {
  require_nonnegative(range);
  if (m < 2) throw Error(ErrorKind::TooSmall, "modulus below 2");
  if (r >= m)
    throw Error(ErrorKind::BadResidue,
                "residue " + std::to_string(r) + " not below modulus " + std::to_string(m));
  std::vector<std::uint64_t> offsets;
  for (std::uint64_t t = first_phase_offset(range.begin, m, r); t < range.length; t += m) {
    offsets.push_back(t);
    if (t > std::numeric_limits<std::uint64_t>::max() - m) break;
  }
  return offsets;
}

/// height(t) = number of channels j with t = u_j (mod m_j), for t in `range`.
inline PulseSignal superpose(const RnsInt& a, const TimeRange& range) {
  require_nonnegative(range);
  const ModulusSet& ms = a.moduli();
  std::uint64_t expected = 0;
  for (Word m : ms.moduli()) expected += range.length / m + 1;

  std::vector<Pulse> pulses;
  pulses.reserve(std::min<std::uint64_t>(expected, range.length));
  if (range.length <= 4 * expected) {
    std::vector<std::uint32_t> counts(range.length, 0);
    for (std::size_t j = 0; j < ms.size(); ++j)
      for (std::uint64_t t = first_phase_offset(range.begin, ms[j], a[j]); t < range.length;
           t += ms[j])
        ++counts[t];
    for (std::uint64_t t = 0; t < range.length; ++t)
      if (counts[t] != 0) pulses.push_back({t, counts[t]});
  } else {
    std::vector<std::uint64_t> all;
    all.reserve(expected);
    for (std::size_t j = 0; j < ms.size(); ++j) {
      auto train = channel_train(ms[j], a[j], range);
      all.insert(all.end(), train.begin(), train.end());
    }
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < all.size();) {
      std::size_t k = i;
      while (k < all.size() && all[k] == all[i]) ++k;
      pulses.push_back({all[i], static_cast<std::uint32_t>(k - i)});
      i = k;
    }
  }
  return PulseSignal({range.begin, range.length}, ms.size(), std::move(pulses));
}

/// Restriction of `s` to [t0, t0 + len). Throws OutOfRange unless contained in s.range().
inline PulseSignal window(const PulseSignal& s, const BigInt& t0, std::uint64_t len) {
  const BigInt end = t0 + len;
  if (t0 < s.range().begin || end > s.range().end())
    throw Error(ErrorKind::OutOfRange, "window [" + t0.str() + ", " + end.str() +
                                           ") not inside [" + s.range().begin.str() + ", " +
                                           s.range().end().str() + ")");
  const auto shift = static_cast<std::uint64_t>(t0 - s.range().begin);
  std::vector<Pulse> pulses;
  for (const Pulse& p : s.pulses())
    if (p.offset >= shift && p.offset - shift < len) pulses.push_back({p.offset - shift, p.height});
  return PulseSignal({t0, len}, s.channel_count(), std::move(pulses));
}

/// Standard normal draws for one seed, identical across platforms.
///
/// Box-Muller over mt19937_64 with an explicit 53-bit uniform mapping; the
/// k-th draw depends only on (seed, k).
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1], u2 in [0, 1).
    const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Dense samples h(t) + sigma * z_t with z_t i.i.d. standard normal from `seed`.
inline NoisyWindow add_noise(const PulseSignal& s, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw Error(ErrorKind::OutOfRange, "noise sigma must be non-negative");
  NoisyWindow w{s.range(), std::vector<double>(s.range().length, 0.0), sigma, seed};
  for (const Pulse& p : s.pulses()) w.samples[p.offset] = p.height;
  if (sigma > 0.0) {
    GaussianStream noise(seed);
    for (double& x : w.samples) x += sigma * noise.next();
  }
  return w;
}

enum class ExportFormat { Csv, Ascii };

namespace detail {

inline std::string format_sample(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string out(buf);
  if (out == "-0.000000") out.erase(0, 1);
  return out;
}

template <typename HeightFn>
void write_rows(std::ostream& out, const TimeRange& range, ExportFormat format, HeightFn&& row) {
  if (format == ExportFormat::Csv) {
    out << "t,height\n";
    BigInt t = range.begin;
    for (std::uint64_t k = 0; k < range.length; ++k, ++t) out << t << ',' << row.csv(k) << '\n';
    return;
  }
  const std::size_t width = range.length == 0 ? 1 : (range.end() - 1).str().size();
  BigInt t = range.begin;
  for (std::uint64_t k = 0; k < range.length; ++k, ++t) {
    const std::string label = t.str();
    out << std::string(width - label.size(), ' ') << label << '|'
        << std::string(row.stars(k), '*') << '\n';
  }
}

}  // namespace detail

/// CSV: "t,height" header then one LF-terminated row per time, zeros included.
/// ASCII: "t|***" with one asterisk per unit of height.
inline void render(std::ostream& out, const PulseSignal& s, ExportFormat format) {
  const auto heights = s.dense();
  struct {
    const std::vector<std::uint32_t>& h;
    std::string csv(std::uint64_t k) const { return std::to_string(h[k]); }
    std::size_t stars(std::uint64_t k) const { return h[k]; }
  } rows{heights};
  detail::write_rows(out, s.range(), format, rows);
}

/// Noisy samples print with six fractional digits, round-half-even.
inline void render(std::ostream& out, const NoisyWindow& w, ExportFormat format) {
  struct {
    const std::vector<double>& x;
    std::string csv(std::uint64_t k) const { return detail::format_sample(x[k]); }
    std::size_t stars(std::uint64_t k) const {
      return static_cast<std::size_t>(std::lround(std::max(x[k], 0.0)));
    }
  } rows{w.samples};
  detail::write_rows(out, w.range, format, rows);
}

template <typename Signal>
std::string render(const Signal& s, ExportFormat format) {
  std::ostringstream out;
  render(out, s, format);
  return out.str();
}

/// Reads the CSV written by render(). Rows must have contiguous times.
inline NoisyWindow read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != "t,height")
    throw Error(ErrorKind::ParseError, "expected header 't,height'", line_no);
  NoisyWindow w;
  BigInt expected_t;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::ParseError, "missing comma", line_no);
    const BigInt t = parse_decimal(std::string_view(line).substr(0, comma));
    if (w.samples.empty()) {
      w.range.begin = t;
    } else if (t != expected_t) {
      throw Error(ErrorKind::ParseError, "non-contiguous time " + t.str(), line_no);
    }
    expected_t = t + 1;
    const std::string value = line.substr(comma + 1);
    std::size_t used = 0;
    double h = 0.0;
    try {
      h = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size())
      throw Error(ErrorKind::ParseError, "bad height '" + value + "'", line_no);
    w.samples.push_back(h);
  }
  w.range.length = w.samples.size();
  return w;
}

}  // namespace rns

namespace rns {

/// Positions where exactly the channels in `channels` coincide.
struct CoincidenceClass {
  std::vector<std::size_t> channels;
  std::vector<std::uint64_t> offsets;
};

/// Groups every pulse of height `height` by the set of channels producing it.
/// Classes are ordered by their channel lists.
inline std::vector<CoincidenceClass> coincidence_classes(const RnsInt& a, const TimeRange& range,
                                                         std::uint32_t height) {
  const PulseSignal s = superpose(a, range);
  const ModulusSet& ms = a.moduli();
  std::vector<CoincidenceClass> classes;
  for (const Pulse& p : s.pulses()) {
    if (p.height != height) continue;
    const BigInt t = range.begin + p.offset;
    std::vector<std::size_t> channels;
    for (std::size_t j = 0; j < ms.size(); ++j)
      if (mod_word(t, ms[j]) == a[j]) channels.push_back(j);
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const CoincidenceClass& c) { return c.channels == channels; });
    if (it == classes.end()) {
      classes.push_back({std::move(channels), {}});
      it = std::prev(classes.end());
    }
    it->offsets.push_back(p.offset);
  }
  std::sort(classes.begin(), classes.end(),
            [](const CoincidenceClass& x, const CoincidenceClass& y) { return x.channels < y.channels; });
  return classes;
}

}  // namespace rns
