#pragma once

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "rns/rns.hpp"
#include "selftest.hpp"

namespace rns::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kComputation = 2, kSelftestFailed = 3 };

namespace detail {

struct ModuliFlags {
  std::string moduli;
  std::string min_capacity;

  void attach(CLI::App& app) {
    auto* m = app.add_option("--moduli", moduli, "comma-separated pairwise-coprime moduli");
    auto* c = app.add_option("--min-capacity", min_capacity,
                             "pick the smallest primes whose product reaches N");
    m->excludes(c);
  }

  bool given() const { return !moduli.empty() || !min_capacity.empty(); }

  ModulusSet resolve() const {
    if (!moduli.empty()) return parse_moduli(moduli);
    if (!min_capacity.empty()) return select_primes(parse_decimal(min_capacity));
    throw CLI::RequiredError("--moduli or --min-capacity");
  }
};

inline std::string join(std::span<const Word> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

inline std::vector<Word> parse_word_list(const std::string& text) {
  std::vector<Word> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const BigInt v = parse_decimal(item);
    if (v > std::numeric_limits<Word>::max()) throw Error(ErrorKind::ParseError, "value exceeds 64 bits");
    out.push_back(static_cast<Word>(v));
  }
  return out;
}

inline nlohmann::json record(const RnsInt& a) {
  return {{"moduli", std::vector<Word>(a.moduli().moduli().begin(), a.moduli().moduli().end())},
          {"residues", std::vector<Word>(a.residues().begin(), a.residues().end())}};
}

inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Reduced P/Q of numerator / 2^scale_bits.
inline std::string dyadic(const FractionalReadout& f) {
  if (f.numerator == 0) return "0/1";
  BigInt p = f.numerator;
  unsigned bits = f.scale_bits;
  while (bits > 0 && !bit_test(p, 0)) {
    p >>= 1;
    --bits;
  }
  return p.str() + "/" + (BigInt(1) << bits).str();
}

inline std::string float_line(const FractionalReadout& f) {
  return "value≈" + format_double(f.approx_value) + " frac=" + dyadic(f) +
         " bits=" + std::to_string(f.guaranteed_bits);
}

inline nlohmann::json float_record(const FractionalReadout& f) {
  return {{"approx_value", f.approx_value},
          {"fraction", dyadic(f)},
          {"guaranteed_bits", f.guaranteed_bits}};
}

inline std::pair<BigInt, std::uint64_t> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw CLI::ValidationError("--range", "expected t0:len");
  const BigInt len = parse_decimal(std::string_view(text).substr(colon + 1));
  if (len > std::numeric_limits<std::uint64_t>::max())
    throw CLI::ValidationError("--range", "length exceeds 64 bits");
  return {parse_decimal(std::string_view(text).substr(0, colon)), static_cast<std::uint64_t>(len)};
}

inline ExportFormat parse_format(const std::string& name) {
  return name == "ascii" ? ExportFormat::Ascii : ExportFormat::Csv;
}

}  // namespace detail

/// Runs one CLI invocation. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Residue number system arithmetic and pulse-train readout simulator", "rnsq"};
  app.require_subcommand(1);
  app.fallthrough();

  bool json = false;
  app.add_flag("--json", json, "emit one JSON record per result instead of text");

  // encode
  auto* encode_cmd = app.add_subcommand("encode", "residues of an integer");
  detail::ModuliFlags encode_moduli;
  encode_moduli.attach(*encode_cmd);
  std::string encode_value;
  encode_cmd->add_option("value", encode_value, "non-negative decimal integer")->required();

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate + - * ( ) expression in residue form");
  detail::ModuliFlags eval_moduli;
  eval_moduli.attach(*eval_cmd);
  std::string expression;
  bool eval_reconstruct = false, eval_float = false;
  unsigned eval_bits = 53;
  eval_cmd->add_option("expression", expression)->required();
  eval_cmd->add_flag("--reconstruct", eval_reconstruct, "also print the integer value");
  eval_cmd->add_flag("--float", eval_float, "also print the fractional readout");
  eval_cmd->add_option("--bits", eval_bits, "fractional readout precision")->check(CLI::PositiveNumber);

  // reconstruct
  auto* rec_cmd = app.add_subcommand("reconstruct", "integer (or float readout) from residues");
  detail::ModuliFlags rec_moduli;
  rec_moduli.attach(*rec_cmd);
  std::string rec_residues, rec_record;
  bool rec_float = false;
  unsigned rec_bits = 53;
  auto* residues_opt = rec_cmd->add_option("--residues", rec_residues, "comma-separated residues");
  auto* record_opt =
      rec_cmd->add_option("--record", rec_record, R"(JSON {"moduli":[...],"residues":[...]})");
  residues_opt->excludes(record_opt);
  rec_cmd->add_flag("--float", rec_float);
  rec_cmd->add_option("--bits", rec_bits)->check(CLI::PositiveNumber);

  // signal
  auto* sig_cmd = app.add_subcommand("signal", "superposed pulse train for a value");
  detail::ModuliFlags sig_moduli;
  sig_moduli.attach(*sig_cmd);
  std::string sig_value, sig_range, sig_format = "csv";
  double sigma = 0.0;
  std::uint64_t seed = 0;
  sig_cmd->add_option("value", sig_value, "encoded integer u")->required();
  sig_cmd->add_option("--range", sig_range, "t0:len (default one full period from 0)");
  sig_cmd->add_option("--sigma", sigma, "Gaussian height noise")->check(CLI::NonNegativeNumber);
  sig_cmd->add_option("--seed", seed);
  sig_cmd->add_option("--format", sig_format)->check(CLI::IsMember({"csv", "ascii"}));

  // decode
  auto* dec_cmd = app.add_subcommand("decode", "recover the value from a CSV window");
  detail::ModuliFlags dec_moduli;
  dec_moduli.attach(*dec_cmd);
  std::string dec_input = "-", dec_t0, dec_method = "matched";
  dec_cmd->add_option("input", dec_input, "CSV file, '-' for stdin");
  dec_cmd->add_option("--t0", dec_t0, "absolute time of the first row");
  dec_cmd->add_option("--method", dec_method)->check(CLI::IsMember({"matched", "peak"}));

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "residue vs big-integer product timing");
  detail::ModuliFlags bench_moduli;
  bench_moduli.attach(*bench_cmd);
  std::size_t bench_count = 100;
  unsigned bench_bits = 256;
  std::uint64_t bench_seed = 1;
  bench_cmd->add_option("--count", bench_count)->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
  bench_cmd->add_option("--bits", bench_bits)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench_seed);

  auto* self_cmd = app.add_subcommand("selftest", "run the embedded consistency checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (encode_cmd->parsed()) {
      const ModulusSet ms = encode_moduli.resolve();
      const RnsInt a = encode(parse_decimal(encode_value), ms);
      if (json)
        out << detail::record(a).dump() << '\n';
      else
        out << "moduli=" << detail::join(ms.moduli()) << " residues=" << detail::join(a.residues())
            << '\n';
      return kOk;
    }

    if (eval_cmd->parsed()) {
      const ModulusSet ms = eval_moduli.resolve();
      const RnsInt a = evaluate(expression, ms);
      std::optional<FractionalReadout> readout;
      if (eval_float) readout = reconstruct_float(a, eval_bits);
      if (json) {
        auto rec = detail::record(a);
        rec["is_zero"] = is_zero(a);
        if (eval_reconstruct) rec["value"] = reconstruct(a).str();
        if (readout) rec["float"] = detail::float_record(*readout);
        out << rec.dump() << '\n';
      } else {
        out << "residues=" << detail::join(a.residues()) << '\n';
        out << "is_zero=" << (is_zero(a) ? "true" : "false") << '\n';
        if (eval_reconstruct) out << "value=" << reconstruct(a) << '\n';
        if (readout) out << detail::float_line(*readout) << '\n';
      }
      return kOk;
    }

    if (rec_cmd->parsed()) {
      std::optional<RnsInt> a;
      if (!rec_record.empty()) {
        const auto j = nlohmann::json::parse(rec_record);
        a.emplace(ModulusSet::validate(j.at("moduli").get<std::vector<Word>>()),
                  j.at("residues").get<std::vector<Word>>());
      } else if (!rec_residues.empty()) {
        a.emplace(rec_moduli.resolve(), detail::parse_word_list(rec_residues));
      } else {
        err << "error: reconstruct needs --residues or --record\n";
        return kUsage;
      }
      if (rec_float) {
        const auto f = reconstruct_float(*a, rec_bits);
        out << (json ? detail::float_record(f).dump() : detail::float_line(f)) << '\n';
      } else if (json) {
        out << nlohmann::json{{"value", reconstruct(*a).str()}}.dump() << '\n';
      } else {
        out << reconstruct(*a) << '\n';
      }
      return kOk;
    }

    if (sig_cmd->parsed()) {
      const ModulusSet ms = sig_moduli.resolve();
      TimeRange range;
      if (sig_range.empty()) {
        if (ms.capacity() > std::numeric_limits<std::uint64_t>::max())
          throw Error(ErrorKind::OutOfRange, "period too long to render; pass --range");
        range = {0, static_cast<std::uint64_t>(ms.capacity())};
      } else {
        auto [t0, len] = detail::parse_range(sig_range);
        range = {t0, len};
      }
      const PulseSignal s = superpose(encode(parse_decimal(sig_value), ms), range);
      const ExportFormat format = detail::parse_format(sig_format);
      if (sigma > 0.0 || sig_cmd->count("--seed") > 0)
        render(out, add_noise(s, sigma, seed), format);
      else
        render(out, s, format);
      return kOk;
    }

    if (dec_cmd->parsed()) {
      const ModulusSet ms = dec_moduli.resolve();
      NoisyWindow w;
      if (dec_input == "-") {
        w = read_csv(std::cin);
      } else {
        std::ifstream file(dec_input);
        if (!file) {
          err << "error: cannot open " << dec_input << '\n';
          return kUsage;
        }
        w = read_csv(file);
      }
      if (!dec_t0.empty()) w.range.begin = parse_decimal(dec_t0);
      DecodeResult result = [&] {
        if (dec_method == "peak") {
          std::vector<Pulse> pulses;
          for (std::uint64_t k = 0; k < w.samples.size(); ++k) {
            const double h = w.samples[k];
            if (h != std::floor(h) || h < 0 || h > static_cast<double>(ms.size()))
              throw Error(ErrorKind::OutOfRange, "peak decoding needs integer heights in [0, R]", k);
            if (h > 0) pulses.push_back({k, static_cast<std::uint32_t>(h)});
          }
          return peak_decode(PulseSignal(w.range, ms.size(), std::move(pulses)), ms);
        }
        return decode_window(w, ms);
      }();
      if (json) {
        auto rec = detail::record(result.residues);
        rec["value"] = result.value.str();
        rec["margins"] = result.channel_margins;
        rec["ambiguous"] = result.ambiguous;
        rec["method"] = to_string(result.method);
        out << rec.dump() << '\n';
      } else {
        out << "value=" << result.value << '\n';
        out << "residues=" << detail::join(result.residues.residues()) << '\n';
        out << "margins=";
        for (std::size_t j = 0; j < result.channel_margins.size(); ++j) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.6f", result.channel_margins[j]);
          out << (j ? "," : "") << buf;
        }
        out << '\n';
        out << "ambiguous=" << (result.ambiguous ? "true" : "false") << '\n';
        out << "method=" << to_string(result.method) << '\n';
      }
      return kOk;
    }

    if (bench_cmd->parsed()) {
      const ModulusSet ms = bench_moduli.given() ? bench_moduli.resolve()
                                                 : select_primes(BigInt(1) << bench_bits);
      std::mt19937_64 rng(bench_seed);
      std::vector<BigInt> operands(bench_count);
      for (auto& x : operands) x = random_below(rng, BigInt(1) << bench_bits);

      using Clock = std::chrono::steady_clock;
      std::vector<RnsInt> encoded;
      encoded.reserve(bench_count);
      for (const auto& x : operands) encoded.push_back(encode(x, ms));
      const auto rns_start = Clock::now();
      RnsInt product = encoded.front();
      for (std::size_t i = 1; i < encoded.size(); ++i) product = mul(product, encoded[i]);
      const auto rns_end = Clock::now();
      const BigInt rns_value = reconstruct(product);
      const auto reconstruct_end = Clock::now();

      const mpz_class modulus(ms.capacity().str());
      std::vector<mpz_class> gmp_operands;
      for (const auto& x : operands) gmp_operands.emplace_back(x.str());
      const auto gmp_start = Clock::now();
      mpz_class gmp_value = gmp_operands.front();
      for (std::size_t i = 1; i < gmp_operands.size(); ++i) {
        gmp_value *= gmp_operands[i];
        gmp_value %= modulus;
      }
      const auto gmp_end = Clock::now();

      const bool agree = mpz_class(rns_value.str()) == gmp_value;
      auto us = [](auto d) { return std::chrono::duration<double, std::micro>(d).count(); };
      if (json) {
        out << nlohmann::json{{"count", bench_count},
                              {"bits", bench_bits},
                              {"moduli", ms.size()},
                              {"capacity_bits", msb(ms.capacity()) + 1},
                              {"rns_mul_us", us(rns_end - rns_start)},
                              {"reconstruct_us", us(reconstruct_end - rns_end)},
                              {"oracle_us", us(gmp_end - gmp_start)},
                              {"agree", agree}}
                   .dump()
            << '\n';
      } else {
        char row[256];
        std::snprintf(row, sizeof row, "%8zu %6u %7zu %9zu %12.1f %14.1f %10.1f %s\n",
                      bench_count, bench_bits, ms.size(),
                      static_cast<std::size_t>(msb(ms.capacity()) + 1), us(rns_end - rns_start),
                      us(reconstruct_end - rns_end), us(gmp_end - gmp_start),
                      agree ? "yes" : "NO");
        out << "   count   bits  moduli  cap_bits   rns_mul_us reconstruct_us  oracle_us agree\n"
            << row;
      }
      return agree ? kOk : kComputation;
    }

    if (self_cmd->parsed()) {
      return run_selftest(out) ? kOk : kSelftestFailed;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::ParseError ? kUsage : kComputation;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: bad record: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace rns::cli
