#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rns {

enum class ErrorKind {
  Empty,
  TooSmall,
  NotCoprime,
  ModulusMismatch,
  BadResidue,
  PrecisionUnattainable,
  OutOfRange,
  NotFullPeriod,
  NoUniquePeak,
  WindowTooShort,
  ParseError,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Empty: return "Empty";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::ModulusMismatch: return "ModulusMismatch";
    case ErrorKind::BadResidue: return "BadResidue";
    case ErrorKind::PrecisionUnattainable: return "PrecisionUnattainable";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NotFullPeriod: return "NotFullPeriod";
    case ErrorKind::NoUniquePeak: return "NoUniquePeak";
    case ErrorKind::WindowTooShort: return "WindowTooShort";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

// All library failures are reported as rns::Error. `first`/`second` carry
// positional detail where it exists: the offending index pair for
// NotCoprime, the channel for BadResidue, the byte offset for ParseError.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::size_t first = 0, std::size_t second = 0)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind), first_(first), second_(second) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

 private:
  ErrorKind kind_;
  std::size_t first_;
  std::size_t second_;
};

}  // namespace rns
