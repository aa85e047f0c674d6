#pragma once

#include <stdexcept>
#include <string>

namespace pfe {

/// Error codes surfaced by the library. The CLI maps these to exit code 1
/// and prints the code name, so the names are part of the tool's interface.
enum class Errc {
  NotPrime,
  NonResidue,
  EvenPrimeUnsupported,
  ZeroSeries,
  AmbiguousPrecision,
  UnsupportedElement,
  PoleHit,
  RootMismatch,
  GZeroAtOrigin,
  InsufficientJet,
  BoundViolation,
  Inconsistent,
  FreeParameter,
  SpanZero,
  NotASolution,
  AllZero,
  ZeroInput,
  JetMismatch,
  ParseError,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }
  const char* code_name() const noexcept { return errc_name(code_); }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace pfe
