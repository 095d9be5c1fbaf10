#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bandgap {

enum class ErrorKind {
  InvalidCrystal,
  NegativeWavenumber,
  ResonancePole,
  InvalidInterval,
  TooFewSamples,
  NonMonotonicAbscissa,
  ZeroSeparation,
  EdgeResonance,
  InvalidEmitter,
  InsufficientCoverage,
  NoCrossover,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bandgap
