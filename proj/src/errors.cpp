#include "bandgap/errors.hpp"

namespace bandgap {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidCrystal: return "InvalidCrystal";
    case ErrorKind::NegativeWavenumber: return "NegativeWavenumber";
    case ErrorKind::ResonancePole: return "ResonancePole";
    case ErrorKind::InvalidInterval: return "InvalidInterval";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::NonMonotonicAbscissa: return "NonMonotonicAbscissa";
    case ErrorKind::ZeroSeparation: return "ZeroSeparation";
    case ErrorKind::EdgeResonance: return "EdgeResonance";
    case ErrorKind::InvalidEmitter: return "InvalidEmitter";
    case ErrorKind::InsufficientCoverage: return "InsufficientCoverage";
    case ErrorKind::NoCrossover: return "NoCrossover";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Error";
}

}  // namespace bandgap
