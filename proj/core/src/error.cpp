#include "pfe/error.hpp"

namespace pfe {

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::NonResidue: return "NonResidue";
    case Errc::EvenPrimeUnsupported: return "EvenPrimeUnsupported";
    case Errc::ZeroSeries: return "ZeroSeries";
    case Errc::AmbiguousPrecision: return "AmbiguousPrecision";
    case Errc::UnsupportedElement: return "UnsupportedElement";
    case Errc::PoleHit: return "PoleHit";
    case Errc::RootMismatch: return "RootMismatch";
    case Errc::GZeroAtOrigin: return "GZeroAtOrigin";
    case Errc::InsufficientJet: return "InsufficientJet";
    case Errc::BoundViolation: return "BoundViolation";
    case Errc::Inconsistent: return "Inconsistent";
    case Errc::FreeParameter: return "FreeParameter";
    case Errc::SpanZero: return "SpanZero";
    case Errc::NotASolution: return "NotASolution";
    case Errc::AllZero: return "AllZero";
    case Errc::ZeroInput: return "ZeroInput";
    case Errc::JetMismatch: return "JetMismatch";
    case Errc::ParseError: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace pfe
