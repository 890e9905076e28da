#pragma once

#include <stdexcept>
#include <string>

namespace incgeo {

// Failure classes surfaced by the geometric kernel and the drivers built on
// top of it. Kept as one exception type with a code so call sites can match
// on the condition without a taxonomy of catch blocks.
enum class Errc {
  InvalidDirection,
  UnsupportedOperandPair,
  DegenerateScale,
  OriginNotInterior,
  DegenerateBody,
  DimensionUnsupported,
  ArityMismatch,
  DomainViolation,
  AffineMapHasNoCanonicalForm,
  InvalidParams,
  NoWitnessPoint,
  CapDegenerate,
  WitnessSearchFailed,
  MeasuredComparisonFailed,
  NoViolationExists,
  SymmetryRequired,
  LpFailure,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidDirection: return "InvalidDirection";
    case Errc::UnsupportedOperandPair: return "UnsupportedOperandPair";
    case Errc::DegenerateScale: return "DegenerateScale";
    case Errc::OriginNotInterior: return "OriginNotInterior";
    case Errc::DegenerateBody: return "DegenerateBody";
    case Errc::DimensionUnsupported: return "DimensionUnsupported";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::AffineMapHasNoCanonicalForm: return "AffineMapHasNoCanonicalForm";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::NoWitnessPoint: return "NoWitnessPoint";
    case Errc::CapDegenerate: return "CapDegenerate";
    case Errc::WitnessSearchFailed: return "WitnessSearchFailed";
    case Errc::MeasuredComparisonFailed: return "MeasuredComparisonFailed";
    case Errc::NoViolationExists: return "NoViolationExists";
    case Errc::SymmetryRequired: return "SymmetryRequired";
    case Errc::LpFailure: return "LpFailure";
  }
  return "Unknown";
}

class GeomError : public std::runtime_error {
 public:
  GeomError(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw GeomError(code, what);
}

// Global tolerances. eps_geo guards geometric predicates (irredundancy,
// interiority, LP feasibility slack); eps_cmp is the looser tolerance used
// when comparing measured functionals in the identification suites.
constexpr double eps_geo = 1e-9;
constexpr double eps_cmp = 1e-7;

}  // namespace incgeo
