#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wallach {

// Every failure the library reports carries one of these codes. The CLI maps
// them onto exit statuses, so keep the grouping in exit_code() current.
enum class Errc {
  ZeroPolynomial,
  EndpointRoot,
  NotIsolating,
  BothConstant,
  DivisionByZero,
  MixedRadicand,
  ParseError,
  BadLine,
  BadParams,
  BadParam,
  BoundaryInput,
  BoundaryTriple,
  OutOfRange,
  InvalidArgument,
  IndistinguishableAtTolerance,
  SegmentInconclusive,
  CertificationFailure,
  DegenerateSystem,
  NonPositiveMetric,
  NonPositiveStart,
  StepTooLarge,
  BadBounds,
  SmallL,
  InvariantViolation,
};

constexpr std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::EndpointRoot: return "EndpointRoot";
    case Errc::NotIsolating: return "NotIsolating";
    case Errc::BothConstant: return "BothConstant";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::MixedRadicand: return "MixedRadicand";
    case Errc::ParseError: return "ParseError";
    case Errc::BadLine: return "BadLine";
    case Errc::BadParams: return "BadParams";
    case Errc::BadParam: return "BadParam";
    case Errc::BoundaryInput: return "BoundaryInput";
    case Errc::BoundaryTriple: return "BoundaryTriple";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::IndistinguishableAtTolerance: return "IndistinguishableAtTolerance";
    case Errc::SegmentInconclusive: return "SegmentInconclusive";
    case Errc::CertificationFailure: return "CertificationFailure";
    case Errc::DegenerateSystem: return "DegenerateSystem";
    case Errc::NonPositiveMetric: return "NonPositiveMetric";
    case Errc::NonPositiveStart: return "NonPositiveStart";
    case Errc::StepTooLarge: return "StepTooLarge";
    case Errc::BadBounds: return "BadBounds";
    case Errc::SmallL: return "SmallL";
    case Errc::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace wallach
