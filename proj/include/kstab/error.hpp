#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kstab {

enum class ErrorKind {
  InconsistentSamples,
  DegreeOverflow,
  DegreeMismatch,
  MissingEntry,
  MissingInput,
  DimensionMismatch,
  TriangulationFailure,
  FunctionOutOfRange,
  NotSemiample,
  DivisionByZero,
  NefCertificateUnavailable,
  NoThresholdBelowCap,
  LeadingTermNonzero,
  Inconclusive,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind);

/// Every recoverable failure in the library carries one of the kinds above so
/// that callers (and the CLI) can map it to a structured report.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kstab
