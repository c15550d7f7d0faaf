#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace smvd {

enum class ErrorCode {
  InvalidInput,
  OpenBoundary,
  SelfIntersecting,
  CoincidentCircles,
  NotPolygonal,
  DegenerateBisector,
  DuplicateSites,
  UnknownSite,
  MetricMismatch,
  QuadraticNoRoot,
  InfeasibleState,
  TopologyError,
  GenerationFailure,
  BOutOfRange,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace smvd
