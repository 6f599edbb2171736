#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ccq {

enum class ErrorCode {
  InvalidArgument,
  InvalidInterval,
  UnknownCatalogName,
  InvalidParams,
  DomainViolation,
  NonFiniteSample,
  PointOutOfRange,
  OracleNonConvergence,
  ShapeHypothesisUnverified,
  InvalidHolder,
  NoFeasibleP,
  NoApplicableTheorem,
  NonPositiveArgument,
  InvalidOrder,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ccq
