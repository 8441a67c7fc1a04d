#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace selectlab {

enum class ErrorCode {
  InvalidArgument,
  CapExceeded,
  TopologyTooLarge,
  NotOpen,
  EmptyMove,
  UnsoundHint,
  IllegalMove,
  BudgetExceeded,
  AxiomsFail,
  InputNotWinning,
  ImageNotMove,
  NotFilterBase,
  NotUniformlyWinning,
  NotIdealBase,
  WitnessMissing,
  ChoiceSpaceTooLarge,
  CarrierTooLarge,
  NoNeighborhood,
  NoCovers,
  NotClosedPoints,
  InvalidCount,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every library failure is an Error carrying a code; `detail` holds the
/// offending round, horizon or member index when the code names one (else -1).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, int detail = -1)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  int detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  int detail_;
};

}  // namespace selectlab
