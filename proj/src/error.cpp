#include "selectlab/error.hpp"

namespace selectlab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::TopologyTooLarge: return "TopologyTooLarge";
    case ErrorCode::NotOpen: return "NotOpen";
    case ErrorCode::EmptyMove: return "EmptyMove";
    case ErrorCode::UnsoundHint: return "UnsoundHint";
    case ErrorCode::IllegalMove: return "IllegalMove";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::AxiomsFail: return "AxiomsFail";
    case ErrorCode::InputNotWinning: return "InputNotWinning";
    case ErrorCode::ImageNotMove: return "ImageNotMove";
    case ErrorCode::NotFilterBase: return "NotFilterBase";
    case ErrorCode::NotUniformlyWinning: return "NotUniformlyWinning";
    case ErrorCode::NotIdealBase: return "NotIdealBase";
    case ErrorCode::WitnessMissing: return "WitnessMissing";
    case ErrorCode::ChoiceSpaceTooLarge: return "ChoiceSpaceTooLarge";
    case ErrorCode::CarrierTooLarge: return "CarrierTooLarge";
    case ErrorCode::NoNeighborhood: return "NoNeighborhood";
    case ErrorCode::NoCovers: return "NoCovers";
    case ErrorCode::NotClosedPoints: return "NotClosedPoints";
    case ErrorCode::InvalidCount: return "InvalidCount";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace selectlab
