// SPDX-License-Identifier: Apache-2.0
#include "dais/error.hpp"

namespace dais {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::InvalidNoise: return "InvalidNoise";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::DelayOutOfRange: return "DelayOutOfRange";
    case ErrorCode::ZeroSignal: return "ZeroSignal";
    case ErrorCode::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::SolverDegenerate: return "SolverDegenerate";
    case ErrorCode::SingularNuisanceBlock: return "SingularNuisanceBlock";
    case ErrorCode::SingularLocalizationFim: return "SingularLocalizationFim";
    case ErrorCode::SingularMcrbFim: return "SingularMcrbFim";
    case ErrorCode::NoThresholdInBracket: return "NoThresholdInBracket";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateGeometry:
    case ErrorCode::SolverDegenerate:
    case ErrorCode::SingularNuisanceBlock:
    case ErrorCode::SingularLocalizationFim:
    case ErrorCode::SingularMcrbFim:
    case ErrorCode::NoThresholdInBracket:
      return true;
    default:
      return false;
  }
}

}  // namespace dais
