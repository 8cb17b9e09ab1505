// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dais {

enum class ErrorCode {
  // input validation
  InvalidInterval,
  InvalidNoise,
  InvalidConfig,
  DelayOutOfRange,
  ZeroSignal,
  // numerical degeneracy
  DegenerateGeometry,
  SolverDegenerate,
  SingularNuisanceBlock,
  SingularLocalizationFim,
  SingularMcrbFim,
  NoThresholdInBracket,
};

std::string_view to_string(ErrorCode code);

/// True for codes that signal a numerically degenerate problem rather than bad input.
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  bool numerical() const noexcept { return is_numerical(code_); }

 private:
  ErrorCode code_;
};

}  // namespace dais
