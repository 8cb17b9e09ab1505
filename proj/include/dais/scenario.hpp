// SPDX-License-Identifier: Apache-2.0
//
// Plain-text scenario files:
//
//   preset = paper-v          # optional, must precede any section
//   [scene]
//   alice = 3, 0
//   bob = 10, 5
//   eve = 10, 5
//   scatterers = 8.87, -6.05; 7.44, 8.53
//   [system]
//   n_antennas = 16
//   snr_db = -20:5:30         # or a comma list
//   noise_std = 1e-6          # optional fixed noise level
//   [spoof]
//   delta_tau_samples = 1     # multiples of Ts
//   delta_theta = pi:0.25     # radians, "pi:" scales by pi
//   [seeds]
//   seeds = 0:19              # inclusive range or comma list
//   [baseline]
//   kind = dais               # none | dais | fpi
//   [output]
//   path = sweep.csv
#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "dais/analysis.hpp"

namespace dais {

struct Scenario {
  ExperimentConfig experiment;
  std::optional<double> noise_std;
};

/// Throws Error(InvalidConfig) naming the offending line or key.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);
Scenario preset_scenario(std::string_view name);

/// "pi:0.25" -> 0.25 pi, otherwise a plain number of radians.
double parse_angle(std::string_view text);

}  // namespace dais
