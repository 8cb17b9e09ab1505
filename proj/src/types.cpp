// SPDX-License-Identifier: Apache-2.0
#include "dais/types.hpp"

#include <cmath>
#include <string>

#include "dais/error.hpp"

namespace dais {

void SystemConfig::validate() const {
  if (n_antennas <= 0 || n_subcarriers <= 0 || n_symbols <= 0) {
    throw Error(ErrorCode::InvalidConfig, "antenna, subcarrier and symbol counts must be positive");
  }
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(carrier_hz) || !positive(bandwidth_hz) || !positive(light_speed_mps)) {
    throw Error(ErrorCode::InvalidConfig, "carrier, bandwidth and light speed must be positive");
  }
  if (!std::isfinite(noise_std) || noise_std < 0.0) {
    throw Error(ErrorCode::InvalidNoise, "noise_std must be finite and non-negative");
  }
}

void Scene::validate() const {
  auto finite = [](const Vec2& v) { return std::isfinite(v.x()) && std::isfinite(v.y()); };
  if (!finite(alice_pos) || !finite(anchor_pos)) {
    throw Error(ErrorCode::InvalidConfig, "positions must be finite");
  }
  if ((alice_pos - anchor_pos).norm() == 0.0) {
    throw Error(ErrorCode::DegenerateGeometry, "alice coincides with the anchor");
  }
  for (std::size_t k = 0; k < scatterer_pos.size(); ++k) {
    const Vec2& v = scatterer_pos[k];
    if (!finite(v)) throw Error(ErrorCode::InvalidConfig, "positions must be finite");
    if ((v - alice_pos).norm() == 0.0 || (v - anchor_pos).norm() == 0.0) {
      throw Error(ErrorCode::DegenerateGeometry,
                  "scatterer " + std::to_string(k + 1) + " coincides with alice or the anchor");
    }
  }
}

void SpoofShift::validate() const {
  if (!std::isfinite(delta_tau) || !std::isfinite(delta_theta)) {
    throw Error(ErrorCode::InvalidConfig, "spoof shift must be finite");
  }
  if (!(delta_theta > -kPi / 2 && delta_theta <= kPi / 2)) {
    throw Error(ErrorCode::InvalidConfig, "delta_theta must lie in (-pi/2, pi/2]");
  }
}

}  // namespace dais
