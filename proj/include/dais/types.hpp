// SPDX-License-Identifier: Apache-2.0
//
// Core value types shared by the geometry, signal and bound modules.
// All quantities are SI: seconds, meters, radians, hertz.
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace dais {

using Vec2 = Eigen::Vector2d;
using cdouble = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Radio constants of the MISO-OFDM link plus the noise level.
struct SystemConfig {
  int n_antennas = 16;       // transmit array size
  int n_subcarriers = 16;
  int n_symbols = 16;        // pilot symbols per subcarrier
  double carrier_hz = 60e9;
  double bandwidth_hz = 30e6;
  double light_speed_mps = 3e8;
  double noise_std = 1.0;    // per complex sample, variance noise_std^2

  double sample_period_s() const { return 1.0 / bandwidth_hz; }
  double wavelength_m() const { return light_speed_mps / carrier_hz; }
  double antenna_spacing_m() const { return 0.5 * wavelength_m(); }
  /// Unambiguous delay window N*Ts.
  double delay_window_s() const { return n_subcarriers * sample_period_s(); }

  /// Throws InvalidConfig for non-positive sizes or rates, InvalidNoise for sigma < 0.
  void validate() const;
  /// Bandwidth is not small against the carrier (B >= carrier/10).
  bool narrowband_violated() const { return bandwidth_hz >= carrier_hz / 10.0; }
};

/// Geometric ground truth as seen by one observer. The anchor is the receiver
/// (Bob's or Eve's position) and terminates the LOS path.
struct Scene {
  Vec2 alice_pos = Vec2::Zero();
  Vec2 anchor_pos = Vec2::Zero();
  std::vector<Vec2> scatterer_pos;

  int n_paths() const { return static_cast<int>(scatterer_pos.size()) + 1; }
  /// Throws DegenerateGeometry on coincident points or InvalidConfig on non-finite input.
  void validate() const;
};

/// Per-path delays, departure angles and complex gains; index 0 is the LOS path.
struct PathParams {
  Eigen::VectorXd toa;
  Eigen::VectorXd aod;
  Eigen::VectorXcd gains;  // empty when unset

  int n_paths() const { return static_cast<int>(toa.size()); }
  bool has_gains() const { return gains.size() == toa.size() && toa.size() > 0; }
};

/// Secret delay/angle offsets shared with the legitimate localizer.
struct SpoofShift {
  double delta_tau = 0.0;    // seconds
  double delta_theta = 0.0;  // radians, in (-pi/2, pi/2]

  void validate() const;
  bool is_zero() const { return delta_tau == 0.0 && delta_theta == 0.0; }
};

}  // namespace dais
