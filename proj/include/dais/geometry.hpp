// SPDX-License-Identifier: Apache-2.0
//
// Position <-> delay/angle mapping, the delay-angle spoofing shifts, and the
// closed-form pseudo-true scene an eavesdropper converges to when it applies
// the unshifted geometry to spoofed parameters.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "dais/types.hpp"

namespace dais {

/// Reduces x into the half-open interval (t1, t2].
double wrap_half_open(double x, double t1, double t2);

/// Folds an angle into (-pi/2, pi/2], the principal branch of arctan(dy/dx).
double fold_half_turn(double angle);

/// Delays and AODs of the LOS and every scatterer path (gains left unset).
PathParams toa_aod_from_scene(const Scene& scene, const SystemConfig& cfg);

/// Shifts every delay by delta_tau (wrapped into (0, N*Ts]) and every AOD sine by
/// sin(delta_theta) (wrapped into (-1, 1]). Gains are copied.
PathParams apply_dais_shift(const PathParams& params, const SpoofShift& shift,
                            const SystemConfig& cfg);

/// Which path the eavesdropper takes as LOS: the smallest delay, lowest index on ties.
struct WrapCase {
  int apparent_los = 0;
  bool genuine_los() const { return apparent_los == 0; }  // case C1
  std::string label() const;                               // "C1" or "C2:<m>"
};

WrapCase classify_wrap_case(const PathParams& shifted);

/// Scene slot k of the pseudo-true solution is explained by shifted path
/// slot_path(k): slot 0 <- apparent LOS, slot m <- path 0, others unchanged.
std::vector<int> slot_to_path(const WrapCase& wrap, int n_paths);

struct PseudoTrueScene {
  Vec2 alice_pos = Vec2::Zero();
  std::vector<Vec2> scatterer_pos;
  WrapCase wrap;
};

/// Closed-form solution of o(phi) = u(phi*) under the unshifted geometry,
/// anchored at the eavesdropper. Throws SolverDegenerate when a scatterer
/// range denominator vanishes or the remap residual exceeds 1e-9.
PseudoTrueScene pseudo_true_scene(const PathParams& shifted, const Vec2& eve_pos,
                                  const SystemConfig& cfg);

/// Max relative mismatch between the pseudo-true scene's remapped parameters and
/// the (re-indexed) shifted ones. Delay errors relative to the delay, angles absolute.
double pseudo_true_residual(const PseudoTrueScene& pseudo, const PathParams& shifted,
                            const Vec2& eve_pos, const SystemConfig& cfg);

/// d[tau_0..tau_K, theta_0..theta_K] / d[p_x, p_y, v1x, v1y, ...] of the
/// unshifted geometry. Away from the wrap boundaries it is also the Jacobian of
/// the spoofed geometry.
Eigen::MatrixXd geometry_jacobian(const Vec2& alice, std::span<const Vec2> scatterers,
                                  const Vec2& anchor, const SystemConfig& cfg);

/// Stacked position vector [p, v_1, ..., v_K].
Eigen::VectorXd stack_positions(const Vec2& alice, std::span<const Vec2> scatterers);

/// The literal geometry map evaluated on any scalar type (used with complex
/// steps by the numeric cross-checks). Angles use arctan(dy/dx).
template <typename T>
std::vector<T> path_geometry(const std::vector<T>& positions, const T anchor_x,
                             const T anchor_y, double light_speed) {
  using std::atan;
  using std::sqrt;
  const std::size_t n_paths = positions.size() / 2;
  std::vector<T> eta(2 * n_paths);
  const T px = positions[0];
  const T py = positions[1];
  auto dist = [](T dx, T dy) { return sqrt(dx * dx + dy * dy); };
  eta[0] = dist(anchor_x - px, anchor_y - py) / light_speed;
  eta[n_paths] = atan((anchor_y - py) / (anchor_x - px));
  for (std::size_t k = 1; k < n_paths; ++k) {
    const T vx = positions[2 * k];
    const T vy = positions[2 * k + 1];
    eta[k] = (dist(anchor_x - vx, anchor_y - vy) + dist(px - vx, py - vy)) / light_speed;
    eta[n_paths + k] = atan((vy - py) / (vx - px));
  }
  return eta;
}

}  // namespace dais
