// SPDX-License-Identifier: Apache-2.0
#include "dais/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dais/error.hpp"

namespace dais {

double wrap_half_open(double x, double t1, double t2) {
  if (!(t1 < t2)) throw Error(ErrorCode::InvalidInterval, "wrap interval requires t1 < t2");
  const double period = t2 - t1;
  // Floor is the largest integer strictly below the argument.
  const double turns = std::ceil((x - t1) / period) - 1.0;
  double y = x - turns * period;
  if (y <= t1) y += period;
  if (y > t2) y -= period;
  return y;
}

double fold_half_turn(double angle) {
  while (angle <= -kPi / 2) angle += kPi;
  while (angle > kPi / 2) angle -= kPi;
  return angle;
}

namespace {

double bearing(const Vec2& from, const Vec2& to) {
  const Vec2 d = to - from;
  return fold_half_turn(std::atan2(d.y(), d.x()));
}

void require_nonzero(double distance, const std::string& what) {
  if (distance == 0.0) throw Error(ErrorCode::DegenerateGeometry, what);
}

}  // namespace

PathParams toa_aod_from_scene(const Scene& scene, const SystemConfig& cfg) {
  scene.validate();
  const int n_paths = scene.n_paths();
  const double c = cfg.light_speed_mps;
  PathParams out;
  out.toa.resize(n_paths);
  out.aod.resize(n_paths);

  out.toa[0] = (scene.alice_pos - scene.anchor_pos).norm() / c;
  out.aod[0] = bearing(scene.alice_pos, scene.anchor_pos);
  for (int k = 1; k < n_paths; ++k) {
    const Vec2& v = scene.scatterer_pos[k - 1];
    out.toa[k] = ((scene.anchor_pos - v).norm() + (scene.alice_pos - v).norm()) / c;
    out.aod[k] = bearing(scene.alice_pos, v);
  }

  const double window = cfg.delay_window_s();
  for (int k = 0; k < n_paths; ++k) {
    if (!(out.toa[k] > 0.0 && out.toa[k] <= window)) {
      throw Error(ErrorCode::DelayOutOfRange,
                  "path " + std::to_string(k) + " delay outside (0, N*Ts]");
    }
  }
  return out;
}

PathParams apply_dais_shift(const PathParams& params, const SpoofShift& shift,
                            const SystemConfig& cfg) {
  shift.validate();
  PathParams out = params;
  const double window = cfg.delay_window_s();
  const double sin_shift = std::sin(shift.delta_theta);
  for (int k = 0; k < params.n_paths(); ++k) {
    out.toa[k] = wrap_half_open(params.toa[k] + shift.delta_tau, 0.0, window);
    out.aod[k] = std::asin(wrap_half_open(std::sin(params.aod[k]) + sin_shift, -1.0, 1.0));
  }
  return out;
}

std::string WrapCase::label() const {
  return genuine_los() ? std::string("C1") : "C2:" + std::to_string(apparent_los);
}

WrapCase classify_wrap_case(const PathParams& shifted) {
  WrapCase out;
  for (int k = 1; k < shifted.n_paths(); ++k) {
    if (shifted.toa[k] < shifted.toa[out.apparent_los]) out.apparent_los = k;
  }
  return out;
}

std::vector<int> slot_to_path(const WrapCase& wrap, int n_paths) {
  std::vector<int> map(n_paths);
  for (int k = 0; k < n_paths; ++k) map[k] = k;
  std::swap(map[0], map[wrap.apparent_los]);
  return map;
}

PseudoTrueScene pseudo_true_scene(const PathParams& shifted, const Vec2& eve_pos,
                                  const SystemConfig& cfg) {
  const int n_paths = shifted.n_paths();
  const double c = cfg.light_speed_mps;
  PseudoTrueScene out;
  out.wrap = classify_wrap_case(shifted);
  const auto slots = slot_to_path(out.wrap, n_paths);

  auto direction = [&](int path) {
    return Vec2(std::cos(shifted.aod[path]), std::sin(shifted.aod[path]));
  };

  const int los = slots[0];
  out.alice_pos = eve_pos - c * shifted.toa[los] * direction(los);

  const Vec2 w = eve_pos - out.alice_pos;
  out.scatterer_pos.reserve(n_paths - 1);
  for (int slot = 1; slot < n_paths; ++slot) {
    const int path = slots[slot];
    const double range = c * shifted.toa[path];
    const Vec2 u = direction(path);
    const double denominator = range - w.dot(u);
    if (std::abs(denominator) < 1e-12 * range) {
      throw Error(ErrorCode::SolverDegenerate,
                  "scatterer range denominator vanishes for path " + std::to_string(path));
    }
    // Round-trip length c*tau split into Alice->scatterer (b/2) and scatterer->Eve.
    const double b = (range * range - w.squaredNorm()) / denominator;
    out.scatterer_pos.push_back(out.alice_pos + 0.5 * b * u);
  }

  const double residual = pseudo_true_residual(out, shifted, eve_pos, cfg);
  if (!(residual <= 1e-9)) {
    throw Error(ErrorCode::SolverDegenerate,
                "pseudo-true scene does not reproduce the shifted parameters (residual " +
                    std::to_string(residual) + ")");
  }
  return out;
}

double pseudo_true_residual(const PseudoTrueScene& pseudo, const PathParams& shifted,
                            const Vec2& eve_pos, const SystemConfig& cfg) {
  const int n_paths = shifted.n_paths();
  const double c = cfg.light_speed_mps;
  const auto slots = slot_to_path(pseudo.wrap, n_paths);
  double worst = 0.0;
  auto check = [&](double toa, double aod, int path) {
    worst = std::max(worst, std::abs(toa - shifted.toa[path]) / shifted.toa[path]);
    worst = std::max(worst, std::abs(aod - shifted.aod[path]));
  };
  const Vec2& p = pseudo.alice_pos;
  const double los_dist = (p - eve_pos).norm();
  if (los_dist == 0.0) return INFINITY;
  check(los_dist / c, bearing(p, eve_pos), slots[0]);
  for (int slot = 1; slot < n_paths; ++slot) {
    const Vec2& v = pseudo.scatterer_pos[slot - 1];
    const double d_alice = (p - v).norm();
    if (d_alice == 0.0 || (eve_pos - v).norm() == 0.0) return INFINITY;
    check(((eve_pos - v).norm() + d_alice) / c, bearing(p, v), slots[slot]);
  }
  return worst;
}

Eigen::VectorXd stack_positions(const Vec2& alice, std::span<const Vec2> scatterers) {
  Eigen::VectorXd phi(2 * (scatterers.size() + 1));
  phi.head<2>() = alice;
  for (std::size_t k = 0; k < scatterers.size(); ++k) phi.segment<2>(2 * (k + 1)) = scatterers[k];
  return phi;
}

Eigen::MatrixXd geometry_jacobian(const Vec2& alice, std::span<const Vec2> scatterers,
                                  const Vec2& anchor, const SystemConfig& cfg) {
  const int n_paths = static_cast<int>(scatterers.size()) + 1;
  const double c = cfg.light_speed_mps;
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(2 * n_paths, 2 * n_paths);

  // d atan2(dy, dx) / d(dx, dy)
  auto angle_grad = [](const Vec2& d) -> Vec2 { return Vec2(-d.y(), d.x()) / d.squaredNorm(); };

  const Vec2 los = anchor - alice;
  require_nonzero(los.norm(), "alice coincides with the anchor");
  jac.block<1, 2>(0, 0) = (-los / (c * los.norm())).transpose();
  jac.block<1, 2>(n_paths, 0) = (-angle_grad(los)).transpose();

  for (int k = 1; k < n_paths; ++k) {
    const Vec2& v = scatterers[k - 1];
    const Vec2 out_leg = v - alice;   // Alice -> scatterer
    const Vec2 in_leg = v - anchor;   // anchor -> scatterer
    require_nonzero(out_leg.norm(), "scatterer coincides with alice");
    require_nonzero(in_leg.norm(), "scatterer coincides with the anchor");
    const int col = 2 * k;
    jac.block<1, 2>(k, 0) = (-out_leg / (c * out_leg.norm())).transpose();
    jac.block<1, 2>(k, col) =
        ((out_leg / out_leg.norm() + in_leg / in_leg.norm()) / c).transpose();
    const Vec2 g = angle_grad(out_leg);
    jac.block<1, 2>(n_paths + k, 0) = (-g).transpose();
    jac.block<1, 2>(n_paths + k, col) = g.transpose();
  }
  return jac;
}

}  // namespace dais
