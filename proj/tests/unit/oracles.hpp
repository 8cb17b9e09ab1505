// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference evaluations. These deliberately avoid the library's code
// paths: plain loops, std::hypot/atan of ratios, central differences.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "dais/analysis.hpp"

namespace oracle {

using cd = std::complex<double>;
constexpr double pi = 3.14159265358979323846;
constexpr double c = 3e8;

struct Eta {
  std::vector<double> toa, aod;
};

// Direct evaluation of the delay/angle map, anchor terminates the LOS path.
inline Eta eq3(double px, double py, double ax, double ay, const std::vector<std::pair<double, double>>& sc) {
  Eta e;
  e.toa.push_back(std::hypot(ax - px, ay - py) / c);
  e.aod.push_back(std::atan((ay - py) / (ax - px)));
  for (auto [vx, vy] : sc) {
    e.toa.push_back((std::hypot(ax - vx, ay - vy) + std::hypot(px - vx, py - vy)) / c);
    e.aod.push_back(std::atan((vy - py) / (vx - px)));
  }
  return e;
}

inline dais::ExperimentConfig reference() { return dais::paper_v_preset(); }

inline dais::Scene reference_scene() { return reference().eve_scene(); }

inline dais::PathParams reference_params(const dais::SystemConfig& cfg = {}) {
  const auto scene = reference_scene();
  auto p = dais::toa_aod_from_scene(scene, cfg);
  p.gains = dais::free_space_gains(scene, cfg);
  return p;
}

// Column-wise central differences of a complex vector-valued function.
inline Eigen::MatrixXcd central_difference(const std::function<Eigen::VectorXcd(const Eigen::VectorXd&)>& f,
                                           const Eigen::VectorXd& x, const Eigen::VectorXd& step) {
  const Eigen::VectorXcd f0 = f(x);
  Eigen::MatrixXcd d(f0.size(), x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    Eigen::VectorXd up = x, down = x;
    up[j] += step[j];
    down[j] -= step[j];
    d.col(j) = (f(up) - f(down)) / (2.0 * step[j]);
  }
  return d;
}

// Random non-degenerate scene in a 60 m box with the anchor and scatterers in
// front of Alice's array (positive x offset); every leg >= 2 m and every
// departure angle at least ~3 degrees away from +-pi/2.
inline dais::Scene random_scene(std::mt19937_64& rng, int n_scatterers) {
  std::uniform_real_distribution<double> coord(-30.0, 30.0);
  auto point = [&] { return dais::Vec2(coord(rng), coord(rng)); };
  auto ok_angle = [](const dais::Vec2& d) { return d.x() > 0.05 * d.norm(); };
  while (true) {
    dais::Scene s;
    s.alice_pos = point();
    s.anchor_pos = point();
    if ((s.alice_pos - s.anchor_pos).norm() < 2.0 || !ok_angle(s.anchor_pos - s.alice_pos)) continue;
    bool good = true;
    for (int k = 0; k < n_scatterers && good; ++k) {
      const auto v = point();
      good = (v - s.alice_pos).norm() > 2.0 && (v - s.anchor_pos).norm() > 2.0 && ok_angle(v - s.alice_pos);
      s.scatterer_pos.push_back(v);
    }
    if (good) return s;
  }
}

template <typename A, typename B>
double rel_err(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  const double scale = std::max(a.norm(), b.norm());
  return scale == 0.0 ? 0.0 : (a - b).norm() / scale;
}


// Jacobian of eq3 with respect to the stacked positions, by central differences.
inline Eigen::MatrixXd fd_geometry(const dais::Scene& scene, double step) {
  const int n = scene.n_paths();
  Eigen::VectorXd phi = dais::stack_positions(scene.alice_pos, scene.scatterer_pos);
  auto eval = [&](const Eigen::VectorXd& x) {
    std::vector<std::pair<double, double>> sc;
    for (int k = 1; k < n; ++k) sc.emplace_back(x[2 * k], x[2 * k + 1]);
    const auto e = eq3(x[0], x[1], scene.anchor_pos.x(), scene.anchor_pos.y(), sc);
    Eigen::VectorXd out(2 * n);
    for (int k = 0; k < n; ++k) {
      out[k] = e.toa[k];
      out[n + k] = e.aod[k];
    }
    return out;
  };
  Eigen::MatrixXd d(2 * n, 2 * n);
  for (int j = 0; j < 2 * n; ++j) {
    Eigen::VectorXd up = phi, down = phi;
    up[j] += step;
    down[j] -= step;
    d.col(j) = (eval(up) - eval(down)) / (2 * step);
  }
  return d;
}

// Entrywise relative error, scaled by the largest entry of the row.
inline double row_relative_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& ref) {
  double worst = 0.0;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    const double scale = ref.row(r).cwiseAbs().maxCoeff();
    worst = std::max(worst, (a.row(r) - ref.row(r)).cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

// Noise-free mean as a plain double loop, flattened as row g*N + n.
inline Eigen::VectorXcd direct_mean(const dais::PathParams& p, const dais::PilotSet& pilots,
                                    const dais::SystemConfig& cfg) {
  const double lambda = cfg.light_speed_mps / cfg.carrier_hz;
  const double d = lambda / 2;
  const double window = cfg.n_subcarriers / cfg.bandwidth_hz;
  Eigen::VectorXcd u(pilots.n_symbols() * pilots.n_subcarriers());
  for (int g = 0; g < pilots.n_symbols(); ++g) {
    for (int n = 0; n < pilots.n_subcarriers(); ++n) {
      const auto& s = pilots.pilot(g, n);
      cd acc = 0.0;
      for (int k = 0; k < p.n_paths(); ++k) {
        for (int i = 0; i < cfg.n_antennas; ++i) {
          const double phase = -2 * pi * n * p.toa[k] / window + 2 * pi * i * d * std::sin(p.aod[k]) / lambda;
          acc += p.gains[k] * std::polar(1.0, phase) * s[i];
        }
      }
      u[g * pilots.n_subcarriers() + n] = acc;
    }
  }
  return u;
}

// Central differences of the mean over [tau, theta, Re g, Im g].
inline Eigen::MatrixXcd fd_mean_derivatives(const dais::PathParams& p, const dais::PilotSet& pilots,
                                            const dais::SystemConfig& cfg) {
  const int k = p.n_paths();
  Eigen::VectorXd xi(4 * k), step(4 * k);
  xi << p.toa, p.aod, p.gains.real(), p.gains.imag();
  const double ts = 1.0 / cfg.bandwidth_hz;
  const double gain_scale = p.gains.cwiseAbs().maxCoeff();
  step << Eigen::VectorXd::Constant(k, 1e-4 * ts), Eigen::VectorXd::Constant(k, 1e-5),
      Eigen::VectorXd::Constant(2 * k, 1e-4 * gain_scale);
  auto eval = [&](const Eigen::VectorXd& x) {
    dais::PathParams q;
    q.toa = x.segment(0, k);
    q.aod = x.segment(k, k);
    q.gains = x.segment(2 * k, k).cast<cd>() + cd(0, 1) * x.segment(3 * k, k).cast<cd>();
    return direct_mean(q, pilots, cfg);
  };
  return central_difference(eval, xi, step);
}

template <typename A, typename B>
double max_column_rel_err(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) worst = std::max(worst, rel_err(a.col(j), b.col(j)));
  return worst;
}

// Relative error after scaling both matrices by the diagonal of `a`.
inline double scaled_rel_err(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const Eigen::VectorXd d = a.diagonal().cwiseAbs().cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd sa = d.asDiagonal() * a * d.asDiagonal();
  const Eigen::MatrixXd sb = d.asDiagonal() * b * d.asDiagonal();
  return rel_err(sa, sb);
}

}  // namespace oracle
