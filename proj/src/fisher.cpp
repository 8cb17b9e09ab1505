// SPDX-License-Identifier: Apache-2.0
#include "dais/fisher.hpp"

#include <cmath>
#include <string>

#include "dais/error.hpp"
#include "dais/linalg.hpp"

namespace dais {

namespace {

constexpr cdouble kJ{0.0, 1.0};

// Derivatives of u = h(params) s at subcarrier n for one pilot vector s.
Eigen::RowVectorXcd mean_derivative_row(const PathParams& params, const Eigen::VectorXcd& pilot,
                                        int n, const SystemConfig& cfg) {
  const int n_paths = params.n_paths();
  const double delay_rate = 2.0 * kPi * n / cfg.delay_window_s();
  const double angle_rate = 2.0 * kPi * cfg.antenna_spacing_m() / cfg.wavelength_m();
  const Eigen::ArrayXd antenna_index = Eigen::ArrayXd::LinSpaced(cfg.n_antennas, 0, cfg.n_antennas - 1);

  Eigen::RowVectorXcd row(4 * n_paths);
  for (int k = 0; k < n_paths; ++k) {
    const cdouble phase = std::exp(-kJ * (delay_rate * params.toa[k]));
    // alpha(theta)^H entries times the pilot
    const Eigen::ArrayXcd weighted =
        steering_vector(params.aod[k], cfg).conjugate().array() * pilot.array();
    const cdouble response = phase * weighted.sum();
    const cdouble angle_term =
        phase * (kJ * angle_rate * std::cos(params.aod[k])) * (antenna_index * weighted).sum();
    row[k] = params.gains[k] * response * (-kJ * delay_rate);
    row[n_paths + k] = params.gains[k] * angle_term;
    row[2 * n_paths + k] = response;
    row[3 * n_paths + k] = kJ * response;
  }
  return row;
}

Eigen::MatrixXd permute_eta(const Eigen::MatrixXd& j_eta, const std::vector<int>& slots) {
  const int n_paths = static_cast<int>(slots.size());
  std::vector<int> index(2 * n_paths);
  for (int k = 0; k < n_paths; ++k) {
    index[k] = slots[k];
    index[n_paths + k] = n_paths + slots[k];
  }
  Eigen::MatrixXd out(2 * n_paths, 2 * n_paths);
  for (int r = 0; r < 2 * n_paths; ++r) {
    for (int c = 0; c < 2 * n_paths; ++c) out(r, c) = j_eta(index[r], index[c]);
  }
  return out;
}

Eigen::VectorXd permute_eta(const PathParams& shifted, const std::vector<int>& slots) {
  const int n_paths = static_cast<int>(slots.size());
  Eigen::VectorXd eta(2 * n_paths);
  for (int k = 0; k < n_paths; ++k) {
    eta[k] = shifted.toa[slots[k]];
    eta[n_paths + k] = shifted.aod[slots[k]];
  }
  return eta;
}

void require_gains(const PathParams& params) {
  if (!params.has_gains()) throw Error(ErrorCode::InvalidConfig, "path gains are not set");
}

}  // namespace

Eigen::MatrixXcd mean_derivatives(const PathParams& params, const PilotSet& pilots,
                                  const SystemConfig& cfg) {
  require_gains(params);
  const int rows = pilots.n_symbols() * pilots.n_subcarriers();
  Eigen::MatrixXcd d(rows, 4 * params.n_paths());
  for (int g = 0; g < pilots.n_symbols(); ++g) {
    for (int n = 0; n < pilots.n_subcarriers(); ++n) {
      d.row(g * pilots.n_subcarriers() + n) = mean_derivative_row(params, pilots.pilot(g, n), n, cfg);
    }
  }
  return d;
}

Eigen::MatrixXd fim_from_derivatives(const Eigen::MatrixXcd& derivatives, double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidNoise, "sigma must be positive");
  const Eigen::MatrixXd gram = (derivatives.adjoint() * derivatives).real();
  return symmetrize((2.0 / (sigma * sigma)) * gram);
}

Eigen::MatrixXd channel_fim(const PathParams& params, const PilotSet& pilots,
                            const SystemConfig& cfg) {
  if (!(cfg.noise_std > 0.0)) throw Error(ErrorCode::InvalidNoise, "sigma must be positive");
  return fim_from_derivatives(mean_derivatives(params, pilots, cfg), cfg.noise_std);
}

Eigen::MatrixXd effective_fim(const Eigen::MatrixXd& j_xi) {
  const Eigen::Index half = j_xi.rows() / 2;
  const auto j1 = j_xi.topLeftCorner(half, half);
  const auto j2 = j_xi.topRightCorner(half, half);
  const auto j3 = j_xi.bottomLeftCorner(half, half);
  const Eigen::MatrixXd j4 = j_xi.bottomRightCorner(half, half);
  const SymmetricInverse j4_inv = invert_spd(j4, ErrorCode::SingularNuisanceBlock, "gain block J4");
  return symmetrize(j1 - j2 * j4_inv.inverse * j3);
}

bool CrbResult::ill_conditioned() const { return condition > kConditionWarning; }
bool McrbResult::ill_conditioned() const { return condition > kConditionWarning; }

CrbResult localization_crb(const Eigen::MatrixXd& j_eta_star, const Scene& scene,
                           const SystemConfig& cfg) {
  scene.validate();
  const Eigen::MatrixXd pi =
      geometry_jacobian(scene.alice_pos, scene.scatterer_pos, scene.anchor_pos, cfg);
  CrbResult out;
  out.fim = symmetrize(pi.transpose() * j_eta_star * pi);
  const SymmetricInverse inv =
      invert_spd(out.fim, ErrorCode::SingularLocalizationFim, "localization FIM");
  out.crb = inv.inverse;
  out.condition = inv.condition;
  return out;
}

McrbResult mcrb_from_efim(const Eigen::MatrixXd& j_eta_bar, const PseudoTrueScene& pseudo,
                          const Scene& true_scene, const SystemConfig& cfg) {
  const int n_paths = true_scene.n_paths();
  if (static_cast<int>(pseudo.scatterer_pos.size()) + 1 != n_paths ||
      j_eta_bar.rows() != 2 * n_paths) {
    throw Error(ErrorCode::InvalidConfig, "pseudo-true scene and FIM sizes disagree");
  }
  const Eigen::MatrixXd j_slots = permute_eta(j_eta_bar, slot_to_path(pseudo.wrap, n_paths));
  // Eve's model Jacobian is evaluated at the pseudo-true scene under the unshifted geometry.
  const Eigen::MatrixXd o =
      geometry_jacobian(pseudo.alice_pos, pseudo.scatterer_pos, true_scene.anchor_pos, cfg);

  McrbResult out;
  // Exact match o(phi_bar) = u(phi): the residual terms vanish, leaving B = O^T J O = -A.
  out.b_matrix = symmetrize(o.transpose() * j_slots * o);
  out.a_matrix = -out.b_matrix;
  const SymmetricInverse inv = invert_spd(out.b_matrix, ErrorCode::SingularMcrbFim, "MCRB FIM");
  out.psi1 = inv.inverse;
  out.condition = inv.condition;
  out.mismatch = stack_positions(pseudo.alice_pos, pseudo.scatterer_pos) -
                 stack_positions(true_scene.alice_pos, true_scene.scatterer_pos);
  out.psi2 = out.mismatch * out.mismatch.transpose();
  out.psi = out.psi1 + out.psi2;
  return out;
}

McrbResult mcrb(const PathParams& shifted, const PseudoTrueScene& pseudo, const Scene& true_scene,
                const PilotSet& pilots, const SystemConfig& cfg) {
  const Eigen::MatrixXd j_eta_bar = effective_fim(channel_fim(shifted, pilots, cfg));
  return mcrb_from_efim(j_eta_bar, pseudo, true_scene, cfg);
}

GeneralizedFims mcrb_generalized_fims_numeric(const Eigen::MatrixXd& j_eta_bar,
                                              const PathParams& shifted,
                                              const PseudoTrueScene& pseudo,
                                              const Vec2& eve_pos, const SystemConfig& cfg) {
  const int n_paths = shifted.n_paths();
  const int dim = 2 * n_paths;
  const auto slots = slot_to_path(pseudo.wrap, n_paths);
  const Eigen::MatrixXd j_slots = permute_eta(j_eta_bar, slots);
  const Eigen::MatrixXd sigma_eta =
      invert_spd(j_slots, ErrorCode::SingularMcrbFim, "channel-parameter FIM").inverse;
  const Eigen::VectorXd phi = stack_positions(pseudo.alice_pos, pseudo.scatterer_pos);
  const double c = cfg.light_speed_mps;

  auto model = [&](const Eigen::VectorXd& x) {
    const std::vector<double> pos(x.data(), x.data() + x.size());
    const auto eta = path_geometry<double>(pos, eve_pos.x(), eve_pos.y(), c);
    return Eigen::Map<const Eigen::VectorXd>(eta.data(), dim).eval();
  };
  auto model_jacobian = [&](const Eigen::VectorXd& x) {
    constexpr double step = 1e-30;
    Eigen::MatrixXd jac(dim, dim);
    for (int col = 0; col < dim; ++col) {
      std::vector<cdouble> pos(x.data(), x.data() + x.size());
      pos[col] += cdouble(0.0, step);
      const auto eta = path_geometry<cdouble>(pos, cdouble(eve_pos.x()), cdouble(eve_pos.y()), c);
      for (int row = 0; row < dim; ++row) jac(row, col) = eta[row].imag() / step;
    }
    return jac;
  };

  const Eigen::MatrixXd o = model_jacobian(phi);
  const Eigen::VectorXd residual = permute_eta(shifted, slots) - model(phi);
  const Eigen::VectorXd weighted_residual = j_slots * residual;

  // Hessian of each model output by central differences of the complex-step Jacobian.
  constexpr double h = 1e-4;
  Eigen::MatrixXd residual_curvature = Eigen::MatrixXd::Zero(dim, dim);
  for (int l = 0; l < dim; ++l) {
    Eigen::VectorXd up = phi, down = phi;
    up[l] += h;
    down[l] -= h;
    const Eigen::MatrixXd d_jac = (model_jacobian(up) - model_jacobian(down)) / (2.0 * h);
    // d_jac(i, r) = d^2 o_i / d phi_r d phi_l
    residual_curvature.col(l) = d_jac.transpose() * weighted_residual;
  }

  GeneralizedFims out;
  out.a_matrix = symmetrize(-o.transpose() * j_slots * o + residual_curvature);
  const Eigen::MatrixXd second_moment = sigma_eta + residual * residual.transpose();
  out.b_matrix = symmetrize(o.transpose() * j_slots * second_moment * j_slots * o);
  return out;
}

Eigen::Vector2cd shift_derivatives(const PathParams& true_params, const SpoofShift& shift,
                                   const PilotSet& pilots, int g, int n, const SystemConfig& cfg) {
  require_gains(true_params);
  const Eigen::RowVectorXcd h = channel_vector(true_params, n, cfg);
  const Eigen::VectorXcd phi_diag = dais_precoder(shift, n, cfg).diagonal();
  const Eigen::VectorXcd& s = pilots.pilot(g, n);
  const double delay_rate = 2.0 * kPi * n / cfg.delay_window_s();
  const double angle_rate =
      2.0 * kPi * cfg.antenna_spacing_m() * std::cos(shift.delta_theta) / cfg.wavelength_m();

  const Eigen::ArrayXcd terms = h.transpose().array() * phi_diag.array() * s.array();
  const Eigen::ArrayXd antenna_index = Eigen::ArrayXd::LinSpaced(cfg.n_antennas, 0, cfg.n_antennas - 1);
  Eigen::Vector2cd out;
  out[0] = -kJ * delay_rate * terms.sum();
  out[1] = kJ * angle_rate * (antenna_index * terms).sum();
  return out;
}

RankReport channel_fim_rank(const PathParams& true_params, const SpoofShift& shift,
                            const PilotSet& pilots, const SystemConfig& cfg) {
  const PilotSet effective = pilots.precoded(Precoder::dais(shift), cfg);
  RankReport out;
  out.fim = channel_fim(true_params, effective, cfg);
  out.ratio = spectral_ratio(out.fim);
  return out;
}

RankReport augmented_fim_rank(const PathParams& true_params, const SpoofShift& shift,
                              const PilotSet& pilots, const SystemConfig& cfg) {
  if (!(cfg.noise_std > 0.0)) throw Error(ErrorCode::InvalidNoise, "sigma must be positive");
  const PilotSet effective = pilots.precoded(Precoder::dais(shift), cfg);
  const Eigen::MatrixXcd channel_part = mean_derivatives(true_params, effective, cfg);
  Eigen::MatrixXcd d(channel_part.rows(), channel_part.cols() + 2);
  d.leftCols(channel_part.cols()) = channel_part;
  for (int g = 0; g < pilots.n_symbols(); ++g) {
    for (int n = 0; n < pilots.n_subcarriers(); ++n) {
      d.row(g * pilots.n_subcarriers() + n).tail<2>() =
          shift_derivatives(true_params, shift, pilots, g, n, cfg).transpose();
    }
  }
  RankReport out;
  out.fim = fim_from_derivatives(d, cfg.noise_std);
  out.ratio = spectral_ratio(out.fim);
  return out;
}

LeakageIdentityResidual leakage_identity_residual(const PathParams& true_params,
                                                  const SpoofShift& shift, const PilotSet& pilots,
                                                  int g, int n, const SystemConfig& cfg) {
  const int n_paths = true_params.n_paths();
  const Eigen::VectorXcd effective = dais_precoder(shift, n, cfg) * pilots.pilot(g, n);
  const Eigen::RowVectorXcd row = mean_derivative_row(true_params, effective, n, cfg);
  const Eigen::Vector2cd direct = shift_derivatives(true_params, shift, pilots, g, n, cfg);

  cdouble delay_sum = 0.0;
  cdouble angle_sum = 0.0;
  for (int k = 0; k < n_paths; ++k) {
    delay_sum += row[k];
    angle_sum += row[n_paths + k] / std::cos(true_params.aod[k]);
  }
  angle_sum *= std::cos(shift.delta_theta);

  auto relative = [](cdouble a, cdouble b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
  };
  return {relative(direct[0], delay_sum), relative(direct[1], angle_sum)};
}

}  // namespace dais
