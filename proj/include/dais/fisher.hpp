// SPDX-License-Identifier: Apache-2.0
//
// Fisher information for the channel parameters, the effective FIM after
// eliminating the gains, Bob's localization CRB, Eve's misspecified CRB, and
// the rank test for the structure-leakage scenario.
//
// Channel parameter ordering everywhere:
//   xi = [tau_0..tau_K, theta_0..theta_K, Re g_0..Re g_K, Im g_0..Im g_K]
// Position ordering: [p_x, p_y, v1_x, v1_y, ..., vK_x, vK_y].
#pragma once

#include <cmath>
#include <vector>

#include "dais/geometry.hpp"
#include "dais/signal.hpp"

namespace dais {

/// d u^(g,n) / d xi for every (g, n); row g*N + n, 4(K+1) columns.
Eigen::MatrixXcd mean_derivatives(const PathParams& params, const PilotSet& pilots,
                                  const SystemConfig& cfg);

/// (2 / sigma^2) Re{D^H D}.
Eigen::MatrixXd fim_from_derivatives(const Eigen::MatrixXcd& derivatives, double sigma);

/// J_xi at cfg.noise_std for u = h(params) s.
Eigen::MatrixXd channel_fim(const PathParams& params, const PilotSet& pilots,
                            const SystemConfig& cfg);

/// Schur complement J1 - J2 J4^-1 J3 over the delay/angle block.
Eigen::MatrixXd effective_fim(const Eigen::MatrixXd& j_xi);

struct CrbResult {
  Eigen::MatrixXd fim;  // J_phi = Pi^T J_eta Pi
  Eigen::MatrixXd crb;  // Xi
  double condition = 1.0;

  double alice_rmse() const { return std::sqrt(crb(0, 0) + crb(1, 1)); }
  double trace() const { return crb.trace(); }
  bool ill_conditioned() const;
};

/// Xi = (Pi^T J_eta* Pi)^-1 with Pi the Jacobian of the true geometry of `scene`.
CrbResult localization_crb(const Eigen::MatrixXd& j_eta_star, const Scene& scene,
                           const SystemConfig& cfg);

struct McrbResult {
  Eigen::MatrixXd a_matrix;
  Eigen::MatrixXd b_matrix;
  Eigen::MatrixXd psi1;      // A^-1 B A^-1
  Eigen::MatrixXd psi2;      // mismatch outer product
  Eigen::MatrixXd psi;       // psi1 + psi2
  Eigen::VectorXd mismatch;  // pseudo-true minus true positions
  double condition = 1.0;

  double alice_rmse() const { return std::sqrt(psi(0, 0) + psi(1, 1)); }
  double mismatch_distance() const { return mismatch.head<2>().norm(); }
  bool ill_conditioned() const;
};

/// MCRB from Eve's effective FIM over the shifted parameters (indexed by true
/// path). `true_scene` is anchored at Eve.
McrbResult mcrb_from_efim(const Eigen::MatrixXd& j_eta_bar, const PseudoTrueScene& pseudo,
                          const Scene& true_scene, const SystemConfig& cfg);

/// MCRB at cfg.noise_std for Eve observing u = h_bar(shifted) s.
McrbResult mcrb(const PathParams& shifted, const PseudoTrueScene& pseudo, const Scene& true_scene,
                const PilotSet& pilots, const SystemConfig& cfg);

struct GeneralizedFims {
  Eigen::MatrixXd a_matrix;
  Eigen::MatrixXd b_matrix;
};

/// Evaluates the defining Gaussian expectations of A and B directly: curvature
/// plus residual-weighted Hessian for A, score covariance plus bias for B. The
/// model Jacobian comes from complex-step differentiation of the literal
/// geometry map, independent of geometry_jacobian.
GeneralizedFims mcrb_generalized_fims_numeric(const Eigen::MatrixXd& j_eta_bar,
                                              const PathParams& shifted,
                                              const PseudoTrueScene& pseudo,
                                              const Vec2& eve_pos, const SystemConfig& cfg);

inline constexpr double kSingularRatio = 1e-10;

struct RankReport {
  Eigen::MatrixXd fim;
  double ratio = 0.0;  // smallest / largest equilibrated eigenvalue
  bool singular() const { return ratio < kSingularRatio; }
};

/// d u / d delta_tau and d u / d delta_theta for u = h Phi(shift) s at one (g, n).
Eigen::Vector2cd shift_derivatives(const PathParams& true_params, const SpoofShift& shift,
                                   const PilotSet& pilots, int g, int n, const SystemConfig& cfg);

/// FIM of chi = [tau, theta, Re g, Im g, delta_tau, delta_theta] when the
/// precoder form is known but the shift is not.
RankReport augmented_fim_rank(const PathParams& true_params, const SpoofShift& shift,
                              const PilotSet& pilots, const SystemConfig& cfg);

/// Same observation model with the shift known (Bob).
RankReport channel_fim_rank(const PathParams& true_params, const SpoofShift& shift,
                            const PilotSet& pilots, const SystemConfig& cfg);

struct LeakageIdentityResidual {
  double delay = 0.0;  // |du/dDtau - sum_k du/dtau_k| / |du/dDtau|
  double angle = 0.0;  // |du/dDtheta - cos(Dtheta) sum_k du/dtheta_k / cos(theta_k)| / |du/dDtheta|
};

LeakageIdentityResidual leakage_identity_residual(const PathParams& true_params,
                                                  const SpoofShift& shift, const PilotSet& pilots,
                                                  int g, int n, const SystemConfig& cfg);

}  // namespace dais
