// SPDX-License-Identifier: Apache-2.0
//
// MISO-OFDM pilot model: ULA steering vectors, per-subcarrier channel rows,
// pilots/beamformers, and the phase-only spoofing precoder.
#pragma once

#include <cstdint>
#include <vector>

#include "dais/types.hpp"

namespace dais {

/// Entry i is exp(-j 2 pi i d sin(theta) / lambda).
Eigen::VectorXcd steering_vector(double theta, const SystemConfig& cfg);

/// Free-space coefficient: magnitude lambda / (4 pi L), phase exp(-j 2 pi L / lambda).
cdouble free_space_gain(double path_length_m, const SystemConfig& cfg);

/// Free-space gains of the LOS and scatterer paths of a scene.
Eigen::VectorXcd free_space_gains(const Scene& scene, const SystemConfig& cfg);

/// h^(n) = sum_k gamma_k exp(-j 2 pi n tau_k / (N Ts)) alpha(theta_k)^H, as a row.
Eigen::RowVectorXcd channel_vector(const PathParams& params, int subcarrier,
                                   const SystemConfig& cfg);

/// Per-subcarrier precoding matrix factory.
struct Precoder {
  enum class Kind { Identity, Dais, Fpi };

  Kind kind = Kind::Identity;
  // For Dais the shared shift; for Fpi the design pair (delta_tau, delta_theta).
  SpoofShift params;

  static Precoder identity() { return {}; }
  static Precoder dais(const SpoofShift& shift) { return {Kind::Dais, shift}; }
  static Precoder fpi(double delta_tau, double delta_theta) {
    return {Kind::Fpi, SpoofShift{delta_tau, delta_theta}};
  }

  Eigen::MatrixXcd matrix(int subcarrier, const SystemConfig& cfg) const;
};

/// exp(-j 2 pi n dtau / (N Ts)) diag(alpha(dtheta)^H). Unit-modulus diagonal.
Eigen::MatrixXcd dais_precoder(const SpoofShift& shift, int subcarrier, const SystemConfig& cfg);

/// I + exp(-j 2 pi n dtau / (N Ts)) diag(alpha(dtheta)^H).
Eigen::MatrixXcd fpi_precoder(double delta_tau, double delta_theta, int subcarrier,
                              const SystemConfig& cfg);

/// Pilot symbols x^(g,n), beams f^(g,n) and their products s^(g,n) = f x.
class PilotSet {
 public:
  PilotSet(int n_symbols, int n_subcarriers, int n_antennas);

  int n_symbols() const { return n_symbols_; }
  int n_subcarriers() const { return n_subcarriers_; }
  int n_antennas() const { return n_antennas_; }

  cdouble symbol(int g, int n) const { return symbols_(g, n); }
  const Eigen::VectorXcd& beam(int g, int n) const { return beams_[index(g, n)]; }
  const Eigen::VectorXcd& pilot(int g, int n) const { return pilots_[index(g, n)]; }

  void set(int g, int n, cdouble symbol, Eigen::VectorXcd beam);

  /// Bob's effective pilots Phi^(n) s^(g,n).
  PilotSet precoded(const Precoder& precoder, const SystemConfig& cfg) const;

  bool operator==(const PilotSet& other) const;

 private:
  std::size_t index(int g, int n) const { return static_cast<std::size_t>(g) * n_subcarriers_ + n; }

  int n_symbols_;
  int n_subcarriers_;
  int n_antennas_;
  Eigen::MatrixXcd symbols_;
  std::vector<Eigen::VectorXcd> beams_;
  std::vector<Eigen::VectorXcd> pilots_;
};

/// Unit-circle symbols and unit-norm beams with i.i.d. uniform phases, from a 64-bit seed.
PilotSet generate_pilots(std::uint64_t seed, const SystemConfig& cfg);

/// Noise-free means u^(g,n) = h^(n) Phi^(n) s^(g,n), as a G x N matrix.
Eigen::MatrixXcd observation_mean(const PathParams& params, const PilotSet& pilots,
                                  const Precoder& precoder, const SystemConfig& cfg);
Eigen::MatrixXcd observation_mean(const PathParams& params, const PilotSet& pilots,
                                  const SystemConfig& cfg);

/// Adds circular complex Gaussian noise of variance sigma^2 per sample.
Eigen::MatrixXcd sample_noisy_observations(const Eigen::MatrixXcd& mean, double sigma,
                                           std::uint64_t seed);

/// 10 log10(sum |u|^2 / (N G sigma^2)).
double snr_db(const Eigen::MatrixXcd& mean, double sigma);

}  // namespace dais
