// SPDX-License-Identifier: Apache-2.0
#include "dais/signal.hpp"

#include <cmath>
#include <random>

#include "dais/error.hpp"

namespace dais {

namespace {

constexpr cdouble kJ{0.0, 1.0};

cdouble delay_phase(double delay, int subcarrier, const SystemConfig& cfg) {
  return std::exp(-kJ * (2.0 * kPi * subcarrier * delay / cfg.delay_window_s()));
}

}  // namespace

Eigen::VectorXcd steering_vector(double theta, const SystemConfig& cfg) {
  const double step = 2.0 * kPi * cfg.antenna_spacing_m() * std::sin(theta) / cfg.wavelength_m();
  Eigen::VectorXcd a(cfg.n_antennas);
  a[0] = 1.0;
  for (int i = 1; i < cfg.n_antennas; ++i) a[i] = std::exp(-kJ * (step * i));
  return a;
}

cdouble free_space_gain(double path_length_m, const SystemConfig& cfg) {
  if (!(path_length_m > 0.0)) {
    throw Error(ErrorCode::DegenerateGeometry, "path length must be positive");
  }
  const double lambda = cfg.wavelength_m();
  return lambda / (4.0 * kPi * path_length_m) * std::exp(-kJ * (2.0 * kPi * path_length_m / lambda));
}

Eigen::VectorXcd free_space_gains(const Scene& scene, const SystemConfig& cfg) {
  scene.validate();
  Eigen::VectorXcd gains(scene.n_paths());
  gains[0] = free_space_gain((scene.alice_pos - scene.anchor_pos).norm(), cfg);
  for (int k = 1; k < scene.n_paths(); ++k) {
    const Vec2& v = scene.scatterer_pos[k - 1];
    gains[k] = free_space_gain((scene.alice_pos - v).norm() + (v - scene.anchor_pos).norm(), cfg);
  }
  return gains;
}

Eigen::RowVectorXcd channel_vector(const PathParams& params, int subcarrier,
                                   const SystemConfig& cfg) {
  Eigen::RowVectorXcd h = Eigen::RowVectorXcd::Zero(cfg.n_antennas);
  for (int k = 0; k < params.n_paths(); ++k) {
    h += params.gains[k] * delay_phase(params.toa[k], subcarrier, cfg) *
         steering_vector(params.aod[k], cfg).adjoint();
  }
  return h;
}

Eigen::MatrixXcd dais_precoder(const SpoofShift& shift, int subcarrier, const SystemConfig& cfg) {
  const Eigen::VectorXcd diag =
      delay_phase(shift.delta_tau, subcarrier, cfg) * steering_vector(shift.delta_theta, cfg).conjugate();
  return diag.asDiagonal();
}

Eigen::MatrixXcd fpi_precoder(double delta_tau, double delta_theta, int subcarrier,
                              const SystemConfig& cfg) {
  Eigen::MatrixXcd phi = dais_precoder(SpoofShift{delta_tau, delta_theta}, subcarrier, cfg);
  phi.diagonal().array() += 1.0;
  return phi;
}

Eigen::MatrixXcd Precoder::matrix(int subcarrier, const SystemConfig& cfg) const {
  switch (kind) {
    case Kind::Dais: return dais_precoder(params, subcarrier, cfg);
    case Kind::Fpi: return fpi_precoder(params.delta_tau, params.delta_theta, subcarrier, cfg);
    case Kind::Identity: break;
  }
  return Eigen::MatrixXcd::Identity(cfg.n_antennas, cfg.n_antennas);
}

PilotSet::PilotSet(int n_symbols, int n_subcarriers, int n_antennas)
    : n_symbols_(n_symbols),
      n_subcarriers_(n_subcarriers),
      n_antennas_(n_antennas),
      symbols_(Eigen::MatrixXcd::Zero(n_symbols, n_subcarriers)),
      beams_(static_cast<std::size_t>(n_symbols) * n_subcarriers,
             Eigen::VectorXcd::Zero(n_antennas)),
      pilots_(beams_) {}

void PilotSet::set(int g, int n, cdouble symbol, Eigen::VectorXcd beam) {
  symbols_(g, n) = symbol;
  pilots_[index(g, n)] = beam * symbol;
  beams_[index(g, n)] = std::move(beam);
}

PilotSet PilotSet::precoded(const Precoder& precoder, const SystemConfig& cfg) const {
  PilotSet out(n_symbols_, n_subcarriers_, n_antennas_);
  for (int n = 0; n < n_subcarriers_; ++n) {
    const Eigen::MatrixXcd phi = precoder.matrix(n, cfg);
    for (int g = 0; g < n_symbols_; ++g) out.set(g, n, symbol(g, n), phi * beam(g, n));
  }
  return out;
}

bool PilotSet::operator==(const PilotSet& other) const {
  if (n_symbols_ != other.n_symbols_ || n_subcarriers_ != other.n_subcarriers_ ||
      n_antennas_ != other.n_antennas_ || symbols_ != other.symbols_) {
    return false;
  }
  for (std::size_t i = 0; i < beams_.size(); ++i) {
    if (beams_[i] != other.beams_[i]) return false;
  }
  return true;
}

PilotSet generate_pilots(std::uint64_t seed, const SystemConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // pi - 2 pi U with U in [0, 1) lands in (-pi, pi].
  auto phase = [&] { return std::polar(1.0, kPi - 2.0 * kPi * unit(rng)); };
  const double beam_scale = 1.0 / std::sqrt(static_cast<double>(cfg.n_antennas));

  PilotSet pilots(cfg.n_symbols, cfg.n_subcarriers, cfg.n_antennas);
  for (int g = 0; g < cfg.n_symbols; ++g) {
    for (int n = 0; n < cfg.n_subcarriers; ++n) {
      const cdouble x = phase();
      Eigen::VectorXcd f(cfg.n_antennas);
      for (int i = 0; i < cfg.n_antennas; ++i) f[i] = beam_scale * phase();
      pilots.set(g, n, x, std::move(f));
    }
  }
  return pilots;
}

Eigen::MatrixXcd observation_mean(const PathParams& params, const PilotSet& pilots,
                                  const Precoder& precoder, const SystemConfig& cfg) {
  Eigen::MatrixXcd mean(pilots.n_symbols(), pilots.n_subcarriers());
  for (int n = 0; n < pilots.n_subcarriers(); ++n) {
    Eigen::RowVectorXcd h = channel_vector(params, n, cfg);
    if (precoder.kind != Precoder::Kind::Identity) h = h * precoder.matrix(n, cfg);
    for (int g = 0; g < pilots.n_symbols(); ++g) mean(g, n) = h * pilots.pilot(g, n);
  }
  return mean;
}

Eigen::MatrixXcd observation_mean(const PathParams& params, const PilotSet& pilots,
                                  const SystemConfig& cfg) {
  return observation_mean(params, pilots, Precoder::identity(), cfg);
}

Eigen::MatrixXcd sample_noisy_observations(const Eigen::MatrixXcd& mean, double sigma,
                                           std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw Error(ErrorCode::InvalidNoise, "sigma must be non-negative");
  Eigen::MatrixXcd out = mean;
  if (sigma == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> component(0.0, sigma / std::sqrt(2.0));
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      const double re = component(rng);
      const double im = component(rng);
      out(i, j) += cdouble(re, im);
    }
  }
  return out;
}

double snr_db(const Eigen::MatrixXcd& mean, double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidNoise, "sigma must be positive");
  const double power = mean.squaredNorm();
  return 10.0 * std::log10(power / (static_cast<double>(mean.size()) * sigma * sigma));
}

}  // namespace dais
