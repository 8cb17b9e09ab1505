// SPDX-License-Identifier: Apache-2.0
#include "dais/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "dais/error.hpp"

namespace dais {

std::string_view to_string(Baseline baseline) {
  switch (baseline) {
    case Baseline::None: return "none";
    case Baseline::Dais: return "dais";
    case Baseline::Fpi: return "fpi";
  }
  return "unknown";
}

void ExperimentConfig::validate() const {
  system.validate();
  bob_scene().validate();
  eve_scene().validate();
  shift.validate();
  if (seeds.empty()) throw Error(ErrorCode::InvalidConfig, "at least one pilot seed is required");
  for (std::size_t i = 1; i < snr_grid_db.size(); ++i) {
    if (!(snr_grid_db[i] > snr_grid_db[i - 1])) {
      throw Error(ErrorCode::InvalidConfig, "SNR grid must be strictly increasing");
    }
  }
  for (double snr : snr_grid_db) {
    if (!std::isfinite(snr)) throw Error(ErrorCode::InvalidConfig, "SNR grid values must be finite");
  }
  if (baseline == Baseline::Fpi) {
    throw Error(ErrorCode::InvalidConfig,
                "bounds under the fpi baseline are not supported; use it for signal synthesis only");
  }
}

ExperimentConfig paper_v_preset() {
  ExperimentConfig cfg;
  cfg.alice_pos = Vec2(3.0, 0.0);
  cfg.bob_pos = Vec2(10.0, 5.0);
  cfg.eve_pos = Vec2(10.0, 5.0);
  cfg.scatterer_pos = {Vec2(8.87, -6.05), Vec2(7.44, 8.53)};
  cfg.system = SystemConfig{};  // 16 antennas, 16 subcarriers, 16 symbols, 60 GHz, 30 MHz
  cfg.shift = SpoofShift{cfg.system.sample_period_s(), 0.25 * kPi};
  for (int snr = -20; snr <= 30; snr += 5) cfg.snr_grid_db.push_back(snr);
  for (std::uint64_t seed = 0; seed < 20; ++seed) cfg.seeds.push_back(seed);
  return cfg;
}

double calibrate_sigma_for_snr(double target_snr_db, const Eigen::MatrixXcd& mean) {
  const double power = mean.squaredNorm();
  if (!(power > 0.0)) throw Error(ErrorCode::ZeroSignal, "noise-free mean is identically zero");
  return std::sqrt(power / (static_cast<double>(mean.size()) * std::pow(10.0, target_snr_db / 10.0)));
}

double SeedBounds::sigma_for_snr(double snr_db) const {
  return std::sqrt(signal_power / (n_samples * std::pow(10.0, snr_db / 10.0)));
}

double SeedBounds::snr_for_sigma(double sigma) const {
  return 10.0 * std::log10(signal_power / (n_samples * sigma * sigma));
}

double SeedBounds::rmse_bob(double sigma) const {
  return sigma * std::sqrt(crb_unit(0, 0) + crb_unit(1, 1));
}

double SeedBounds::rmse_eve(double sigma) const {
  const double s2 = sigma * sigma;
  return std::sqrt(s2 * (psi1_unit(0, 0) + psi1_unit(1, 1)) + psi2(0, 0) + psi2(1, 1));
}

SeedBounds evaluate_seed(const ExperimentConfig& config, std::uint64_t seed) {
  SystemConfig unit = config.system;
  unit.noise_std = 1.0;
  const Scene bob = config.bob_scene();
  const Scene eve = config.eve_scene();
  const SpoofShift shift = config.applied_shift();

  PathParams bob_params = toa_aod_from_scene(bob, unit);
  bob_params.gains = free_space_gains(bob, unit);
  PathParams eve_params = toa_aod_from_scene(eve, unit);
  eve_params.gains = free_space_gains(eve, unit);
  const PathParams eve_shifted = apply_dais_shift(eve_params, shift, unit);

  const PilotSet pilots = generate_pilots(seed, unit);
  const PilotSet effective = pilots.precoded(Precoder::dais(shift), unit);

  SeedBounds out;
  out.seed = seed;
  out.n_samples = unit.n_symbols * unit.n_subcarriers;
  out.signal_power = observation_mean(eve_shifted, pilots, unit).squaredNorm();
  if (!(out.signal_power > 0.0)) throw Error(ErrorCode::ZeroSignal, "noise-free mean is identically zero");

  // Bob differentiates u = h(true) Phi s with respect to the true parameters.
  const CrbResult crb =
      localization_crb(effective_fim(channel_fim(bob_params, effective, unit)), bob, unit);

  const PseudoTrueScene pseudo = pseudo_true_scene(eve_shifted, config.eve_pos, unit);
  const McrbResult bound = mcrb(eve_shifted, pseudo, eve, pilots, unit);

  out.crb_unit = crb.crb;
  out.psi1_unit = bound.psi1;
  out.psi2 = bound.psi2;
  out.mismatch_distance = bound.mismatch_distance();
  out.wrap = pseudo.wrap;
  out.ill_conditioned = crb.ill_conditioned() || bound.ill_conditioned();
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

SweepRow aggregate_row(const std::vector<SeedBounds>& seeds, double snr_db) {
  std::vector<double> sigma, bob, eve, psi1;
  for (const auto& s : seeds) {
    const double sg = s.sigma_for_snr(snr_db);
    sigma.push_back(sg);
    bob.push_back(s.rmse_bob(sg));
    eve.push_back(s.rmse_eve(sg));
    psi1.push_back(sg * sg * s.psi1_unit.trace());
  }
  SweepRow row;
  row.snr_db = snr_db;
  row.sigma = median(sigma);
  row.rmse_bob_m = median(bob);
  row.rmse_eve_m = median(eve);
  row.trace_psi1 = median(psi1);
  row.trace_psi2 = seeds.front().psi2.trace();
  row.mismatch_distance_m = seeds.front().mismatch_distance;
  row.case_label = seeds.front().wrap.label();
  row.gap_db = 20.0 * std::log10(row.rmse_eve_m / row.rmse_bob_m);
  return row;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config) {
  config.validate();
  if (config.snr_grid_db.empty()) throw Error(ErrorCode::InvalidConfig, "SNR grid is empty");

  std::vector<SeedBounds> seeds;
  std::optional<std::string> failure;
  try {
    for (std::uint64_t seed : config.seeds) seeds.push_back(evaluate_seed(config, seed));
  } catch (const Error& e) {
    failure = e.what();
  }

  std::vector<SweepRow> rows;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (double snr : config.snr_grid_db) {
    if (failure) {
      SweepRow row{snr, nan, nan, nan, nan, nan, nan, "ERROR", nan, failure};
      rows.push_back(row);
    } else {
      rows.push_back(aggregate_row(seeds, snr));
    }
  }
  return rows;
}

double trace_margin(const std::vector<SeedBounds>& seeds, double sigma) {
  std::vector<double> psi, xi;
  for (const auto& s : seeds) {
    psi.push_back(s.trace_psi(sigma));
    xi.push_back(s.trace_xi(sigma));
  }
  return median(psi) - median(xi);
}

Sigma0Result find_sigma0(const ExperimentConfig& config, const Sigma0Options& options) {
  config.validate();
  if (options.grid_points < 2 || !(options.relative_width > 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "sigma0 search needs >= 2 grid points and a positive width");
  }
  std::vector<SeedBounds> seeds;
  for (std::uint64_t seed : config.seeds) seeds.push_back(evaluate_seed(config, seed));

  const double lo = options.sigma_min > 0.0 ? options.sigma_min : seeds.front().sigma_for_snr(60.0);
  const double hi = options.sigma_max > 0.0 ? options.sigma_max : seeds.front().sigma_for_snr(-60.0);
  if (!(lo < hi)) throw Error(ErrorCode::InvalidConfig, "sigma0 bracket must satisfy min < max");

  Sigma0Result out;
  const double log_lo = std::log(lo);
  const double log_step = (std::log(hi) - log_lo) / (options.grid_points - 1);
  for (int i = 0; i < options.grid_points; ++i) {
    const double sigma = i + 1 == options.grid_points ? hi : std::exp(log_lo + i * log_step);
    out.grid_sigma.push_back(sigma);
    out.grid_margin.push_back(trace_margin(seeds, sigma));
  }
  if (out.grid_margin.front() < 0.0) {
    throw Error(ErrorCode::NoThresholdInBracket,
                "trace(Psi) < trace(Xi) already at the smallest sigma in the bracket");
  }

  int sign_changes = 0;
  for (std::size_t i = 1; i < out.grid_margin.size(); ++i) {
    if ((out.grid_margin[i] >= 0.0) != (out.grid_margin[i - 1] >= 0.0)) ++sign_changes;
  }
  out.monotone_on_grid = sign_changes <= 1;

  const auto first_fail = std::find_if(out.grid_margin.begin(), out.grid_margin.end(),
                                       [](double m) { return m < 0.0; });
  if (first_fail == out.grid_margin.end()) {
    out.sigma0 = hi;
    out.at_bracket_edge = true;
  } else {
    const auto idx = static_cast<std::size_t>(first_fail - out.grid_margin.begin());
    double good = out.grid_sigma[idx - 1];
    double bad = out.grid_sigma[idx];
    while ((bad - good) / good > options.relative_width) {
      const double mid = std::sqrt(good * bad);
      (trace_margin(seeds, mid) >= 0.0 ? good : bad) = mid;
    }
    out.sigma0 = good;
  }
  out.snr_db = seeds.front().snr_for_sigma(out.sigma0);
  return out;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  int errors = 0;
  for (const auto& r : rows) {
    if (r.error) ++errors;
    out << format_number(r.snr_db) << ',' << format_number(r.sigma) << ','
        << format_number(r.rmse_bob_m) << ',' << format_number(r.rmse_eve_m) << ','
        << format_number(r.trace_psi1) << ',' << format_number(r.trace_psi2) << ','
        << format_number(r.mismatch_distance_m) << ',' << r.case_label << ','
        << format_number(r.gap_db) << '\n';
  }
  if (errors > 0) out << "# errors: " << errors << '\n';
}

void write_json(const std::vector<SweepRow>& rows, std::ostream& out) {
  // Same 9-digit formatting as the CSV.
  auto number = [](double v) -> nlohmann::ordered_json {
    if (!std::isfinite(v)) return nullptr;
    return nlohmann::ordered_json::parse(format_number(v));
  };
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["snr_db"] = number(r.snr_db);
    row["sigma"] = number(r.sigma);
    row["rmse_bob_m"] = number(r.rmse_bob_m);
    row["rmse_eve_m"] = number(r.rmse_eve_m);
    row["trace_psi1"] = number(r.trace_psi1);
    row["trace_psi2"] = number(r.trace_psi2);
    row["mismatch_distance_m"] = number(r.mismatch_distance_m);
    row["case_label"] = r.case_label;
    row["gap_db"] = number(r.gap_db);
    if (r.error) row["error"] = *r.error;
    doc.push_back(std::move(row));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace dais
