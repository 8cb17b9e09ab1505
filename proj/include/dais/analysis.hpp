// SPDX-License-Identifier: Apache-2.0
//
// Experiment orchestration: SNR sweeps of Bob's CRB against Eve's MCRB, the
// low-noise threshold search, and CSV/JSON serialization of sweep rows.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dais/fisher.hpp"

namespace dais {

enum class Baseline { None, Dais, Fpi };

std::string_view to_string(Baseline baseline);

struct ExperimentConfig {
  Vec2 alice_pos = Vec2::Zero();
  Vec2 bob_pos = Vec2::Zero();
  Vec2 eve_pos = Vec2::Zero();
  std::vector<Vec2> scatterer_pos;
  SystemConfig system;
  SpoofShift shift;
  std::vector<double> snr_grid_db;
  std::vector<std::uint64_t> seeds;
  Baseline baseline = Baseline::Dais;
  SpoofShift fpi_params;  // only meaningful for Baseline::Fpi
  std::string output_path;

  Scene bob_scene() const { return {alice_pos, bob_pos, scatterer_pos}; }
  Scene eve_scene() const { return {alice_pos, eve_pos, scatterer_pos}; }
  /// Shift actually applied by Alice (zero without a spoofing precoder).
  SpoofShift applied_shift() const { return baseline == Baseline::Dais ? shift : SpoofShift{}; }

  /// Scene, system and shift checks plus at least one seed and a strictly increasing grid.
  void validate() const;
};

ExperimentConfig paper_v_preset();

/// Closed-form inverse of the SNR definition.
double calibrate_sigma_for_snr(double target_snr_db, const Eigen::MatrixXcd& mean);

/// Bounds for one pilot realization at unit noise; both CRBs scale with sigma^2.
struct SeedBounds {
  std::uint64_t seed = 0;
  double signal_power = 0.0;  // sum |u_bar|^2 of Eve's noise-free mean
  Eigen::MatrixXd crb_unit;   // Xi at sigma = 1
  Eigen::MatrixXd psi1_unit;  // Psi^(i) at sigma = 1
  Eigen::MatrixXd psi2;
  double mismatch_distance = 0.0;
  WrapCase wrap;
  bool ill_conditioned = false;
  int n_samples = 0;          // N * G

  double sigma_for_snr(double snr_db) const;
  double snr_for_sigma(double sigma) const;
  double rmse_bob(double sigma) const;
  double rmse_eve(double sigma) const;
  double trace_xi(double sigma) const { return sigma * sigma * crb_unit.trace(); }
  double trace_psi(double sigma) const { return sigma * sigma * psi1_unit.trace() + psi2.trace(); }
};

SeedBounds evaluate_seed(const ExperimentConfig& config, std::uint64_t seed);

struct SweepRow {
  double snr_db = 0.0;
  double sigma = 0.0;
  double rmse_bob_m = 0.0;
  double rmse_eve_m = 0.0;
  double trace_psi1 = 0.0;
  double trace_psi2 = 0.0;
  double mismatch_distance_m = 0.0;
  std::string case_label;
  double gap_db = 0.0;
  std::optional<std::string> error;
};

/// Seed-median row at one SNR point.
SweepRow aggregate_row(const std::vector<SeedBounds>& seeds, double snr_db);

/// One row per SNR grid point, each the median over the configured seeds.
/// Failures become rows with `error` set.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config);

struct Sigma0Options {
  double sigma_min = 0.0;  // 0: sigma at +60 dB SNR for the first seed
  double sigma_max = 0.0;  // 0: sigma at -60 dB SNR for the first seed
  int grid_points = 50;
  double relative_width = 1e-3;
};

struct Sigma0Result {
  double sigma0 = 0.0;
  double snr_db = 0.0;          // SNR at sigma0 for the first seed
  bool at_bracket_edge = false; // inequality held on the whole bracket
  bool monotone_on_grid = true; // at most one sign change of the margin on the grid
  std::vector<double> grid_sigma;
  std::vector<double> grid_margin;  // trace(Psi) - trace(Xi)
};

/// Largest sigma in the bracket below which trace(Psi) >= trace(Xi) on the grid.
Sigma0Result find_sigma0(const ExperimentConfig& config, const Sigma0Options& options = {});

/// Seed-median of trace(Psi) - trace(Xi) at sigma.
double trace_margin(const std::vector<SeedBounds>& seeds, double sigma);

double median(std::vector<double> values);

inline constexpr const char* kCsvHeader =
    "snr_db,sigma,rmse_bob_m,rmse_eve_m,trace_psi1,trace_psi2,mismatch_distance_m,case_label,gap_db";

/// 9 significant digits, as used in every serialized number.
std::string format_number(double value);

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void write_json(const std::vector<SweepRow>& rows, std::ostream& out);

}  // namespace dais
