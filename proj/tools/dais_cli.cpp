// SPDX-License-Identifier: Apache-2.0
//
// dais: command-line front end for the spoofing bound toolkit.
// stdout carries "key: value" lines; human-readable notes go to stderr.
// Exit codes: 0 success, 2 validation error, 3 numerical degeneracy.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dais/analysis.hpp"
#include "dais/error.hpp"
#include "dais/scenario.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string scenario_path;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string format = "csv";
  std::optional<double> snr_db;
  std::optional<double> delta_tau_samples;
  std::string delta_theta;
  bool bob_mode = false;
};

void emit(const std::string& key, const std::string& value) { std::cout << key << ": " << value << '\n'; }
void emit(const std::string& key, double value) { emit(key, dais::format_number(value)); }

dais::Scenario resolve(const Options& opt) {
  if (!opt.scenario_path.empty() && !opt.preset.empty()) {
    throw dais::Error(dais::ErrorCode::InvalidConfig, "use either --scenario or --preset, not both");
  }
  dais::Scenario sc;
  if (!opt.scenario_path.empty()) sc = dais::load_scenario(opt.scenario_path);
  else if (!opt.preset.empty()) sc = dais::preset_scenario(opt.preset);
  else throw dais::Error(dais::ErrorCode::InvalidConfig, "a --scenario file or --preset is required");

  auto& cfg = sc.experiment;
  if (opt.seed) cfg.seeds = {*opt.seed};
  if (opt.delta_tau_samples) cfg.shift.delta_tau = *opt.delta_tau_samples * cfg.system.sample_period_s();
  if (!opt.delta_theta.empty()) cfg.shift.delta_theta = dais::parse_angle(opt.delta_theta);
  if (!opt.out_path.empty()) cfg.output_path = opt.out_path;
  if (cfg.system.narrowband_violated()) {
    std::cerr << "warning: bandwidth is not small against the carrier (B >= carrier/10)\n";
  }
  return sc;
}

std::vector<dais::SeedBounds> all_seeds(const dais::ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<dais::SeedBounds> out;
  for (auto seed : cfg.seeds) out.push_back(dais::evaluate_seed(cfg, seed));
  for (const auto& s : out) {
    if (s.ill_conditioned) std::cerr << "warning: seed " << s.seed << " bound is ill-conditioned\n";
  }
  return out;
}

// Per-seed noise level: the scenario's fixed noise_std when given, else calibrated to the SNR.
double seed_sigma(const dais::Scenario& sc, const Options& opt, const dais::SeedBounds& s) {
  if (sc.noise_std && !opt.snr_db) return *sc.noise_std;
  return s.sigma_for_snr(opt.snr_db.value_or(0.0));
}

int cmd_pseudo_true(const dais::Scenario& sc) {
  const auto& cfg = sc.experiment;
  cfg.validate();
  const dais::Scene eve = cfg.eve_scene();
  const auto shifted = dais::apply_dais_shift(dais::toa_aod_from_scene(eve, cfg.system),
                                              cfg.applied_shift(), cfg.system);
  const auto pseudo = dais::pseudo_true_scene(shifted, cfg.eve_pos, cfg.system);
  const double distance = (pseudo.alice_pos - cfg.alice_pos).norm();
  emit("case", pseudo.wrap.label());
  emit("alice_x", pseudo.alice_pos.x());
  emit("alice_y", pseudo.alice_pos.y());
  for (std::size_t k = 0; k < pseudo.scatterer_pos.size(); ++k) {
    emit("scatterer_" + std::to_string(k + 1) + "_x", pseudo.scatterer_pos[k].x());
    emit("scatterer_" + std::to_string(k + 1) + "_y", pseudo.scatterer_pos[k].y());
  }
  emit("mismatch_distance_m", distance);
  std::cerr << "pseudo-true Alice is " << distance << " m from the true position (" << pseudo.wrap.label()
            << ")\n";
  return 0;
}

int cmd_crb(const dais::Scenario& sc, const Options& opt) {
  const auto seeds = all_seeds(sc.experiment);
  std::vector<double> sigma, rmse, trace;
  for (const auto& s : seeds) {
    const double sg = seed_sigma(sc, opt, s);
    sigma.push_back(sg);
    rmse.push_back(s.rmse_bob(sg));
    trace.push_back(s.trace_xi(sg));
  }
  emit("seeds", std::to_string(seeds.size()));
  emit("sigma", dais::median(sigma));
  emit("snr_db", seeds.front().snr_for_sigma(sigma.front()));
  emit("rmse_bob_m", dais::median(rmse));
  emit("trace_xi", dais::median(trace));
  std::cerr << "Bob's CRB RMSE (median over " << seeds.size() << " seeds): " << dais::median(rmse) << " m\n";
  return 0;
}

int cmd_mcrb(const dais::Scenario& sc, const Options& opt) {
  const auto seeds = all_seeds(sc.experiment);
  std::vector<double> sigma, rmse, psi1;
  for (const auto& s : seeds) {
    const double sg = seed_sigma(sc, opt, s);
    sigma.push_back(sg);
    rmse.push_back(s.rmse_eve(sg));
    psi1.push_back(sg * sg * s.psi1_unit.trace());
  }
  emit("seeds", std::to_string(seeds.size()));
  emit("case", seeds.front().wrap.label());
  emit("sigma", dais::median(sigma));
  emit("snr_db", seeds.front().snr_for_sigma(sigma.front()));
  emit("rmse_eve_m", dais::median(rmse));
  emit("trace_psi1", dais::median(psi1));
  emit("trace_psi2", seeds.front().psi2.trace());
  emit("mismatch_distance_m", seeds.front().mismatch_distance);
  std::cerr << "Eve's MCRB RMSE (median over " << seeds.size() << " seeds): " << dais::median(rmse) << " m\n";
  return 0;
}

int cmd_sweep(const dais::Scenario& sc, const Options& opt) {
  if (opt.format != "csv" && opt.format != "json") {
    throw dais::Error(dais::ErrorCode::InvalidConfig, "--format must be csv or json");
  }
  const auto rows = dais::run_sweep(sc.experiment);
  int errors = 0;
  for (const auto& r : rows) errors += r.error ? 1 : 0;

  auto write = [&](std::ostream& os) {
    if (opt.format == "json") dais::write_json(rows, os);
    else dais::write_csv(rows, os);
  };
  const std::string& path = sc.experiment.output_path;
  if (path.empty()) {
    write(std::cout);
  } else {
    std::ofstream out(path);
    if (!out) throw dais::Error(dais::ErrorCode::InvalidConfig, "cannot write '" + path + "'");
    write(out);
    emit("rows", std::to_string(rows.size()));
    emit("errors", std::to_string(errors));
    emit("out", path);
  }
  std::cerr << "sweep: " << rows.size() << " rows, " << errors << " with errors\n";
  return 0;
}

int cmd_rank_check(const dais::Scenario& sc, const Options& opt) {
  const auto& cfg = sc.experiment;
  cfg.validate();
  dais::SystemConfig sys = cfg.system;
  sys.noise_std = sc.noise_std.value_or(1.0);
  const dais::Scene eve = cfg.eve_scene();
  auto params = dais::toa_aod_from_scene(eve, sys);
  params.gains = dais::free_space_gains(eve, sys);
  const auto pilots = dais::generate_pilots(cfg.seeds.front(), sys);
  const auto report = opt.bob_mode ? dais::channel_fim_rank(params, cfg.shift, pilots, sys)
                                   : dais::augmented_fim_rank(params, cfg.shift, pilots, sys);
  emit("mode", opt.bob_mode ? "known-shift" : "unknown-shift");
  emit("unknowns", std::to_string(report.fim.rows()));
  emit("ratio", report.ratio);
  emit("threshold", dais::kSingularRatio);
  emit("verdict", report.singular() ? "singular" : "nonsingular");
  std::cerr << "equilibrated FIM eigenvalue ratio " << report.ratio << " -> "
            << (report.singular() ? "singular" : "nonsingular") << '\n';
  return 0;
}

int cmd_sigma0(const dais::Scenario& sc) {
  const auto result = dais::find_sigma0(sc.experiment);
  emit("sigma0", result.sigma0);
  emit("snr_db", result.snr_db);
  emit("at_bracket_edge", result.at_bracket_edge ? "true" : "false");
  emit("monotone_on_grid", result.monotone_on_grid ? "true" : "false");
  std::cerr << "trace(Psi) >= trace(Xi) for sigma <= " << result.sigma0 << " (SNR >= " << result.snr_db
            << " dB)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delay-angle spoofing: localization bounds for the legitimate and eavesdropping receivers"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--scenario", opt.scenario_path, "Scenario file");
  app.add_option("--preset", opt.preset, "Built-in scenario (paper-v)");
  app.add_option("--seed", opt.seed, "Use a single pilot seed");
  app.add_option("--out", opt.out_path, "Output path for sweep results");
  app.add_option("--format", opt.format, "Sweep output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--snr-db", opt.snr_db, "Operating SNR for crb/mcrb (default 0 dB)");
  app.add_option("--delta-tau-samples", opt.delta_tau_samples, "Override the delay shift, in units of Ts");
  app.add_option("--delta-theta", opt.delta_theta, "Override the angle shift (radians, or pi:<x>)");

  auto* pseudo = app.add_subcommand("pseudo-true", "Pseudo-true positions seen by the eavesdropper");
  auto* crb = app.add_subcommand("crb", "Bob's localization CRB");
  auto* mcrb = app.add_subcommand("mcrb", "Eve's misspecified CRB");
  auto* sweep = app.add_subcommand("sweep", "SNR sweep of both bounds");
  auto* rank = app.add_subcommand("rank-check", "Singularity of the FIM with unknown shift");
  rank->add_flag("--bob-mode", opt.bob_mode, "Treat the shift as known");
  auto* sigma0 = app.add_subcommand("sigma0", "Noise threshold below which Eve's bound exceeds Bob's");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    const dais::Scenario sc = resolve(opt);
    if (pseudo->parsed()) return cmd_pseudo_true(sc);
    if (crb->parsed()) return cmd_crb(sc, opt);
    if (mcrb->parsed()) return cmd_mcrb(sc, opt);
    if (sweep->parsed()) return cmd_sweep(sc, opt);
    if (rank->parsed()) return cmd_rank_check(sc, opt);
    if (sigma0->parsed()) return cmd_sigma0(sc);
  } catch (const dais::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.numerical() ? kExitNumerical : kExitValidation;
  }
  return kExitValidation;
}
