// SPDX-License-Identifier: Apache-2.0
#include "dais/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "dais/error.hpp"

namespace dais {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorCode::InvalidConfig, message); }

double parse_number(std::string_view text, const std::string& key) {
  text = trim(text);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
    fail("key '" + key + "': cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view text, const std::string& key) {
  text = trim(text);
  int value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
    fail("key '" + key + "': cannot parse integer '" + std::string(text) + "'");
  }
  return value;
}

Vec2 parse_point(std::string_view text, const std::string& key) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) fail("key '" + key + "': expected 'x, y'");
  return Vec2(parse_number(parts[0], key), parse_number(parts[1], key));
}

std::vector<Vec2> parse_points(std::string_view text, const std::string& key) {
  std::vector<Vec2> points;
  if (trim(text).empty()) return points;
  for (auto part : split(text, ';')) points.push_back(parse_point(part, key));
  return points;
}

std::vector<double> parse_grid(std::string_view text, const std::string& key) {
  std::vector<double> grid;
  text = trim(text);
  if (text.empty()) return grid;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) fail("key '" + key + "': expected 'start:step:stop'");
    const double start = parse_number(parts[0], key);
    const double step = parse_number(parts[1], key);
    const double stop = parse_number(parts[2], key);
    if (!(step > 0.0)) fail("key '" + key + "': step must be positive");
    const int count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (int i = 0; i < count; ++i) grid.push_back(start + i * step);
    return grid;
  }
  for (auto part : split(text, ',')) grid.push_back(parse_number(part, key));
  return grid;
}

std::vector<std::uint64_t> parse_seeds(std::string_view text, const std::string& key) {
  std::vector<std::uint64_t> seeds;
  text = trim(text);
  if (text.empty()) return seeds;
  auto one = [&](std::string_view s) {
    s = trim(s);
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || end != s.data() + s.size()) {
      fail("key '" + key + "': cannot parse seed '" + std::string(s) + "'");
    }
    return v;
  };
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) fail("key '" + key + "': expected 'first:last'");
    const std::uint64_t first = one(parts[0]);
    const std::uint64_t last = one(parts[1]);
    if (last < first) fail("key '" + key + "': empty seed range");
    for (std::uint64_t s = first; s <= last; ++s) seeds.push_back(s);
    return seeds;
  }
  for (auto part : split(text, ',')) seeds.push_back(one(part));
  return seeds;
}

Baseline parse_baseline(std::string_view text, const std::string& key) {
  text = trim(text);
  if (text == "none") return Baseline::None;
  if (text == "dais") return Baseline::Dais;
  if (text == "fpi") return Baseline::Fpi;
  fail("key '" + key + "': expected none, dais or fpi");
}

}  // namespace

double parse_angle(std::string_view text) {
  text = trim(text);
  if (text.starts_with("pi:")) return kPi * parse_number(text.substr(3), "angle");
  return parse_number(text, "angle");
}

Scenario preset_scenario(std::string_view name) {
  if (name != "paper-v") fail("unknown preset '" + std::string(name) + "'");
  return Scenario{paper_v_preset(), std::nullopt};
}

Scenario parse_scenario(std::string_view text) {
  Scenario scenario;
  ExperimentConfig& cfg = scenario.experiment;
  cfg.seeds = {0};
  std::string section;
  bool seen_section = false;
  std::optional<double> delta_tau_samples;
  std::optional<double> fpi_tau_samples;

  std::istringstream lines{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(lines, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail("line " + std::to_string(line_no) + ": malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "scene" && section != "system" && section != "spoof" && section != "seeds" &&
          section != "baseline" && section != "output") {
        fail("unknown section '" + section + "'");
      }
      seen_section = true;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const std::string where = section.empty() ? key : section + "." + key;

    if (section.empty()) {
      if (key != "preset") fail("unknown key '" + key + "'");
      if (seen_section) fail("preset must precede all sections");
      scenario = preset_scenario(value);
      delta_tau_samples = cfg.shift.delta_tau / cfg.system.sample_period_s();
      continue;
    }

    if (section == "scene") {
      if (key == "alice") cfg.alice_pos = parse_point(value, where);
      else if (key == "bob") cfg.bob_pos = parse_point(value, where);
      else if (key == "eve") cfg.eve_pos = parse_point(value, where);
      else if (key == "scatterers") cfg.scatterer_pos = parse_points(value, where);
      else fail("unknown key '" + where + "'");
    } else if (section == "system") {
      SystemConfig& sys = cfg.system;
      if (key == "n_antennas") sys.n_antennas = parse_int(value, where);
      else if (key == "n_subcarriers") sys.n_subcarriers = parse_int(value, where);
      else if (key == "n_symbols") sys.n_symbols = parse_int(value, where);
      else if (key == "carrier_hz") sys.carrier_hz = parse_number(value, where);
      else if (key == "bandwidth_hz") sys.bandwidth_hz = parse_number(value, where);
      else if (key == "light_speed_mps") sys.light_speed_mps = parse_number(value, where);
      else if (key == "noise_std") scenario.noise_std = parse_number(value, where);
      else if (key == "snr_db") cfg.snr_grid_db = parse_grid(value, where);
      else fail("unknown key '" + where + "'");
    } else if (section == "spoof") {
      if (key == "delta_tau_samples") delta_tau_samples = parse_number(value, where);
      else if (key == "delta_theta") cfg.shift.delta_theta = parse_angle(value);
      else fail("unknown key '" + where + "'");
    } else if (section == "seeds") {
      if (key == "seeds") cfg.seeds = parse_seeds(value, where);
      else fail("unknown key '" + where + "'");
    } else if (section == "baseline") {
      if (key == "kind") cfg.baseline = parse_baseline(value, where);
      else if (key == "fpi_delta_tau_samples") fpi_tau_samples = parse_number(value, where);
      else if (key == "fpi_delta_theta") cfg.fpi_params.delta_theta = parse_angle(value);
      else fail("unknown key '" + where + "'");
    } else if (section == "output") {
      if (key == "path") cfg.output_path = std::string(value);
      else fail("unknown key '" + where + "'");
    }
  }

  // Sample-period multiples resolve against the final bandwidth.
  if (delta_tau_samples) cfg.shift.delta_tau = *delta_tau_samples * cfg.system.sample_period_s();
  if (fpi_tau_samples) cfg.fpi_params.delta_tau = *fpi_tau_samples * cfg.system.sample_period_s();
  return scenario;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace dais
