#include "trispin/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace trispin::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view text, std::string_view key, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("line " + std::to_string(line) + ": invalid value for '" + std::string(key) + "': '" +
                      std::string(text) + "'");
  }
  return value;
}

}  // namespace

engine::SimulationSettings ScenarioConfig::settings(engine::PulseMode mode) const {
  engine::SimulationSettings s;
  s.mode = mode;
  s.proton_amplitude_hz = rf_proton_hz;
  s.heteronucleus_amplitude_hz = rf_hetero_hz;
  if (mode == engine::PulseMode::realistic) s.inhomogeneity = engine::RfInhomogeneity{rf_fwhm, rf_grid_points};
  return s;
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + std::string(key) + "'");
    }
    const auto real = [&] { return parse_number<double>(value, key, line_no); };

    if (key == "j12") cfg.system.j12 = real();
    else if (key == "j23") cfg.system.j23 = real();
    else if (key == "j13") cfg.system.j13 = real();
    else if (key == "nu1") cfg.system.offsets[0] = real();
    else if (key == "nu2") cfg.system.offsets[1] = real();
    else if (key == "nu3") cfg.system.offsets[2] = real();
    else if (key == "design_j") cfg.design_j_hz = real();
    else if (key == "rf_proton_hz") cfg.rf_proton_hz = real();
    else if (key == "rf_hetero_hz") cfg.rf_hetero_hz = real();
    else if (key == "rf_fwhm") cfg.rf_fwhm = real();
    else if (key == "rf_grid_points") cfg.rf_grid_points = parse_number<int>(value, key, line_no);
    else if (key == "dante_n") cfg.dante_n = parse_number<int>(value, key, line_no);
    else throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
  }

  try {
    cfg.system.validate();
    cfg.settings(engine::PulseMode::realistic).validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(cfg.design_j_hz > 0.0)) throw ConfigError("design_j must be positive");
  if (cfg.dante_n < 0 || cfg.dante_n % 4 != 0) throw ConfigError("dante_n must be a non-negative multiple of 4");
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace trispin::cli
