#include "config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qshift/errors.hpp"
#include "qshift/qalgebra.hpp"

namespace qshift::runner {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  double v = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw FormatError("config key '" + key + "': cannot parse '" + value + "' as a number");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw FormatError("config key '" + key + "': cannot parse '" + value +
                      "' as an unsigned integer");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw FormatError("config key '" + key + "': expected true or false, got '" + value + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) {
      throw FormatError("config key '" + key + "': empty list element");
    }
    out.push_back(parse_double(key, item));
  }
  if (out.empty()) {
    throw FormatError("config key '" + key + "': empty list");
  }
  return out;
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += format_double(xs[i]);
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open config file " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_text(buffer.str());
}

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
  ExperimentConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw FormatError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    cfg.apply(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void ExperimentConfig::apply(const std::string& key, const std::string& value) {
  if (key == "lambda") {
    lambda = parse_double(key, value);
  } else if (key == "wavelength_nm") {
    wavelength_nm = parse_double(key, value);
  } else if (key == "linewidth_khz") {
    linewidth_khz = parse_double(key, value);
  } else if (key == "powers_mw") {
    powers_mw = parse_list(key, value);
  } else if (key == "photon_method") {
    photon_method = value;
  } else if (key == "coherence_time_us") {
    coherence_time_us = parse_double(key, value);
  } else if (key == "sample_rate_hz") {
    sample_rate_hz = parse_double(key, value);
  } else if (key == "duration_s") {
    duration_s = parse_double(key, value);
  } else if (key == "beat_if_hz") {
    beat_if_hz = parse_double(key, value);
  } else if (key == "seed") {
    seed = parse_u64(key, value);
  } else if (key == "matching_efficiency") {
    matching_efficiency = parse_double(key, value);
  } else if (key == "detector_gain_v_per_w") {
    detector_gain_v_per_w = parse_double(key, value);
  } else if (key == "residual_variance_rad2") {
    residual_variance_rad2 = parse_double(key, value);
  } else if (key == "loop_bandwidth_khz") {
    loop_bandwidth_khz = parse_double(key, value);
  } else if (key == "dc_block") {
    dc_block = parse_bool(key, value);
  } else if (key == "attenuation") {
    attenuation = value;
  } else if (key == "master_power_mw") {
    master_power_mw = parse_double(key, value);
  } else if (key == "window") {
    window = value;
  } else if (key == "search_band_hz") {
    const auto band = parse_list(key, value);
    if (band.size() != 2) {
      throw FormatError("config key 'search_band_hz': expected two values lo, hi");
    }
    search_band_hz = std::make_pair(band[0], band[1]);
  } else if (key == "output_dir") {
    output_dir = value;
  } else if (key == "save_records") {
    save_records = parse_bool(key, value);
  } else {
    throw FormatError("unknown config key '" + key + "'");
  }
}

void ExperimentConfig::finalize() {
  // enum-like strings
  if (attenuation != "equal" && attenuation != "slave_only") {
    throw FormatError("config key 'attenuation': expected equal or slave_only, got '" +
                      attenuation + "'");
  }
  spectral::window_from_string(window);               // throws on junk
  shiftmodel::photon_method_from_string(photon_method);
  if (method() == shiftmodel::PhotonMethod::explicit_time && !coherence_time_us) {
    throw FormatError("photon_method = explicit_time requires coherence_time_us");
  }

  // construction of the typed views performs the physical range checks
  laser(1e-3);
  if (!search_band_hz) {
    search_band_hz = std::make_pair(std::max(0.0, beat_if_hz - 5e3), beat_if_hz + 5e3);
  }
  if (!(search_band_hz->first < search_band_hz->second) ||
      !(search_band_hz->second < sample_rate_hz / 2.0)) {
    throw FormatError("search_band_hz must satisfy lo < hi < sample_rate/2");
  }
  if (powers_mw.empty()) {
    throw FormatError("powers_mw must not be empty");
  }
}

std::string ExperimentConfig::canonical_text() const {
  std::string out;
  out += "attenuation = " + attenuation + "\n";
  out += "beat_if_hz = " + format_double(beat_if_hz) + "\n";
  if (coherence_time_us) {
    out += "coherence_time_us = " + format_double(*coherence_time_us) + "\n";
  }
  out += "dc_block = " + std::string(dc_block ? "true" : "false") + "\n";
  out += "detector_gain_v_per_w = " + format_double(detector_gain_v_per_w) + "\n";
  out += "duration_s = " + format_double(duration_s) + "\n";
  out += "lambda = " + format_double(lambda) + "\n";
  out += "linewidth_khz = " + format_double(linewidth_khz) + "\n";
  out += "loop_bandwidth_khz = " + format_double(loop_bandwidth_khz) + "\n";
  out += "master_power_mw = " + format_double(master_power_mw) + "\n";
  out += "matching_efficiency = " + format_double(matching_efficiency) + "\n";
  out += "output_dir = " + output_dir + "\n";
  out += "photon_method = " + photon_method + "\n";
  out += "powers_mw = " + join(powers_mw) + "\n";
  out += "residual_variance_rad2 = " + format_double(residual_variance_rad2) + "\n";
  out += "sample_rate_hz = " + format_double(sample_rate_hz) + "\n";
  out += "save_records = " + std::string(save_records ? "true" : "false") + "\n";
  if (search_band_hz) {
    out += "search_band_hz = " + format_double(search_band_hz->first) + ", " +
           format_double(search_band_hz->second) + "\n";
  }
  if (seed) {
    out += "seed = " + std::to_string(*seed) + "\n";
  }
  out += "wavelength_nm = " + format_double(wavelength_nm) + "\n";
  out += "window = " + window + "\n";
  return out;
}

shiftmodel::LaserSource ExperimentConfig::laser(double power_w) const {
  return shiftmodel::LaserSource(wavelength_nm * 1e-9, power_w, linewidth_khz * 1e3);
}

shiftmodel::PhotonMethod ExperimentConfig::method() const {
  return shiftmodel::photon_method_from_string(photon_method);
}

std::optional<double> ExperimentConfig::coherence_time_s() const {
  if (coherence_time_us) return *coherence_time_us * 1e-6;
  return std::nullopt;
}

hetsim::SimConfig ExperimentConfig::sim_config() const {
  if (!seed) {
    throw FormatError("this command draws random numbers and needs an explicit seed "
                      "(set 'seed' in the config or pass --seed)");
  }
  return hetsim::SimConfig{sample_rate_hz, duration_s, beat_if_hz, *seed};
}

hetsim::SweepSettings ExperimentConfig::sweep_settings() const {
  hetsim::SweepSettings s;
  s.mode = attenuation == "slave_only" ? hetsim::SweepSettings::Attenuation::slave_only
                                       : hetsim::SweepSettings::Attenuation::equal;
  s.master_power = master_power_mw * 1e-3;
  return s;
}

hetsim::DetectorSettings ExperimentConfig::detector_settings() const {
  return {detector_gain_v_per_w, matching_efficiency, dc_block};
}

hetsim::AnalysisSettings ExperimentConfig::analysis_settings() const {
  hetsim::AnalysisSettings a;
  a.window = spectral::window_from_string(window);
  a.search_band = search_band_hz;
  return a;
}

std::vector<double> ExperimentConfig::powers_w_sorted() const {
  std::vector<double> w;
  w.reserve(powers_mw.size());
  for (double p : powers_mw) w.push_back(p * 1e-3);
  std::sort(w.begin(), w.end());
  return w;
}

}  // namespace qshift::runner
