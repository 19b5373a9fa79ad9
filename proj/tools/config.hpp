#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qshift/experiment.hpp"
#include "qshift/shiftmodel.hpp"
#include "qshift/spectral.hpp"

namespace qshift::runner {

/// Shortest round-trip decimal form of a double; used everywhere a number
/// is echoed (config text, CSV tables) so repeated runs are byte-identical.
std::string format_double(double v);

/// Flat key = value experiment configuration. Keys carry their unit in the
/// name; unknown keys are rejected.
struct ExperimentConfig {
  // deformation
  double lambda = 0.0;

  // lasers
  double wavelength_nm = 850.0;
  double linewidth_khz = 50.0;
  std::vector<double> powers_mw = {0.1, 0.5, 1.0, 2.0};
  std::string photon_method = "inverse_two_pi_linewidth";
  std::optional<double> coherence_time_us;  // required iff photon_method = explicit_time

  // simulation
  double sample_rate_hz = 1e6;
  double duration_s = 0.1;
  double beat_if_hz = 1e5;
  std::optional<std::uint64_t> seed;  // required by simulate; no wall-clock fallback
  double matching_efficiency = 1.0;
  double detector_gain_v_per_w = 5.0;
  double residual_variance_rad2 = 4e-3;
  double loop_bandwidth_khz = 10.0;
  bool dc_block = false;
  std::string attenuation = "equal";  // equal | slave_only
  double master_power_mw = 0.1;       // fixed master power for slave_only

  // analysis
  std::string window = "hann";
  std::optional<std::pair<double, double>> search_band_hz;

  // outputs
  std::string output_dir = ".";
  bool save_records = false;

  static ExperimentConfig load(const std::filesystem::path& path);
  static ExperimentConfig from_text(const std::string& text);

  /// Applies one key/value pair; FormatError on unknown keys or unparseable
  /// values.
  void apply(const std::string& key, const std::string& value);

  /// Range and enum checks across all fields; fills the default search band
  /// (beat_if +- 5 kHz) when none was given.
  void finalize();

  /// Alphabetical "key = value" echo of the full resolved configuration;
  /// feeding it back through from_text reproduces this config exactly.
  std::string canonical_text() const;

  // typed views
  shiftmodel::LaserSource laser(double power_w) const;
  shiftmodel::PhotonMethod method() const;
  std::optional<double> coherence_time_s() const;
  hetsim::SimConfig sim_config() const;  // requires seed
  hetsim::SweepSettings sweep_settings() const;
  hetsim::DetectorSettings detector_settings() const;
  hetsim::AnalysisSettings analysis_settings() const;
  std::vector<double> powers_w_sorted() const;
};

}  // namespace qshift::runner
