#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qshift/hetsim.hpp"
#include "qshift/spectral.hpp"

namespace qshift::hetsim {

/// How the power sweep drives the two beams. `equal` attenuates both beams
/// to the sweep value (per-beam shifts then cancel in the beat);
/// `slave_only` sweeps the slave while the master stays at master_power,
/// which makes an injected shift observable.
struct SweepSettings {
  enum class Attenuation { equal, slave_only };

  Attenuation mode = Attenuation::equal;
  double master_power = 0.0;  // W, used by slave_only
};

struct DetectorSettings {
  double gain = 5.0;                 // V/W
  double matching_efficiency = 1.0;  // [0, 1]
  bool dc_block = false;
};

struct AnalysisSettings {
  spectral::Window window = spectral::Window::hann;
  std::optional<std::pair<double, double>> search_band;  // Hz
};

struct PowerPointResult {
  double power;  // W, swept value
  spectral::PeakEstimate peak;
};

/// Full measurement chain for one seed: per sweep power, build the locked
/// pair, photodetect, estimate the beat peak. Every power point draws from
/// its own substream of cfg.seed, so results do not depend on evaluation
/// order. Powers must lie in [1e-5, 1e-2] W. When `keep_records` is given
/// the per-power beat records are appended to it.
std::vector<PowerPointResult> run_experiment(const SimConfig& cfg,
                                             const std::vector<double>& powers,
                                             const PhaseNoiseProcess& master_noise,
                                             const PhaseNoiseProcess& residual,
                                             const SweepSettings& sweep,
                                             const DetectorSettings& detector,
                                             const AnalysisSettings& analysis,
                                             const BeamShiftModel& shift_model = {},
                                             std::vector<BeatRecord>* keep_records = nullptr);

}  // namespace qshift::hetsim
