#include "qshift/experiment.hpp"

#include <stdexcept>
#include <string>

namespace qshift::hetsim {

std::vector<PowerPointResult> run_experiment(const SimConfig& cfg,
                                             const std::vector<double>& powers,
                                             const PhaseNoiseProcess& master_noise,
                                             const PhaseNoiseProcess& residual,
                                             const SweepSettings& sweep,
                                             const DetectorSettings& detector,
                                             const AnalysisSettings& analysis,
                                             const BeamShiftModel& shift_model,
                                             std::vector<BeatRecord>* keep_records) {
  if (powers.empty()) {
    throw std::invalid_argument("run_experiment: power list is empty");
  }
  for (double p : powers) {
    if (!(p >= 1e-5 && p <= 1e-2)) {
      throw std::invalid_argument("run_experiment: power " + std::to_string(p) +
                                  " W outside the sane sweep range [1e-5, 1e-2] W");
    }
  }
  if (sweep.mode == SweepSettings::Attenuation::slave_only &&
      !(sweep.master_power >= 1e-5 && sweep.master_power <= 1e-2)) {
    throw std::invalid_argument("run_experiment: fixed master power outside [1e-5, 1e-2] W");
  }

  std::vector<PowerPointResult> results;
  results.reserve(powers.size());
  for (std::size_t i = 0; i < powers.size(); ++i) {
    const double slave_power = powers[i];
    const double master_power =
        sweep.mode == SweepSettings::Attenuation::equal ? slave_power : sweep.master_power;

    const std::string context =
        "power point " + std::to_string(slave_power * 1e3) + " mW: ";
    try {
      // Two substreams per power point (master Wiener, lock residual).
      const LockedPair pair = lock_pair(cfg, master_power, slave_power, master_noise, residual,
                                        shift_model, 2 * i);
      const BeatRecord rec = photodetect(pair.master, pair.slave, detector.gain,
                                         detector.matching_efficiency, detector.dc_block);
      const spectral::Periodogram psd = spectral::periodogram(rec, analysis.window);
      results.push_back({slave_power, spectral::peak_frequency(psd, analysis.search_band)});
      if (keep_records != nullptr) {
        keep_records->push_back(rec);
      }
    } catch (const NoPeakError& e) {
      throw NoPeakError(context + e.what());
    } catch (const RangeError& e) {
      throw RangeError(context + e.what());
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(context + e.what());
    }
  }
  return results;
}

}  // namespace qshift::hetsim
