#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "qshift/errors.hpp"

namespace qshift::hetsim {

/// Time-series parameters of one simulated run. The beat is generated
/// directly at a sampleable intermediate frequency; the physical beat is
/// notionally down-converted to it, which preserves Hz-level offsets.
struct SimConfig {
  double sample_rate;  // Hz
  double duration;     // s
  double beat_if;      // Hz, the simulated intermediate frequency
  std::uint64_t seed;
};

/// Validates Nyquist, positivity and the 2^28 sample budget; returns the
/// sample count.
std::size_t sample_count(const SimConfig& cfg);

/// Phase-noise model of one laser or of the lock residual.
struct PhaseNoiseProcess {
  enum class Kind { wiener_free_running, ou_locked_residual };

  Kind kind;
  double linewidth = 0.0;          // Hz FWHM (wiener): increment variance 2*pi*linewidth*dt
  double residual_variance = 0.0;  // rad^2 (ou): stationary variance
  double loop_bandwidth = 0.0;     // Hz (ou): correlation time 1/(2*pi*loop_bandwidth)

  static PhaseNoiseProcess wiener(double linewidth_hz);
  static PhaseNoiseProcess locked_residual(double variance_rad2, double loop_bandwidth_hz);
};

/// Complex baseband envelope of one beam. The amplitude is deterministic
/// (sqrt(power)); all randomness lives in the phase.
struct OpticalFieldSeries {
  std::vector<std::complex<double>> samples;
  double sample_rate;     // Hz
  double carrier_offset;  // Hz, includes any injected shift
  double power;           // W
  std::uint64_t seed_used;
};

/// Photodetector output in volts.
struct BeatRecord {
  std::vector<double> samples;  // V
  double sample_rate;           // Hz
  double gain;                  // V/W
  double matching_efficiency;   // [0, 1]
  std::uint64_t seed;
  double power;                 // W, swept-beam power the record was taken at
};

/// samples[k] = sqrt(power) * exp(i(2*pi*(carrier_offset+shift)*k/fs + phi_k))
/// with phi_k drawn from `noise` on substream `stream` of cfg.seed.
OpticalFieldSeries synth_field(const SimConfig& cfg, double power, double carrier_offset,
                               const PhaseNoiseProcess& noise, double shift_hz = 0.0,
                               std::uint64_t stream = 0);

struct LockedPair {
  OpticalFieldSeries master;
  OpticalFieldSeries slave;
};

/// Per-beam carrier shift in Hz as a function of beam power; identity
/// (no shift) when empty.
using BeamShiftModel = std::function<double(double power_w)>;

/// Offset phase lock: the slave reuses the master's phase realization plus
/// the 2*pi*beat_if*t ramp and an OU residual, so free-running master noise
/// is common mode and cancels in the beat. When a shift model is given each
/// beam's carrier moves by the shift for its own power.
LockedPair lock_pair(const SimConfig& cfg, double master_power, double slave_power,
                     const PhaseNoiseProcess& master_noise, const PhaseNoiseProcess& residual,
                     const BeamShiftModel& shift_model = {}, std::uint64_t stream_base = 0);

/// v[k] = gain * (P_a + P_b + 2 sqrt(eta P_a P_b) cos(dphi_k)); the DC term
/// is subtracted when dc_block is set.
BeatRecord photodetect(const OpticalFieldSeries& a, const OpticalFieldSeries& b, double gain,
                       double matching_efficiency, bool dc_block = false);

}  // namespace qshift::hetsim
