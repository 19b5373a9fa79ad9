#include "qshift/hetsim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qshift/rng.hpp"

namespace qshift::hetsim {

namespace {

constexpr std::size_t max_samples = std::size_t{1} << 28;
constexpr double two_pi = 2.0 * std::numbers::pi;

// Phase realization phi_0..phi_{n-1} for one field.
std::vector<double> draw_phase(const PhaseNoiseProcess& noise, std::size_t n, double dt,
                               std::mt19937_64& rng) {
  std::vector<double> phi(n, 0.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  switch (noise.kind) {
    case PhaseNoiseProcess::Kind::wiener_free_running: {
      // Lorentzian line of FWHM = linewidth <-> phase increment variance
      // 2*pi*linewidth*dt per step.
      const double step_sigma = std::sqrt(two_pi * noise.linewidth * dt);
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        phi[k] = acc;
        acc += step_sigma * gauss(rng);
      }
      break;
    }
    case PhaseNoiseProcess::Kind::ou_locked_residual: {
      // Exact discretization of an OU process started in its stationary
      // state, so the variance equals residual_variance from sample 0.
      const double sigma = std::sqrt(noise.residual_variance);
      const double theta = two_pi * noise.loop_bandwidth;
      const double decay = std::exp(-theta * dt);
      const double kick = sigma * std::sqrt(1.0 - decay * decay);
      double x = sigma * gauss(rng);
      for (std::size_t k = 0; k < n; ++k) {
        phi[k] = x;
        x = decay * x + kick * gauss(rng);
      }
      break;
    }
  }
  return phi;
}

OpticalFieldSeries make_field(const SimConfig& cfg, double power, double carrier_hz,
                              const std::vector<double>& phase) {
  const std::size_t n = phase.size();
  const double amplitude = std::sqrt(power);
  const double dt = 1.0 / cfg.sample_rate;

  OpticalFieldSeries field;
  field.sample_rate = cfg.sample_rate;
  field.carrier_offset = carrier_hz;
  field.power = power;
  field.seed_used = cfg.seed;
  field.samples.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double arg = two_pi * carrier_hz * (k * dt) + phase[k];
    field.samples[k] = std::polar(amplitude, arg);
  }
  return field;
}

}  // namespace

std::size_t sample_count(const SimConfig& cfg) {
  if (!(cfg.sample_rate > 0.0) || !(cfg.duration > 0.0)) {
    throw std::invalid_argument("SimConfig: sample_rate and duration must be > 0");
  }
  if (!(cfg.beat_if >= 0.0) || !(cfg.beat_if < cfg.sample_rate / 2.0)) {
    throw std::invalid_argument("SimConfig: beat_if must satisfy 0 <= beat_if < sample_rate/2");
  }
  const double n = std::round(cfg.sample_rate * cfg.duration);
  if (n < 16.0 || n > static_cast<double>(max_samples)) {
    throw std::invalid_argument("SimConfig: sample count must lie in [16, 2^28]");
  }
  return static_cast<std::size_t>(n);
}

PhaseNoiseProcess PhaseNoiseProcess::wiener(double linewidth_hz) {
  if (!(linewidth_hz >= 0.0)) {
    throw std::invalid_argument("PhaseNoiseProcess: linewidth must be >= 0");
  }
  PhaseNoiseProcess p;
  p.kind = Kind::wiener_free_running;
  p.linewidth = linewidth_hz;
  return p;
}

PhaseNoiseProcess PhaseNoiseProcess::locked_residual(double variance_rad2,
                                                     double loop_bandwidth_hz) {
  if (!(variance_rad2 >= 0.0) || !(loop_bandwidth_hz > 0.0)) {
    throw std::invalid_argument(
        "PhaseNoiseProcess: residual variance must be >= 0 and loop bandwidth > 0");
  }
  PhaseNoiseProcess p;
  p.kind = Kind::ou_locked_residual;
  p.residual_variance = variance_rad2;
  p.loop_bandwidth = loop_bandwidth_hz;
  return p;
}

OpticalFieldSeries synth_field(const SimConfig& cfg, double power, double carrier_offset,
                               const PhaseNoiseProcess& noise, double shift_hz,
                               std::uint64_t stream) {
  const std::size_t n = sample_count(cfg);
  if (!(power >= 0.0)) {
    throw std::invalid_argument("synth_field: power must be >= 0");
  }
  const double carrier = carrier_offset + shift_hz;
  if (!(std::abs(carrier) < cfg.sample_rate / 2.0)) {
    throw std::invalid_argument("synth_field: carrier_offset + shift violates Nyquist");
  }
  auto rng = make_stream(cfg.seed, stream);
  const std::vector<double> phase = draw_phase(noise, n, 1.0 / cfg.sample_rate, rng);
  return make_field(cfg, power, carrier, phase);
}

LockedPair lock_pair(const SimConfig& cfg, double master_power, double slave_power,
                     const PhaseNoiseProcess& master_noise, const PhaseNoiseProcess& residual,
                     const BeamShiftModel& shift_model, std::uint64_t stream_base) {
  if (residual.kind != PhaseNoiseProcess::Kind::ou_locked_residual) {
    throw std::invalid_argument("lock_pair: residual must be an ou_locked_residual process");
  }
  const std::size_t n = sample_count(cfg);
  const double dt = 1.0 / cfg.sample_rate;

  const double master_shift = shift_model ? shift_model(master_power) : 0.0;
  const double slave_shift = shift_model ? shift_model(slave_power) : 0.0;
  if (!(std::abs(cfg.beat_if + slave_shift) < cfg.sample_rate / 2.0) ||
      !(std::abs(master_shift) < cfg.sample_rate / 2.0)) {
    throw std::invalid_argument("lock_pair: shifted carriers violate Nyquist");
  }

  // Independent substreams so a change of master linewidth never perturbs
  // the residual realization.
  auto master_rng = make_stream(cfg.seed, stream_base);
  auto residual_rng = make_stream(cfg.seed, stream_base + 1);

  const std::vector<double> master_phase = draw_phase(master_noise, n, dt, master_rng);
  const std::vector<double> ou_phase = draw_phase(residual, n, dt, residual_rng);

  std::vector<double> slave_phase(n);
  for (std::size_t k = 0; k < n; ++k) {
    slave_phase[k] = master_phase[k] + ou_phase[k];
  }

  LockedPair pair{make_field(cfg, master_power, master_shift, master_phase),
                  make_field(cfg, slave_power, cfg.beat_if + slave_shift, slave_phase)};
  return pair;
}

BeatRecord photodetect(const OpticalFieldSeries& a, const OpticalFieldSeries& b, double gain,
                       double matching_efficiency, bool dc_block) {
  if (a.samples.size() != b.samples.size() || a.sample_rate != b.sample_rate) {
    throw std::invalid_argument("photodetect: fields must share length and sample rate");
  }
  if (!(matching_efficiency >= 0.0 && matching_efficiency <= 1.0)) {
    throw std::invalid_argument("photodetect: matching efficiency must lie in [0, 1]");
  }

  const std::size_t n = a.samples.size();
  const double dc = a.power + b.power;
  const double mixing = 2.0 * std::sqrt(matching_efficiency);

  BeatRecord rec;
  rec.sample_rate = a.sample_rate;
  rec.gain = gain;
  rec.matching_efficiency = matching_efficiency;
  rec.seed = a.seed_used;
  rec.power = b.power;  // slave beam carries the swept power
  rec.samples.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Re(a conj(b)) = sqrt(P_a P_b) cos(dphi)
    const double beat = mixing * (a.samples[k] * std::conj(b.samples[k])).real();
    rec.samples[k] = gain * ((dc_block ? 0.0 : dc) + beat);
  }
  return rec;
}

}  // namespace qshift::hetsim
