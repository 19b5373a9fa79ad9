#include "qshift/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qshift::spectral {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::vector<double> make_window(Window w, std::size_t n) {
  std::vector<double> coeff(n, 1.0);
  if (w == Window::hann) {
    for (std::size_t k = 0; k < n; ++k) {
      coeff[k] = 0.5 * (1.0 - std::cos(two_pi * k / n));
    }
  }
  return coeff;
}

// FFTW planning is not thread safe; execution of a created plan is.
std::mutex fftw_plan_mutex;

// |X_j|^2 of the windowed input, j = 0..N/2, for real or complex input.
std::vector<double> windowed_power(const std::vector<double>& wcoeff,
                                   const double* real_input,
                                   const std::complex<double>* complex_input, std::size_t n) {
  const std::size_t half = n / 2;
  std::vector<double> power(half + 1);

  if (real_input != nullptr) {
    std::vector<double> in(n);
    for (std::size_t k = 0; k < n; ++k) {
      in[k] = wcoeff[k] * real_input[k];
    }
    std::vector<std::complex<double>> out(half + 1);
    {
      std::lock_guard<std::mutex> lock(fftw_plan_mutex);
      fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                            reinterpret_cast<fftw_complex*>(out.data()),
                                            FFTW_ESTIMATE);
      fftw_execute(plan);
      fftw_destroy_plan(plan);
    }
    for (std::size_t j = 0; j <= half; ++j) {
      power[j] = std::norm(out[j]);
    }
  } else {
    std::vector<std::complex<double>> in(n);
    for (std::size_t k = 0; k < n; ++k) {
      in[k] = wcoeff[k] * complex_input[k];
    }
    std::vector<std::complex<double>> out(n);
    {
      std::lock_guard<std::mutex> lock(fftw_plan_mutex);
      fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n),
                                        reinterpret_cast<fftw_complex*>(in.data()),
                                        reinterpret_cast<fftw_complex*>(out.data()),
                                        FFTW_FORWARD, FFTW_ESTIMATE);
      fftw_execute(plan);
      fftw_destroy_plan(plan);
    }
    for (std::size_t j = 0; j <= half; ++j) {
      power[j] = std::norm(out[j]);
    }
  }
  return power;
}

Periodogram build(const std::vector<double>& power_bins, Window window, double fs,
                  std::size_t n, double sum_w2, bool real_input) {
  Periodogram p;
  p.window = window;
  p.sample_rate = fs;
  p.bin_width = fs / static_cast<double>(n);
  p.psd.resize(power_bins.size());

  // Density normalization 1/(fs*sum(w^2)); one-sided doubling for real
  // input except at DC and Nyquist. A tone's power is then
  // psd[peak] * enbw_hz for any window.
  const double norm = 1.0 / (fs * sum_w2);
  const std::size_t last = power_bins.size() - 1;
  for (std::size_t j = 0; j < power_bins.size(); ++j) {
    double scale = norm;
    if (real_input && j != 0 && !(n % 2 == 0 && j == last)) {
      scale *= 2.0;
    }
    p.psd[j] = power_bins[j] * scale;
  }
  return p;
}

double window_sum_sq(const std::vector<double>& w) {
  double s = 0.0;
  for (double x : w) s += x * x;
  return s;
}

double window_sum(const std::vector<double>& w) {
  double s = 0.0;
  for (double x : w) s += x;
  return s;
}

double enbw_hz(const std::vector<double>& w, double fs) {
  const double sw = window_sum(w);
  return fs * window_sum_sq(w) / (sw * sw);
}

// Raw parabola vertex through (-1, lm), (0, l0), (1, lp).
double parabola_vertex(double lm, double l0, double lp) {
  const double denom = lm - 2.0 * l0 + lp;
  if (denom == 0.0) {
    return 0.0;
  }
  return 0.5 * (lm - lp) / denom;
}

// Inverts hann_log_parabola_vertex by bisection; the map is odd and
// strictly increasing on [-1/2, 1/2].
double dewarp_hann(double vertex) {
  const double target = std::clamp(vertex, -0.5, 0.5);
  if (target == 0.0) {
    return 0.0;
  }
  double lo = -0.5;
  double hi = 0.5;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (hann_log_parabola_vertex(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

const char* to_string(Window w) {
  return w == Window::hann ? "hann" : "rectangular";
}

Window window_from_string(const std::string& name) {
  if (name == "hann") return Window::hann;
  if (name == "rectangular") return Window::rectangular;
  throw std::invalid_argument("unknown window: " + name);
}

double hann_log_parabola_vertex(double delta) {
  // Asymptotic Hann kernel magnitude ratios around the peak bin:
  //   y(+1)/y(0) = (1+delta)/(2-delta),  y(-1)/y(0) = (1-delta)/(2+delta).
  const double rp = (1.0 + delta) / (2.0 - delta);
  const double rm = (1.0 - delta) / (2.0 + delta);
  const double num = std::log(rm) - std::log(rp);
  const double den = std::log(rm) + std::log(rp);
  if (den == 0.0) {
    return 0.0;
  }
  return 0.5 * num / den;
}

Periodogram periodogram(const hetsim::BeatRecord& record, Window window) {
  const std::size_t n = record.samples.size();
  if (n < 16) {
    throw std::invalid_argument("periodogram: need at least 16 samples");
  }
  const std::vector<double> w = make_window(window, n);
  const std::vector<double> bins = windowed_power(w, record.samples.data(), nullptr, n);
  Periodogram p = build(bins, window, record.sample_rate, n, window_sum_sq(w), true);
  p.enbw_hz = enbw_hz(w, record.sample_rate);
  return p;
}

Periodogram periodogram(const hetsim::OpticalFieldSeries& field, Window window) {
  const std::size_t n = field.samples.size();
  if (n < 16) {
    throw std::invalid_argument("periodogram: need at least 16 samples");
  }
  const std::vector<double> w = make_window(window, n);
  const std::vector<double> bins = windowed_power(w, nullptr, field.samples.data(), n);
  Periodogram p = build(bins, window, field.sample_rate, n, window_sum_sq(w), false);
  p.enbw_hz = enbw_hz(w, field.sample_rate);
  return p;
}

PeakEstimate peak_frequency(const Periodogram& p,
                            std::optional<std::pair<double, double>> search_band) {
  const std::size_t nbins = p.psd.size();
  // Default band skips the DC leakage region (the Hann main lobe spans
  // three bins around DC).
  std::size_t lo = 5;
  std::size_t hi = nbins - 1;
  if (search_band) {
    if (!(search_band->first < search_band->second)) {
      throw std::invalid_argument("peak_frequency: empty search band");
    }
    lo = static_cast<std::size_t>(std::max(0.0, std::ceil(search_band->first / p.bin_width)));
    hi = static_cast<std::size_t>(
        std::min(static_cast<double>(nbins - 1), std::floor(search_band->second / p.bin_width)));
  }
  if (lo >= hi || hi >= nbins) {
    throw std::invalid_argument("peak_frequency: search band holds no bins");
  }

  std::size_t peak = lo;
  for (std::size_t j = lo; j <= hi; ++j) {
    if (p.psd[j] > p.psd[peak]) {
      peak = j;
    }
  }
  if (!(p.psd[peak] > 0.0)) {
    throw NoPeakError("peak_frequency: no signal in the search band");
  }

  // Noise reference: median PSD over the band, peak neighborhood excluded.
  std::vector<double> noise;
  noise.reserve(hi - lo + 1);
  for (std::size_t j = lo; j <= hi; ++j) {
    if (j + 3 < peak || j > peak + 3) {
      noise.push_back(p.psd[j]);
    }
  }
  double snr_linear = 1e30;
  if (!noise.empty()) {
    std::nth_element(noise.begin(), noise.begin() + noise.size() / 2, noise.end());
    const double median = noise[noise.size() / 2];
    if (median > 0.0) {
      snr_linear = p.psd[peak] / median;
    }
  }
  const double snr_db = 10.0 * std::log10(snr_linear);
  if (snr_db < 10.0) {
    throw NoPeakError("peak_frequency: best bin is only " + std::to_string(snr_db) +
                      " dB above the noise floor (< 10 dB)");
  }

  // Sub-bin refinement on the log PSD. Interior bins only; at the band
  // edge the bin center is the estimate.
  double offset = 0.0;
  if (peak > lo && peak < hi) {
    const double floor_val = 1e-300;
    const double lm = std::log(std::max(p.psd[peak - 1], floor_val));
    const double l0 = std::log(std::max(p.psd[peak], floor_val));
    const double lp = std::log(std::max(p.psd[peak + 1], floor_val));
    offset = std::clamp(parabola_vertex(lm, l0, lp), -0.5, 0.5);
    if (p.window == Window::hann) {
      offset = dewarp_hann(offset);
    }
  }

  PeakEstimate est;
  est.bin_index = static_cast<int>(peak);
  est.frequency = (static_cast<double>(peak) + offset) * p.bin_width;
  est.snr_db = snr_db;
  est.uncertainty =
      std::max(peak_uncertainty_scale * p.bin_width / std::sqrt(snr_linear), 1e-9 * p.bin_width);
  return est;
}

ShiftResult frequency_shift(const PeakEstimate& a, const PeakEstimate& b) {
  const double shift = a.frequency - b.frequency;
  const double pooled = std::sqrt(a.uncertainty * a.uncertainty + b.uncertainty * b.uncertainty);
  return {shift, pooled > 0.0 ? std::abs(shift) / pooled : 0.0};
}

void write_periodogram_csv(std::ostream& out, const Periodogram& p) {
  out << "freq_hz,psd\n";
  for (std::size_t j = 0; j < p.psd.size(); ++j) {
    out << j * p.bin_width << ',' << p.psd[j] << '\n';
  }
}

}  // namespace qshift::spectral
