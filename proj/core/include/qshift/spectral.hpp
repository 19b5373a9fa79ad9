#pragma once

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "qshift/hetsim.hpp"

namespace qshift::spectral {

enum class Window { rectangular, hann };

const char* to_string(Window w);
Window window_from_string(const std::string& name);

/// One-sided power spectral density (V^2/Hz for volt records). The window
/// is normalized so that sum(psd)*bin_width equals the mean square of the
/// input for the rectangular window, and a sinusoid's power is read back
/// as psd[peak] * enbw_hz for either window.
struct Periodogram {
  std::vector<double> psd;  // length N/2 + 1
  double bin_width;         // Hz, fs/N
  Window window;
  double sample_rate;       // Hz
  double enbw_hz;           // effective noise bandwidth of one analysis bin
};

/// Sub-bin peak estimate. `uncertainty` is derived from the measured SNR
/// and the bin width (see peak_frequency).
struct PeakEstimate {
  double frequency;    // Hz
  double uncertainty;  // Hz
  double snr_db;
  int bin_index;
};

/// Empirically calibrated scale of the peak-frequency uncertainty model
/// uncertainty = scale * bin_width / sqrt(snr_linear); fixed by the
/// synthetic-tone suite and echoed in run reports.
inline constexpr double peak_uncertainty_scale = 2.0;

Periodogram periodogram(const hetsim::BeatRecord& record, Window window);
Periodogram periodogram(const hetsim::OpticalFieldSeries& field, Window window);

/// Windowed-periodogram peak with sub-bin refinement: parabolic
/// interpolation of the three log-magnitude bins around the maximum,
/// followed by an analytic dewarp of the vertex for the Hann kernel.
/// Searches `search_band` when given, otherwise everything above the DC
/// leakage region. Throws NoPeakError when the peak SNR is < 10 dB.
PeakEstimate peak_frequency(const Periodogram& p,
                            std::optional<std::pair<double, double>> search_band = std::nullopt);

struct ShiftResult {
  double shift_hz;
  double significance;  // |shift| / sqrt(ua^2 + ub^2)
};

ShiftResult frequency_shift(const PeakEstimate& a, const PeakEstimate& b);

/// Closed-form vertex offset a log-magnitude parabola produces for a
/// noiseless Hann-windowed tone at true fractional offset delta; exposed
/// for the estimator tests.
double hann_log_parabola_vertex(double delta);

/// "freq_hz,psd" rows.
void write_periodogram_csv(std::ostream& out, const Periodogram& p);

}  // namespace qshift::spectral
