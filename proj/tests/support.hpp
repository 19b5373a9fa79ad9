// Shared measurement helpers for the simulation tests and the acceptance
// suite: phase unwrapping, linear detrending, and basic statistics.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qshift/hetsim.hpp"

namespace qshift::testsupport {

inline std::vector<double> unwrap_phase(const std::vector<double>& wrapped) {
  std::vector<double> out(wrapped.size());
  if (wrapped.empty()) return out;
  out[0] = wrapped[0];
  double offset = 0.0;
  for (std::size_t k = 1; k < wrapped.size(); ++k) {
    double d = wrapped[k] - wrapped[k - 1];
    while (d > std::numbers::pi) {
      d -= 2.0 * std::numbers::pi;
      offset -= 2.0 * std::numbers::pi;
    }
    while (d < -std::numbers::pi) {
      d += 2.0 * std::numbers::pi;
      offset += 2.0 * std::numbers::pi;
    }
    out[k] = wrapped[k] + offset;
  }
  return out;
}

// Unwrapped phase difference arg(slave * conj(master)).
inline std::vector<double> beat_phase(const hetsim::OpticalFieldSeries& master,
                                      const hetsim::OpticalFieldSeries& slave) {
  std::vector<double> wrapped(master.samples.size());
  for (std::size_t k = 0; k < wrapped.size(); ++k) {
    wrapped[k] = std::arg(slave.samples[k] * std::conj(master.samples[k]));
  }
  return unwrap_phase(wrapped);
}

// Variance of the residual after removing the least-squares line.
inline double detrended_variance(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  double sk = 0.0, sx = 0.0, skk = 0.0, skx = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sk += k;
    sx += x[k];
    skk += static_cast<double>(k) * k;
    skx += k * x[k];
  }
  const double slope = (n * skx - sk * sx) / (n * skk - sk * sk);
  const double intercept = (sx - slope * sk) / n;
  double var = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double r = x[k] - (intercept + slope * k);
    var += r * r;
  }
  return var / n;
}

inline double mean(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

inline double sample_std(const std::vector<double>& x) {
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(x.size() - 1));
}

}  // namespace qshift::testsupport
