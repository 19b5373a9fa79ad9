#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "qshift/spectral.hpp"

namespace qshift::runner {

struct PowerRow {
  double power_mw;
  double photon_number;
  spectral::PeakEstimate peak;
  bool regime_flagged;
};

struct ShiftRow {
  double hi_mw;
  double lo_mw;
  double shift_hz;
  double significance;
};

struct BoundBlock {
  double beat_sensitivity_hz;       // max over pairs of |shift| + 3 sigma
  double fractional_sensitivity;    // mapped through the optical frequency
  double photon_number;             // at the highest sweep power
  double lambda_max;
};

/// Pairwise shifts between all sweep points, higher power first.
std::vector<ShiftRow> pairwise_shifts(const std::vector<PowerRow>& rows);

/// Null-measurement inference in the style of a heterodyne sensitivity
/// argument: the detectable beat shift is bounded by the largest observed
/// |shift| + 3 sigma, mapped to a fractional sensitivity at the optical
/// carrier and inverted at the highest photon number.
BoundBlock infer_bound(const ExperimentConfig& cfg, const std::vector<PowerRow>& rows,
                       const std::vector<ShiftRow>& shifts);

/// Deterministic JSON run report; embeds the canonical config text, so a
/// report alone is enough to reproduce the run bit-for-bit.
nlohmann::ordered_json build_report(const ExperimentConfig& cfg,
                                    const std::vector<PowerRow>& rows,
                                    const std::vector<ShiftRow>& shifts,
                                    const BoundBlock& bound,
                                    const std::vector<std::string>& record_files);

/// "power_mw,n,peak_hz,unc_hz" rows, one per sweep point.
void write_peaks_csv(std::ostream& out, const std::vector<PowerRow>& rows);

}  // namespace qshift::runner
