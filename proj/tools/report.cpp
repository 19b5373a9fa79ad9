#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "qshift/version.hpp"

namespace qshift::runner {

std::vector<ShiftRow> pairwise_shifts(const std::vector<PowerRow>& rows) {
  std::vector<ShiftRow> shifts;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      const spectral::ShiftResult r = spectral::frequency_shift(rows[j].peak, rows[i].peak);
      shifts.push_back({rows[j].power_mw, rows[i].power_mw, r.shift_hz, r.significance});
    }
  }
  return shifts;
}

BoundBlock infer_bound(const ExperimentConfig& cfg, const std::vector<PowerRow>& rows,
                       const std::vector<ShiftRow>& shifts) {
  double detectable_hz = 0.0;
  for (const auto& s : shifts) {
    const double pooled =
        s.significance > 0.0 ? std::abs(s.shift_hz) / s.significance : 0.0;
    detectable_hz = std::max(detectable_hz, std::abs(s.shift_hz) + 3.0 * pooled);
  }

  const double nu = shiftmodel::optical_frequency(cfg.wavelength_nm * 1e-9);
  double n_max = 0.0;
  for (const auto& row : rows) {
    n_max = std::max(n_max, row.photon_number);
  }

  BoundBlock bound;
  bound.beat_sensitivity_hz = detectable_hz;
  bound.fractional_sensitivity = detectable_hz / nu;
  bound.photon_number = n_max;
  bound.lambda_max =
      n_max > 0.0 ? shiftmodel::lambda_upper_bound(bound.fractional_sensitivity, n_max) : 0.0;
  return bound;
}

nlohmann::ordered_json build_report(const ExperimentConfig& cfg,
                                    const std::vector<PowerRow>& rows,
                                    const std::vector<ShiftRow>& shifts,
                                    const BoundBlock& bound,
                                    const std::vector<std::string>& record_files) {
  nlohmann::ordered_json report;
  report["tool"] = "qshift";
  report["version"] = qshift::version;
  report["command"] = "simulate";
  report["seed"] = cfg.seed.value();
  report["config_text"] = cfg.canonical_text();

  const double nu = shiftmodel::optical_frequency(cfg.wavelength_nm * 1e-9);
  const auto sample_estimate = shiftmodel::mode_photon_number(
      cfg.laser(1e-3), cfg.method(), cfg.coherence_time_s());
  report["photon"] = {{"method", cfg.photon_method},
                      {"coherence_time_s", sample_estimate.coherence_time}};
  report["if_mapping"] = {{"optical_frequency_hz", nu},
                          {"beat_if_hz", cfg.beat_if_hz},
                          {"fractional_per_hz", 1.0 / nu}};
  report["uncertainty_model"] =
      format_double(spectral::peak_uncertainty_scale) + " * bin_width / sqrt(snr)";

  auto& peaks = report["peaks"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    peaks.push_back({{"power_mw", row.power_mw},
                     {"n", row.photon_number},
                     {"peak_hz", row.peak.frequency},
                     {"unc_hz", row.peak.uncertainty},
                     {"snr_db", row.peak.snr_db},
                     {"regime_flagged", row.regime_flagged}});
  }

  auto& shift_rows = report["shifts"] = nlohmann::ordered_json::array();
  for (const auto& s : shifts) {
    shift_rows.push_back({{"hi_mw", s.hi_mw},
                          {"lo_mw", s.lo_mw},
                          {"shift_hz", s.shift_hz},
                          {"significance", s.significance}});
  }

  report["inferred_bound"] = {
      {"beat_sensitivity_hz", bound.beat_sensitivity_hz},
      {"fractional_sensitivity", bound.fractional_sensitivity},
      {"photon_number", bound.photon_number},
      {"lambda_max", bound.lambda_max},
      {"note", "sensitivity = max over pairs of |shift| + 3 sigma; n at the highest power"}};

  report["records"] = record_files;
  return report;
}

void write_peaks_csv(std::ostream& out, const std::vector<PowerRow>& rows) {
  out << "power_mw,n,peak_hz,unc_hz\n";
  for (const auto& row : rows) {
    out << format_double(row.power_mw) << ',' << format_double(row.photon_number) << ','
        << format_double(row.peak.frequency) << ',' << format_double(row.peak.uncertainty)
        << '\n';
  }
}

}  // namespace qshift::runner
