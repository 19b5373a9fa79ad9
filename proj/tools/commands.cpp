#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "qshift/beat_io.hpp"
#include "qshift/experiment.hpp"
#include "qshift/qalgebra.hpp"
#include "qshift/version.hpp"
#include "report.hpp"

namespace qshift::runner {

namespace {

// Per-beam carrier shift handle for the simulation, closed over the laser
// parameters and photon-number convention of the config.
hetsim::BeamShiftModel make_shift_model(const ExperimentConfig& cfg) {
  if (cfg.lambda == 0.0) {
    return {};
  }
  const qalgebra::QDeformation deform(cfg.lambda);
  return [cfg, deform](double power_w) {
    return shiftmodel::beam_shift_hz(cfg.laser(power_w), deform, cfg.method(),
                                     cfg.coherence_time_s());
  };
}

std::string record_filename(double power_mw) {
  return "beat_" + format_double(power_mw) + "mw.qsbt";
}

// Compact scientific form for on-screen tables; files keep full precision.
std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

double order_of_magnitude(double x) {
  if (!(x > 0.0)) return 0.0;
  return std::pow(10.0, std::floor(std::log10(x)));
}

}  // namespace

int cmd_verify_algebra(const std::vector<int>& dims, const std::vector<double>& lambdas,
                       std::ostream& out) {
  constexpr double threshold = 1e-10;
  bool over_threshold = false;
  bool any_error = false;

  out << "deformed-commutator residual (top level excluded), threshold " << threshold << "\n";
  out << std::left << std::setw(12) << "lambda\\dim";
  for (int d : dims) {
    out << std::setw(14) << d;
  }
  out << '\n';

  for (double lambda : lambdas) {
    out << std::setw(12) << format_double(lambda);
    for (int d : dims) {
      try {
        const double residual =
            qalgebra::verify_q_commutator(qalgebra::FockSpace(d), qalgebra::QDeformation(lambda));
        out << std::setw(14) << sci(residual);
        if (residual > threshold) over_threshold = true;
      } catch (const std::exception&) {
        out << std::setw(14) << "ERR(range)";
        any_error = true;
      }
    }
    out << '\n';
  }

  if (any_error) {
    out << "status: out-of-range cells present\n";
    return exit_usage;
  }
  if (over_threshold) {
    out << "status: residual threshold exceeded\n";
    return exit_threshold;
  }
  out << "status: all residuals below threshold\n";
  return exit_ok;
}

int cmd_predict(const ExperimentConfig& cfg, std::ostream& out,
                const std::optional<std::filesystem::path>& csv_path) {
  const qalgebra::QDeformation deform(cfg.lambda);
  const double nu = shiftmodel::optical_frequency(cfg.wavelength_nm * 1e-9);
  const bool slave_only = cfg.attenuation == "slave_only";
  const double reference_mw = cfg.master_power_mw;

  struct Row {
    double power_mw, n, frac, beam_hz, beat_hz;
    bool flagged;
  };
  std::vector<Row> rows;
  for (double p_w : cfg.powers_w_sorted()) {
    const double n =
        shiftmodel::mode_photon_number(cfg.laser(p_w), cfg.method(), cfg.coherence_time_s()).n;
    const double frac = qalgebra::blue_shift_approx(n, deform);
    const double beam = nu * frac;
    double beat = 0.0;
    if (slave_only) {
      beat = shiftmodel::predicted_beat_shift(cfg.laser(p_w), cfg.laser(reference_mw * 1e-3),
                                              deform, cfg.method(), cfg.coherence_time_s());
    }
    rows.push_back({p_w * 1e3, n, frac, beam, beat,
                    qalgebra::blue_shift_regime_flagged(n, deform)});
  }

  out << "lambda = " << format_double(cfg.lambda) << ", optical frequency = "
      << format_double(nu) << " Hz, photon method = " << cfg.photon_method << '\n';
  if (slave_only) {
    out << "beat shifts are against the fixed master at " << format_double(reference_mw)
        << " mW\n";
  } else {
    out << "equal attenuation: per-beam shifts cancel in the beat\n";
  }
  out << std::left << std::setw(12) << "power_mw" << std::setw(16) << "n" << std::setw(16)
      << "frac_shift" << std::setw(16) << "beam_shift_hz" << std::setw(16) << "beat_shift_hz"
      << "regime" << '\n';
  for (const auto& r : rows) {
    out << std::setw(12) << format_double(r.power_mw) << std::setw(16) << sci(r.n)
        << std::setw(16) << sci(r.frac) << std::setw(16) << sci(r.beam_hz) << std::setw(16)
        << sci(r.beat_hz) << (r.flagged ? "lambda*n>0.1" : "ok") << '\n';
  }

  if (csv_path) {
    std::ofstream csv(*csv_path);
    if (!csv) {
      throw FormatError("cmd_predict: cannot open " + csv_path->string());
    }
    csv << "power_mw,n,frac_shift,beam_shift_hz,beat_shift_hz\n";
    for (const auto& r : rows) {
      csv << format_double(r.power_mw) << ',' << format_double(r.n) << ','
          << format_double(r.frac) << ',' << format_double(r.beam_hz) << ','
          << format_double(r.beat_hz) << '\n';
    }
  }
  return exit_ok;
}

int cmd_bound(const ExperimentConfig& cfg, double fractional_sensitivity,
              std::optional<double> explicit_n, std::ostream& out) {
  const double nu = shiftmodel::optical_frequency(cfg.wavelength_nm * 1e-9);

  double n = 0.0;
  std::string provenance;
  double coherence_time = 0.0;
  if (explicit_n) {
    n = *explicit_n;
    provenance = "explicit photon count (CLI)";
  } else {
    double p_max = 0.0;
    for (double p : cfg.powers_w_sorted()) p_max = std::max(p_max, p);
    const auto estimate =
        shiftmodel::mode_photon_number(cfg.laser(p_max), cfg.method(), cfg.coherence_time_s());
    n = estimate.n;
    coherence_time = estimate.coherence_time;
    provenance = std::string(shiftmodel::to_string(estimate.method)) + " at " +
                 format_double(p_max * 1e3) + " mW";
  }
  if (!(n > 0.0)) {
    throw std::invalid_argument("cmd_bound: photon number is zero, bound undefined");
  }

  const double bound = shiftmodel::lambda_upper_bound(fractional_sensitivity, n);
  out << "qshift " << qshift::version << " lambda bound\n"
      << "  wavelength            : " << format_double(cfg.wavelength_nm) << " nm\n"
      << "  optical frequency     : " << format_double(nu) << " Hz\n"
      << "  photon number         : " << format_double(n) << "  (" << provenance << ")\n";
  if (coherence_time > 0.0) {
    out << "  coherence time        : " << format_double(coherence_time) << " s\n";
  }
  out << "  fractional sensitivity: " << format_double(fractional_sensitivity) << "\n"
      << "  lambda_max            : " << format_double(bound) << "\n"
      << "  order of magnitude    : lambda <= " << format_double(order_of_magnitude(bound))
      << "\n";
  return exit_ok;
}

int cmd_simulate(const ExperimentConfig& cfg, const std::filesystem::path& output_dir,
                 std::ostream& out) {
  const qalgebra::QDeformation deform(cfg.lambda);
  const std::vector<double> powers = cfg.powers_w_sorted();

  std::vector<hetsim::BeatRecord> records;
  const auto results = hetsim::run_experiment(
      cfg.sim_config(), powers, hetsim::PhaseNoiseProcess::wiener(cfg.linewidth_khz * 1e3),
      hetsim::PhaseNoiseProcess::locked_residual(cfg.residual_variance_rad2,
                                                 cfg.loop_bandwidth_khz * 1e3),
      cfg.sweep_settings(), cfg.detector_settings(), cfg.analysis_settings(),
      make_shift_model(cfg), cfg.save_records ? &records : nullptr);

  std::vector<PowerRow> rows;
  for (const auto& r : results) {
    const double n =
        shiftmodel::mode_photon_number(cfg.laser(r.power), cfg.method(), cfg.coherence_time_s())
            .n;
    rows.push_back(
        {r.power * 1e3, n, r.peak, qalgebra::blue_shift_regime_flagged(n, deform)});
  }
  const std::vector<ShiftRow> shifts = pairwise_shifts(rows);
  const BoundBlock bound = infer_bound(cfg, rows, shifts);

  std::filesystem::create_directories(output_dir);
  std::vector<std::string> record_files;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const std::string name = record_filename(rows[i].power_mw);
    write_beat_record(output_dir / name, records[i]);
    record_files.push_back(name);
  }

  const nlohmann::ordered_json report = build_report(cfg, rows, shifts, bound, record_files);
  {
    std::ofstream json_out(output_dir / "report.json", std::ios::binary | std::ios::trunc);
    json_out << report.dump(2) << '\n';
  }
  {
    std::ofstream csv_out(output_dir / "peaks.csv", std::ios::binary | std::ios::trunc);
    write_peaks_csv(csv_out, rows);
  }

  for (const auto& row : rows) {
    out << "power " << format_double(row.power_mw) << " mW: peak "
        << format_double(row.peak.frequency) << " Hz +- "
        << format_double(row.peak.uncertainty) << " Hz (snr "
        << format_double(row.peak.snr_db) << " dB)\n";
  }
  out << "inferred lambda_max = " << format_double(bound.lambda_max) << " (sensitivity "
      << format_double(bound.beat_sensitivity_hz) << " Hz, n = "
      << format_double(bound.photon_number) << ")\n";
  out << "report: " << (output_dir / "report.json").string() << '\n';
  return exit_ok;
}

int cmd_analyze(const ExperimentConfig& cfg, const std::vector<std::filesystem::path>& files,
                std::ostream& out, const std::optional<std::filesystem::path>& csv_path,
                const std::optional<std::filesystem::path>& psd_dir) {
  if (files.empty()) {
    throw FormatError("cmd_analyze: no record files given");
  }
  if (psd_dir) {
    std::filesystem::create_directories(*psd_dir);
  }

  std::vector<PowerRow> rows;
  for (const auto& file : files) {
    const hetsim::BeatRecord record = hetsim::read_beat_record(file);
    const spectral::Periodogram psd =
        spectral::periodogram(record, spectral::window_from_string(cfg.window));
    const spectral::PeakEstimate peak = spectral::peak_frequency(psd, cfg.search_band_hz);
    if (psd_dir) {
      std::ofstream psd_out(*psd_dir / (file.stem().string() + ".psd.csv"),
                            std::ios::binary | std::ios::trunc);
      spectral::write_periodogram_csv(psd_out, psd);
    }
    const double n = shiftmodel::mode_photon_number(cfg.laser(record.power), cfg.method(),
                                                    cfg.coherence_time_s())
                         .n;
    rows.push_back({record.power * 1e3, n, peak,
                    qalgebra::blue_shift_regime_flagged(
                        n, qalgebra::QDeformation(cfg.lambda))});
  }

  write_peaks_csv(out, rows);
  if (csv_path) {
    std::ofstream csv(*csv_path, std::ios::binary | std::ios::trunc);
    if (!csv) {
      throw FormatError("cmd_analyze: cannot open " + csv_path->string());
    }
    write_peaks_csv(csv, rows);
  }
  return exit_ok;
}

}  // namespace qshift::runner
