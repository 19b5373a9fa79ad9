// qshift command-line front end: verify-algebra, predict, bound, simulate,
// analyze. Exit codes: 0 success, 1 scientific-threshold failure,
// 2 usage/format error.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "config.hpp"
#include "qshift/errors.hpp"
#include "qshift/version.hpp"

namespace {

using qshift::runner::ExperimentConfig;

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;  // key=value
  std::string outdir_flag;
  bool has_seed = false;
  std::uint64_t seed = 0;
  bool has_lambda = false;
  double lambda = 0.0;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "experiment config file (key = value lines)");
  cmd->add_option("--set", opts.overrides, "override one config key, e.g. --set lambda=1e-17")
      ->take_all();
  cmd->add_option("--seed", opts.seed, "override the run seed")
      ->each([&opts](const std::string&) { opts.has_seed = true; });
  cmd->add_option("--lambda", opts.lambda, "override the nonlinearity parameter")
      ->each([&opts](const std::string&) { opts.has_lambda = true; });
}

ExperimentConfig resolve_config(const CommonOptions& opts) {
  ExperimentConfig cfg;
  if (!opts.config_path.empty()) {
    cfg = ExperimentConfig::load(opts.config_path);
  }
  for (const std::string& kv : opts.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw qshift::FormatError("--set expects key=value, got '" + kv + "'");
    }
    cfg.apply(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (opts.has_seed) {
    cfg.seed = opts.seed;
  }
  if (opts.has_lambda) {
    cfg.lambda = opts.lambda;
  }
  cfg.finalize();
  return cfg;
}

// --outdir flag beats QSHIFT_OUTPUT_DIR beats the config value.
std::filesystem::path resolve_outdir(const CommonOptions& opts, const ExperimentConfig& cfg) {
  if (!opts.outdir_flag.empty()) {
    return opts.outdir_flag;
  }
  if (const char* env = std::getenv("QSHIFT_OUTPUT_DIR")) {
    if (*env != '\0') {
      return env;
    }
  }
  return cfg.output_dir;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qshift: q-oscillator blue-shift test bench"};
  app.set_version_flag("--version", std::string("qshift ") + qshift::version);
  app.require_subcommand(1);

  // verify-algebra
  auto* verify = app.add_subcommand("verify-algebra",
                                    "check the deformed commutation identity on a grid");
  std::vector<int> dims = {8, 32, 64};
  std::vector<double> lambdas = {0.0, 1e-8, 1e-3, 0.1, 1.0};
  verify->add_option("--dims", dims, "Fock-space truncation sizes")->delimiter(',');
  verify->add_option("--lambdas", lambdas, "deformation strengths")->delimiter(',');

  // predict
  CommonOptions predict_opts;
  auto* predict = app.add_subcommand("predict", "tabulate photon numbers and expected shifts");
  add_common(predict, predict_opts);
  std::string predict_csv;
  predict->add_option("--out", predict_csv, "write the table as CSV to this path");

  // bound
  CommonOptions bound_opts;
  auto* bound = app.add_subcommand("bound", "convert a sensitivity into a lambda upper bound");
  add_common(bound, bound_opts);
  double sensitivity = 0.0;
  bound->add_option("--sensitivity", sensitivity, "fractional frequency sensitivity")
      ->required();
  double photons = 0.0;
  bool has_photons = false;
  bound->add_option("--photons", photons, "explicit photon number (skips the power model)")
      ->each([&has_photons](const std::string&) { has_photons = true; });

  // simulate
  CommonOptions sim_opts;
  auto* simulate = app.add_subcommand("simulate", "run the heterodyne null experiment");
  add_common(simulate, sim_opts);
  simulate->add_option("--outdir", sim_opts.outdir_flag, "output directory for the run report");

  // analyze
  CommonOptions analyze_opts;
  auto* analyze = app.add_subcommand("analyze", "re-run spectral analysis on beat records");
  add_common(analyze, analyze_opts);
  std::vector<std::string> record_files;
  analyze->add_option("files", record_files, "beat record files (.qsbt)")->required();
  std::string analyze_csv;
  analyze->add_option("--out", analyze_csv, "write the peak table as CSV to this path");
  std::string analyze_psd_dir;
  analyze->add_option("--psd-dir", analyze_psd_dir,
                      "write one periodogram CSV per record into this directory");

  try {
    app.parse(argc, argv);

    if (*verify) {
      return qshift::runner::cmd_verify_algebra(dims, lambdas, std::cout);
    }
    if (*predict) {
      const ExperimentConfig cfg = resolve_config(predict_opts);
      std::optional<std::filesystem::path> csv;
      if (!predict_csv.empty()) csv = predict_csv;
      return qshift::runner::cmd_predict(cfg, std::cout, csv);
    }
    if (*bound) {
      const ExperimentConfig cfg = resolve_config(bound_opts);
      std::optional<double> explicit_n;
      if (has_photons) explicit_n = photons;
      return qshift::runner::cmd_bound(cfg, sensitivity, explicit_n, std::cout);
    }
    if (*simulate) {
      const ExperimentConfig cfg = resolve_config(sim_opts);
      return qshift::runner::cmd_simulate(cfg, resolve_outdir(sim_opts, cfg), std::cout);
    }
    if (*analyze) {
      const ExperimentConfig cfg = resolve_config(analyze_opts);
      std::vector<std::filesystem::path> files(record_files.begin(), record_files.end());
      std::optional<std::filesystem::path> csv;
      if (!analyze_csv.empty()) csv = analyze_csv;
      std::optional<std::filesystem::path> psd_dir;
      if (!analyze_psd_dir.empty()) psd_dir = analyze_psd_dir;
      return qshift::runner::cmd_analyze(cfg, files, std::cout, csv, psd_dir);
    }
    return qshift::runner::exit_usage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message
    return qshift::runner::exit_usage;
  } catch (const qshift::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qshift::runner::exit_usage;
  } catch (const qshift::RangeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qshift::runner::exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qshift::runner::exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qshift::runner::exit_threshold;
  }
}
