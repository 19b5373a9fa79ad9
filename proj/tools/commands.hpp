#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace qshift::runner {

// Exit codes shared by every subcommand:
//   0 success, 1 scientific-threshold failure, 2 usage/format error.
inline constexpr int exit_ok = 0;
inline constexpr int exit_threshold = 1;
inline constexpr int exit_usage = 2;

/// Deformed-commutator residual table over a (lambda, dim) grid. Exit 1
/// when any residual exceeds 1e-10, exit 2 when any cell is out of range.
int cmd_verify_algebra(const std::vector<int>& dims, const std::vector<double>& lambdas,
                       std::ostream& out);

/// Per-power photon numbers and predicted shifts; plot-ready CSV on request.
int cmd_predict(const ExperimentConfig& cfg, std::ostream& out,
                const std::optional<std::filesystem::path>& csv_path);

/// Inverts a fractional sensitivity into the lambda upper bound, with the
/// photon-number provenance spelled out. `explicit_n` bypasses the
/// power-to-photon conversion.
int cmd_bound(const ExperimentConfig& cfg, double fractional_sensitivity,
              std::optional<double> explicit_n, std::ostream& out);

/// Full pipeline over the configured power sweep; writes report.json,
/// peaks.csv and optionally the raw beat records into output_dir.
int cmd_simulate(const ExperimentConfig& cfg, const std::filesystem::path& output_dir,
                 std::ostream& out);

/// Offline re-analysis of exported beat records (spectral pipeline only).
/// `psd_dir`, when given, receives one "<stem>.psd.csv" per record.
int cmd_analyze(const ExperimentConfig& cfg, const std::vector<std::filesystem::path>& files,
                std::ostream& out, const std::optional<std::filesystem::path>& csv_path,
                const std::optional<std::filesystem::path>& psd_dir = std::nullopt);

}  // namespace qshift::runner
