#pragma once

#include <filesystem>
#include <iosfwd>

#include "qshift/hetsim.hpp"

namespace qshift::hetsim {

// Binary beat-record layout: a 64-byte little-endian header
//   magic "QSBT" | u32 version | f64 fs | f64 duration | f64 gain |
//   f64 eta | u64 seed | u64 nsamples | f64 power_w
// followed by nsamples little-endian float64 volts.
inline constexpr std::uint32_t beat_record_version = 1;

void write_beat_record(const std::filesystem::path& path, const BeatRecord& record);

/// Throws FormatError on bad magic, unsupported version or a truncated file.
BeatRecord read_beat_record(const std::filesystem::path& path);

/// Plot-friendly alternative: "t_s,volts" rows after "# key=value" metadata.
void write_beat_record_csv(std::ostream& out, const BeatRecord& record);

}  // namespace qshift::hetsim
