#include "qshift/beat_io.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <ostream>

namespace qshift::hetsim {

namespace {

constexpr std::size_t header_size = 64;
constexpr char magic[4] = {'Q', 'S', 'B', 'T'};

template <typename T>
void put(std::array<char, header_size>& buf, std::size_t& off, T value) {
  std::memcpy(buf.data() + off, &value, sizeof(T));
  off += sizeof(T);
}

template <typename T>
T get(const std::array<char, header_size>& buf, std::size_t& off) {
  T value;
  std::memcpy(&value, buf.data() + off, sizeof(T));
  off += sizeof(T);
  return value;
}

}  // namespace

void write_beat_record(const std::filesystem::path& path, const BeatRecord& record) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw FormatError("write_beat_record: cannot open " + path.string());
  }

  std::array<char, header_size> header{};
  std::size_t off = 0;
  std::memcpy(header.data(), magic, 4);
  off += 4;
  put(header, off, beat_record_version);
  put(header, off, record.sample_rate);
  put(header, off, record.samples.size() / record.sample_rate);  // duration
  put(header, off, record.gain);
  put(header, off, record.matching_efficiency);
  put(header, off, record.seed);
  put(header, off, static_cast<std::uint64_t>(record.samples.size()));
  put(header, off, record.power);

  out.write(header.data(), header_size);
  out.write(reinterpret_cast<const char*>(record.samples.data()),
            static_cast<std::streamsize>(record.samples.size() * sizeof(double)));
  if (!out) {
    throw FormatError("write_beat_record: short write to " + path.string());
  }
}

BeatRecord read_beat_record(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FormatError("read_beat_record: cannot open " + path.string());
  }

  std::array<char, header_size> header{};
  in.read(header.data(), header_size);
  if (in.gcount() != header_size) {
    throw FormatError("read_beat_record: truncated header in " + path.string());
  }
  if (std::memcmp(header.data(), magic, 4) != 0) {
    throw FormatError("read_beat_record: bad magic in " + path.string());
  }
  std::size_t off = 4;
  const auto version = get<std::uint32_t>(header, off);
  if (version != beat_record_version) {
    throw FormatError("read_beat_record: unsupported version " + std::to_string(version));
  }

  BeatRecord record;
  record.sample_rate = get<double>(header, off);
  get<double>(header, off);  // duration, implied by nsamples below
  record.gain = get<double>(header, off);
  record.matching_efficiency = get<double>(header, off);
  record.seed = get<std::uint64_t>(header, off);
  const auto nsamples = get<std::uint64_t>(header, off);
  record.power = get<double>(header, off);

  if (record.sample_rate <= 0.0 || nsamples == 0) {
    throw FormatError("read_beat_record: invalid header fields in " + path.string());
  }
  record.samples.resize(nsamples);
  in.read(reinterpret_cast<char*>(record.samples.data()),
          static_cast<std::streamsize>(nsamples * sizeof(double)));
  if (static_cast<std::uint64_t>(in.gcount()) != nsamples * sizeof(double)) {
    throw FormatError("read_beat_record: truncated samples in " + path.string());
  }
  return record;
}

void write_beat_record_csv(std::ostream& out, const BeatRecord& record) {
  out << "# qshift beat record v" << beat_record_version << '\n'
      << "# fs_hz=" << record.sample_rate << " gain_v_per_w=" << record.gain
      << " eta=" << record.matching_efficiency << " seed=" << record.seed
      << " power_w=" << record.power << '\n'
      << "t_s,volts\n";
  for (std::size_t k = 0; k < record.samples.size(); ++k) {
    out << k / record.sample_rate << ',' << record.samples[k] << '\n';
  }
}

}  // namespace qshift::hetsim
