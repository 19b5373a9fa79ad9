#pragma once

#include <stdexcept>

namespace qshift {

// A deformation/photon-number combination left the representable double
// range (sinh overflow). Reported instead of returning infinity.
struct RangeError : std::domain_error {
  using std::domain_error::domain_error;
};

// Malformed config file or beat-record file.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No peak above the SNR threshold; a measurement failure, not a zero.
struct NoPeakError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fock-space truncation error exceeded the reporting threshold.
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qshift
