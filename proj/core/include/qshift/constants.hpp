#pragma once

namespace qshift::constants {

// SI exact values, shared by every module so unit conversions agree
// bit-for-bit across the library.
inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double planck = 6.62607015e-34;       // J s

}  // namespace qshift::constants
