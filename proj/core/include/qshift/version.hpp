#pragma once

namespace qshift {

inline constexpr const char* version = "0.1.0";

}  // namespace qshift
