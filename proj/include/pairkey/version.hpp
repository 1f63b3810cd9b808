#pragma once

namespace pairkey {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pairkey
