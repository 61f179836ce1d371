#pragma once

namespace ecohen {

inline constexpr const char* kVersion = "0.1.0";

} // namespace ecohen
