#pragma once

namespace tropweil {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tropweil
