#pragma once

namespace ostrinv {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ostrinv
